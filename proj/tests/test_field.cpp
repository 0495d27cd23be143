#include <gtest/gtest.h>

#include <set>

#include "netlat/field.hpp"
#include "oracles.hpp"

using namespace netlat;

namespace {

std::vector<std::uint32_t> prime_powers_upto(std::uint32_t limit) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t q = 2; q <= limit; ++q) {
    std::uint32_t p = 2;
    while (q % p != 0)
      ++p;
    std::uint32_t r = q;
    while (r % p == 0)
      r /= p;
    if (r == 1)
      out.push_back(q);
  }
  return out;
}

} // namespace

TEST(Field, TablesMatchPolynomialOracle) {
  for (std::uint32_t q : prime_powers_upto(49)) {
    const Field f = make_field_of_order(q);
    const auto ref = oracle::poly_field(static_cast<int>(f.p()),
                                        static_cast<int>(f.k()));
    ASSERT_EQ(ref.q, static_cast<int>(q));
    for (std::uint32_t a = 0; a < q; ++a)
      for (std::uint32_t b = 0; b < q; ++b) {
        const auto x = f.elem(a), y = f.elem(b);
        ASSERT_EQ(f.add(x, y).value(), ref.add(a, b)) << "q=" << q;
        ASSERT_EQ(f.mul(x, y).value(), ref.mul(a, b)) << "q=" << q;
      }
  }
}

TEST(Field, ModulusIsSmallestIrreducible) {
  for (std::uint32_t q : prime_powers_upto(64)) {
    const Field f = make_field_of_order(q);
    const auto ref = oracle::poly_field(static_cast<int>(f.p()),
                                        static_cast<int>(f.k()));
    std::vector<std::uint32_t> want(ref.modulus.begin(), ref.modulus.end());
    EXPECT_EQ(f.spec().modulus, want) << "q=" << q;
  }
}

TEST(Field, InversesAndDivision) {
  for (std::uint32_t q : prime_powers_upto(32)) {
    const Field f = make_field_of_order(q);
    for (std::uint32_t a = 1; a < q; ++a) {
      const auto x = f.elem(a);
      EXPECT_EQ(f.mul(x, f.inv(x)), f.one());
      EXPECT_EQ(f.add(x, f.neg(x)), f.zero());
      EXPECT_EQ(f.div(f.mul(x, f.elem(q - 1)), x), f.elem(q - 1));
    }
    EXPECT_THROW(f.inv(f.zero()), DivisionByZero);
  }
}

TEST(Field, PrimitiveElementGeneratesUnits) {
  for (std::uint32_t q : prime_powers_upto(64)) {
    const Field f = make_field_of_order(q);
    std::set<std::uint8_t> seen;
    FieldElem x = f.one();
    for (std::uint32_t i = 0; i + 1 < q; ++i) {
      seen.insert(x.value());
      x = f.mul(x, f.primitive());
    }
    EXPECT_EQ(seen.size(), q - 1) << "q=" << q;
    EXPECT_EQ(x, f.one());
  }
}

TEST(Field, F9Generator) {
  const Field f = make_field(3, 2);
  const auto u = f.generator();
  EXPECT_EQ(u.value(), 3);
  // modulus u^2 + 1, so u^2 = -1 = 2
  EXPECT_EQ(f.mul(u, u).value(), 2);
  // u^3 = -u = 2u
  EXPECT_EQ(f.frobenius(u, 1).value(), 6);
  EXPECT_EQ(f.frobenius(u, 2), u);
}

TEST(Field, FrobeniusIsAutomorphism) {
  for (std::uint32_t q : {4u, 8u, 9u, 16u, 25u, 27u}) {
    const Field f = make_field_of_order(q);
    for (std::uint32_t t = 0; t < f.k(); ++t)
      for (std::uint32_t a = 0; a < q; ++a)
        for (std::uint32_t b = 0; b < q; ++b) {
          const auto x = f.elem(a), y = f.elem(b);
          ASSERT_EQ(f.frobenius(f.add(x, y), t),
                    f.add(f.frobenius(x, t), f.frobenius(y, t)));
          ASSERT_EQ(f.frobenius(f.mul(x, y), t),
                    f.mul(f.frobenius(x, t), f.frobenius(y, t)));
        }
  }
}

TEST(Field, RejectsBadParameters) {
  EXPECT_THROW(make_field(4, 1), NonPrime);
  EXPECT_THROW(make_field_of_order(6), Error);
  EXPECT_THROW(make_field_of_order(1), Error);
  EXPECT_THROW(make_field(2, 9), CapExceeded);
  EXPECT_THROW(make_field_of_order(3).elem(3), Error);
}

TEST(Field, ArithDispatch) {
  const Field f = make_field_of_order(8);
  const auto a = f.elem(5), b = f.elem(3);
  EXPECT_EQ(f.arith(a, b, ArithOp::add), f.add(a, b));
  EXPECT_EQ(f.arith(a, b, ArithOp::sub), f.sub(a, b));
  EXPECT_EQ(f.arith(a, b, ArithOp::mul), f.mul(a, b));
  EXPECT_EQ(f.arith(a, b, ArithOp::div), f.div(a, b));
}

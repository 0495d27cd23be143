#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>

#include "generators.hpp"
#include "netlat/linalg.hpp"

using namespace netlat;

TEST(Linalg, EnumerationMatchesOracle) {
  for (auto [q, d] : std::vector<std::pair<std::uint32_t, int>>{
           {2, 2}, {3, 2}, {2, 3}, {3, 3}, {4, 2}, {2, 4}}) {
    const Field f = make_field_of_order(q);
    const auto pf = gen::oracle_field(f);
    const auto all = enumerate_subspaces(f, d);
    const auto ref = oracle::all_subspaces(pf, d);
    ASSERT_EQ(all.size(), ref.size()) << "q=" << q << " d=" << d;
    std::set<oracle::VecSet> mine;
    for (const auto &s : all)
      mine.insert(gen::vectors(pf, s));
    EXPECT_EQ(mine, ref);
    EXPECT_TRUE(std::is_sorted(all.begin(), all.end()));
  }
}

TEST(Linalg, SubspaceCounts) {
  const Field f3 = make_field_of_order(3), f2 = make_field_of_order(2),
              f7 = make_field_of_order(7);
  EXPECT_EQ(enumerate_subspaces(f3, 2).size(), 6u);
  EXPECT_EQ(enumerate_subspaces(f2, 3).size(), 16u);
  EXPECT_EQ(enumerate_subspaces(f7, 3, 1).size(), 57u);
  EXPECT_EQ(enumerate_subspaces(f3, 4).size(), 212u);
  EXPECT_EQ(gaussian_binomial(3, 4, 2), 130u);
  EXPECT_EQ(subspace_count(7, 3), 116u);
}

TEST(Linalg, EnumerationCap) {
  const Field f = make_field_of_order(5);
  EXPECT_THROW(enumerate_subspaces(f, 4, std::nullopt, 100), CapExceeded);
}

TEST(Linalg, SumMeetAndImageMatchVectorSets) {
  std::mt19937_64 rng(7);
  for (std::uint32_t q : {2u, 3u, 4u, 5u}) {
    const Field f = make_field_of_order(q);
    const auto pf = gen::oracle_field(f);
    const std::size_t d = q <= 3 ? 4 : 3;
    for (int trial = 0; trial < 60; ++trial) {
      const auto u = gen::subspace(f, d, rng), v = gen::subspace(f, d, rng);
      const auto uv = gen::vectors(pf, u), vv = gen::vectors(pf, v);
      EXPECT_EQ(gen::vectors(pf, intersect_subspaces(f, u, v)),
                oracle::intersect(uv, vv));
      std::vector<oracle::Vec> rows;
      for (const auto *s : {&u, &v})
        for (std::size_t r = 0; r < s->dim(); ++r) {
          oracle::Vec x;
          for (auto e : s->row(r))
            x.push_back(e.value());
          rows.push_back(x);
        }
      EXPECT_EQ(gen::vectors(pf, sum_subspaces(f, u, v)),
                oracle::span(pf, rows, static_cast<int>(d)));
      EXPECT_EQ(contains(f, u, v),
                std::includes(uv.begin(), uv.end(), vv.begin(), vv.end()));

      const Matrix a = gen::invertible(f, d, rng);
      EXPECT_EQ(gen::vectors(pf, apply_semilinear(f, a, 0, u)),
                oracle::image(pf, gen::rows_of(a), uv));
    }
  }
}

TEST(Linalg, CanonicalFormIsUnique) {
  std::mt19937_64 rng(11);
  const Field f = make_field_of_order(5);
  for (int trial = 0; trial < 200; ++trial) {
    const auto u = gen::subspace(f, 3, rng);
    // a random change of basis gives the same canonical subspace
    if (u.is_zero())
      continue;
    const Matrix c = gen::invertible(f, u.dim(), rng);
    std::vector<FieldElem> rows(u.dim() * 3);
    for (std::size_t i = 0; i < u.dim(); ++i)
      for (std::size_t j = 0; j < 3; ++j) {
        FieldElem s;
        for (std::size_t k = 0; k < u.dim(); ++k)
          s = f.add(s, f.mul(c(i, k), u.row(k)[j]));
        rows[i * 3 + j] = s;
      }
    EXPECT_EQ(canonical_subspace(f, 3, rows), u);
  }
}

TEST(Linalg, InverseAndMultiply) {
  std::mt19937_64 rng(3);
  for (std::uint32_t q : {2u, 7u, 9u}) {
    const Field f = make_field_of_order(q);
    for (int trial = 0; trial < 30; ++trial) {
      const Matrix a = gen::invertible(f, 4, rng);
      EXPECT_EQ(multiply(f, a, inverse(f, a)), Matrix::identity(4));
      EXPECT_EQ(multiply(f, inverse(f, a), a), Matrix::identity(4));
    }
  }
  const Field f = make_field_of_order(3);
  const Matrix s = Matrix::from_values(f, 2, 2, {1, 2, 2, 1});
  EXPECT_FALSE(is_invertible(f, s));
  EXPECT_THROW(apply_semilinear(f, s, 0, Subspace::full(2)), SingularMatrix);
}

TEST(Linalg, SpanOfAndText) {
  const Field f = make_field_of_order(3);
  const auto s = span_of(f, 3, {{2, 1, 0}, {0, 0, 1}});
  EXPECT_EQ(s.dim(), 2u);
  EXPECT_EQ(s.to_string(), "1,2,0|0,0,1");
  EXPECT_EQ(Subspace::zero(3).to_string(), "0");
  EXPECT_THROW(span_of(f, 3, {{1, 0}}), AmbientMismatch);
  EXPECT_THROW(sum_subspaces(f, Subspace::zero(2), Subspace::zero(3)),
               AmbientMismatch);
}

TEST(Linalg, SemilinearImageUsesFrobenius) {
  const Field f = make_field_of_order(4);
  const auto u = span_of(f, 2, {{1, 2}});
  // identity matrix with t=1 squares the coordinates: 2^2 = 3 in F_4
  EXPECT_EQ(apply_semilinear(f, Matrix::identity(2), 1, u),
            span_of(f, 2, {{1, 3}}));
}

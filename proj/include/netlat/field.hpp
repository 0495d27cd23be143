#pragma once

// Finite fields F_{p^k} with table-driven arithmetic.
//
// An element is stored as the integer c_0 + c_1 p + ... + c_{k-1} p^{k-1}
// of its coefficient vector in the polynomial basis 1, u, ..., u^{k-1},
// where u is a root of the field modulus.

#include <array>
#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "netlat/error.hpp"

namespace netlat {

inline constexpr std::uint32_t kMaxFieldSize = 256;

class FieldElem {
public:
  constexpr FieldElem() = default;
  constexpr explicit FieldElem(std::uint8_t v) : v_(v) {}

  constexpr std::uint8_t value() const noexcept { return v_; }
  constexpr bool is_zero() const noexcept { return v_ == 0; }

  friend constexpr auto operator<=>(FieldElem, FieldElem) = default;

private:
  std::uint8_t v_ = 0;
};

/// Parameters of F_{p^k}. `modulus` holds the coefficients of the monic
/// defining polynomial from the constant term upwards (length k + 1).
struct FieldSpec {
  std::uint32_t p = 0;
  std::uint32_t k = 0;
  std::uint32_t q = 0;
  std::vector<std::uint32_t> modulus;

  friend bool operator==(const FieldSpec &, const FieldSpec &) = default;
};

enum class ArithOp { add, sub, mul, div };

inline bool is_prime(std::uint64_t n) {
  if (n < 2)
    return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0)
      return false;
  return true;
}

namespace detail {

using Poly = std::vector<std::uint32_t>; // low -> high, trimmed

inline void trim(Poly &a) {
  while (!a.empty() && a.back() == 0)
    a.pop_back();
}

inline Poly poly_mod(Poly a, const Poly &m, std::uint32_t p) {
  trim(a);
  // m is monic
  while (a.size() >= m.size()) {
    std::uint32_t lead = a.back();
    std::size_t shift = a.size() - m.size();
    for (std::size_t i = 0; i < m.size(); ++i)
      a[shift + i] = (a[shift + i] + p * p - lead * m[i] % p) % p;
    trim(a);
  }
  return a;
}

inline Poly poly_from_index(std::uint64_t idx, std::uint32_t p,
                            std::uint32_t len) {
  Poly a(len);
  for (std::uint32_t i = 0; i < len; ++i) {
    a[i] = static_cast<std::uint32_t>(idx % p);
    idx /= p;
  }
  return a;
}

/// Irreducibility of a monic polynomial by trial division with every monic
/// polynomial of degree 1 .. deg/2.
inline bool is_irreducible(const Poly &f, std::uint32_t p) {
  const std::uint32_t deg = static_cast<std::uint32_t>(f.size() - 1);
  for (std::uint32_t dd = 1; 2 * dd <= deg; ++dd) {
    std::uint64_t count = 1;
    for (std::uint32_t i = 0; i < dd; ++i)
      count *= p;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      Poly g = poly_from_index(idx, p, dd);
      g.push_back(1);
      if (poly_mod(f, g, p).empty())
        return false;
    }
  }
  return true;
}

struct FieldTables {
  FieldSpec spec;
  std::vector<std::uint8_t> add, sub, mul;
  std::vector<std::uint8_t> neg, inv;
  std::vector<std::vector<std::uint8_t>> frob; // frob[t][x] = x^(p^t)
  std::uint8_t primitive = 1;
};

} // namespace detail

/// The lexicographically smallest irreducible monic polynomial of degree k
/// over F_p, where polynomials are ordered by the integer encoding of their
/// non-leading coefficients (constant term least significant). For k = 1
/// this is x.
inline std::vector<std::uint32_t> smallest_irreducible(std::uint32_t p,
                                                       std::uint32_t k) {
  if (k == 1)
    return {0, 1};
  std::uint64_t count = 1;
  for (std::uint32_t i = 0; i < k; ++i)
    count *= p;
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    detail::Poly f = detail::poly_from_index(idx, p, k);
    f.push_back(1);
    if (f[0] != 0 && detail::is_irreducible(f, p))
      return f;
  }
  throw Error("no irreducible polynomial found"); // unreachable for prime p
}

class Field {
public:
  Field() = default;

  const FieldSpec &spec() const { return t_->spec; }
  std::uint32_t p() const { return t_->spec.p; }
  std::uint32_t k() const { return t_->spec.k; }
  std::uint32_t q() const { return t_->spec.q; }

  FieldElem zero() const { return FieldElem(0); }
  FieldElem one() const { return FieldElem(1); }
  /// Element with integer encoding `v` (0 <= v < q).
  FieldElem elem(std::uint32_t v) const {
    if (v >= q())
      throw Error("field element index out of range");
    return FieldElem(static_cast<std::uint8_t>(v));
  }
  /// The generator u of the polynomial basis (equals 0 + 1·p).
  FieldElem generator() const {
    return k() == 1 ? one() : FieldElem(static_cast<std::uint8_t>(p()));
  }
  /// A generator of the multiplicative group.
  FieldElem primitive() const { return FieldElem(t_->primitive); }

  FieldElem add(FieldElem a, FieldElem b) const { return at(t_->add, a, b); }
  FieldElem sub(FieldElem a, FieldElem b) const { return at(t_->sub, a, b); }
  FieldElem mul(FieldElem a, FieldElem b) const { return at(t_->mul, a, b); }
  FieldElem neg(FieldElem a) const { return FieldElem(t_->neg[a.value()]); }
  FieldElem inv(FieldElem a) const {
    if (a.is_zero())
      throw DivisionByZero();
    return FieldElem(t_->inv[a.value()]);
  }
  FieldElem div(FieldElem a, FieldElem b) const { return mul(a, inv(b)); }

  FieldElem arith(FieldElem a, FieldElem b, ArithOp op) const {
    switch (op) {
    case ArithOp::add:
      return add(a, b);
    case ArithOp::sub:
      return sub(a, b);
    case ArithOp::mul:
      return mul(a, b);
    case ArithOp::div:
      return div(a, b);
    }
    return zero();
  }

  /// x^(p^t); t is taken modulo k.
  FieldElem frobenius(FieldElem x, std::uint32_t t) const {
    return FieldElem(t_->frob[t % k()][x.value()]);
  }

  std::vector<std::uint32_t> coefficients(FieldElem x) const {
    return detail::poly_from_index(x.value(), p(), k());
  }

  // Raw tables for the hot loops in the group engine.
  const std::uint8_t *mul_table() const { return t_->mul.data(); }
  const std::uint8_t *add_table() const { return t_->add.data(); }
  const std::uint8_t *inv_table() const { return t_->inv.data(); }
  const std::uint8_t *frob_table(std::uint32_t t) const {
    return t_->frob[t % k()].data();
  }

  std::string name() const {
    return k() == 1 ? "F_" + std::to_string(p())
                    : "F_" + std::to_string(q()) + " (p=" +
                          std::to_string(p()) + ", k=" + std::to_string(k()) +
                          ")";
  }

  friend bool operator==(const Field &a, const Field &b) {
    return a.t_ == b.t_ || (a.t_ && b.t_ && a.t_->spec == b.t_->spec);
  }

private:
  friend Field make_field(std::uint32_t, std::uint32_t, std::uint32_t);

  explicit Field(std::shared_ptr<const detail::FieldTables> t)
      : t_(std::move(t)) {}

  FieldElem at(const std::vector<std::uint8_t> &tab, FieldElem a,
               FieldElem b) const {
    return FieldElem(tab[a.value() * q() + b.value()]);
  }

  std::shared_ptr<const detail::FieldTables> t_;
};

/// Builds F_{p^k} with the canonical modulus. Throws NonPrime, or
/// CapExceeded when p^k exceeds `cap` (never more than 256).
inline Field make_field(std::uint32_t p, std::uint32_t k,
                        std::uint32_t cap = kMaxFieldSize) {
  if (!is_prime(p))
    throw NonPrime(p);
  if (k < 1)
    throw Error("extension degree must be at least 1");
  const std::uint32_t limit = std::min(cap, kMaxFieldSize);
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < k; ++i) {
    q *= p;
    if (q > limit)
      throw CapExceeded("field size " + std::to_string(p) + "^" +
                            std::to_string(k),
                        limit);
  }

  auto t = std::make_shared<detail::FieldTables>();
  t->spec = FieldSpec{p, k, static_cast<std::uint32_t>(q),
                      smallest_irreducible(p, k)};
  const std::uint32_t n = static_cast<std::uint32_t>(q);
  t->add.resize(n * n);
  t->sub.resize(n * n);
  t->mul.resize(n * n);
  t->neg.resize(n);
  t->inv.resize(n, 0);

  std::vector<detail::Poly> polys(n);
  for (std::uint32_t a = 0; a < n; ++a)
    polys[a] = detail::poly_from_index(a, p, k);
  auto encode = [&](const detail::Poly &a) {
    std::uint32_t v = 0;
    for (std::size_t i = a.size(); i-- > 0;)
      v = v * p + a[i];
    return v;
  };
  const detail::Poly &mod = t->spec.modulus;

  for (std::uint32_t a = 0; a < n; ++a) {
    for (std::uint32_t b = 0; b < n; ++b) {
      detail::Poly s(k), d(k);
      for (std::uint32_t i = 0; i < k; ++i) {
        s[i] = (polys[a][i] + polys[b][i]) % p;
        d[i] = (polys[a][i] + p - polys[b][i]) % p;
      }
      t->add[a * n + b] = static_cast<std::uint8_t>(encode(s));
      t->sub[a * n + b] = static_cast<std::uint8_t>(encode(d));

      detail::Poly prod(2 * k, 0);
      for (std::uint32_t i = 0; i < k; ++i)
        for (std::uint32_t j = 0; j < k; ++j)
          prod[i + j] = (prod[i + j] + polys[a][i] * polys[b][j]) % p;
      detail::Poly r = k == 1 ? detail::Poly{prod[0]}
                              : detail::poly_mod(prod, mod, p);
      r.resize(k, 0);
      t->mul[a * n + b] = static_cast<std::uint8_t>(encode(r));
    }
  }
  for (std::uint32_t a = 0; a < n; ++a) {
    t->neg[a] = t->sub[0 * n + a];
    for (std::uint32_t b = 1; b < n; ++b)
      if (t->mul[a * n + b] == 1)
        t->inv[a] = static_cast<std::uint8_t>(b);
  }

  // Frobenius powers by repeated p-th powering.
  t->frob.assign(k, std::vector<std::uint8_t>(n));
  std::vector<std::uint8_t> pth(n);
  for (std::uint32_t a = 0; a < n; ++a) {
    std::uint8_t r = 1;
    for (std::uint32_t i = 0; i < p; ++i)
      r = t->mul[r * n + a];
    pth[a] = r;
  }
  for (std::uint32_t a = 0; a < n; ++a)
    t->frob[0][a] = static_cast<std::uint8_t>(a);
  for (std::uint32_t s = 1; s < k; ++s)
    for (std::uint32_t a = 0; a < n; ++a)
      t->frob[s][a] = pth[t->frob[s - 1][a]];

  for (std::uint32_t g = 1; g < n; ++g) {
    std::uint32_t order = 1;
    std::uint8_t x = static_cast<std::uint8_t>(g);
    while (x != 1) {
      x = t->mul[x * n + g];
      ++order;
    }
    if (order == n - 1) {
      t->primitive = static_cast<std::uint8_t>(g);
      break;
    }
  }
  return Field(std::move(t));
}

/// Builds F_q from a prime power q.
inline Field make_field_of_order(std::uint32_t q,
                                 std::uint32_t cap = kMaxFieldSize) {
  if (q < 2)
    throw ConfigError("field order must be a prime power >= 2");
  std::uint32_t p = 2;
  while (q % p != 0)
    ++p;
  std::uint32_t k = 0, r = q;
  while (r % p == 0) {
    r /= p;
    ++k;
  }
  if (r != 1)
    throw ConfigError(std::to_string(q) + " is not a prime power");
  return make_field(p, k, cap);
}

} // namespace netlat

#pragma once

// Projective semilinear maps of F_q^d: pairs (A, t) acting by
// v -> A * frobenius(v, t), with A taken modulo scalars. The canonical
// representative scales A so that its first nonzero entry (row-major) is 1.
//
// Composition: (A, s) o (B, t) = (A * frobenius(B, s), s + t mod k).

#include <array>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "netlat/error.hpp"
#include "netlat/field.hpp"
#include "netlat/linalg.hpp"

namespace netlat {

struct SemilinearAut {
  std::uint8_t d = 0;
  std::uint8_t t = 0;
  std::array<FieldElem, kMaxAmbient * kMaxAmbient> a{};

  FieldElem operator()(std::size_t i, std::size_t j) const {
    return a[i * d + j];
  }
  FieldElem &operator()(std::size_t i, std::size_t j) { return a[i * d + j]; }

  Matrix matrix() const {
    Matrix m(d, d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        m(i, j) = (*this)(i, j);
    return m;
  }

  friend bool operator==(const SemilinearAut &x, const SemilinearAut &y) {
    return x.d == y.d && x.t == y.t && x.a == y.a;
  }
};

class SemilinearModel {
public:
  using Element = SemilinearAut;
  using Key = std::uint64_t;

  SemilinearModel(Field f, std::size_t d) : f_(std::move(f)), d_(d) {
    if (d == 0 || d > kMaxAmbient)
      throw CapExceeded("ambient dimension " + std::to_string(d), kMaxAmbient);
    const long double space =
        std::pow(static_cast<long double>(f_.q()), static_cast<long double>(d * d)) *
        f_.k();
    if (space >= 1.8e19L)
      throw CapExceeded("semilinear key space q^(d^2) k", ~std::uint64_t{0});
    key_space_ = 1;
    for (std::size_t i = 0; i < d * d; ++i)
      key_space_ *= f_.q();
    key_space_ *= f_.k();
  }

  const Field &field() const { return f_; }
  std::size_t dim() const { return d_; }
  std::uint64_t key_space() const { return key_space_; }

  Element identity() const {
    Element e;
    e.d = static_cast<std::uint8_t>(d_);
    for (std::size_t i = 0; i < d_; ++i)
      e(i, i) = FieldElem(1);
    return e;
  }

  /// Canonical element for (A, t); throws SingularMatrix.
  Element make(const Matrix &a, std::uint32_t t = 0) const {
    if (a.rows() != d_ || a.cols() != d_)
      throw AmbientMismatch(a.rows(), d_);
    if (!is_invertible(f_, a))
      throw SingularMatrix();
    Element e;
    e.d = static_cast<std::uint8_t>(d_);
    e.t = static_cast<std::uint8_t>(t % f_.k());
    for (std::size_t i = 0; i < d_; ++i)
      for (std::size_t j = 0; j < d_; ++j)
        e(i, j) = a(i, j);
    canonicalize(e);
    return e;
  }

  /// (I, 1): the Frobenius automorphism on coordinates.
  Element frobenius_gen() const {
    Element e = identity();
    e.t = static_cast<std::uint8_t>(1 % f_.k());
    return e;
  }

  void canonicalize(Element &e) const {
    const std::size_t n = d_ * d_;
    std::size_t i = 0;
    while (i < n && e.a[i].is_zero())
      ++i;
    if (i == n || e.a[i] == FieldElem(1))
      return;
    const std::uint8_t s = f_.inv_table()[e.a[i].value()];
    const std::uint8_t *mul = f_.mul_table();
    const std::uint32_t q = f_.q();
    for (; i < n; ++i)
      e.a[i] = FieldElem(mul[e.a[i].value() * q + s]);
  }

  Element compose(const Element &x, const Element &y) const {
    const std::uint8_t *mul = f_.mul_table();
    const std::uint8_t *add = f_.add_table();
    const std::uint8_t *fr = f_.frob_table(x.t);
    const std::uint32_t q = f_.q();
    Element r;
    r.d = static_cast<std::uint8_t>(d_);
    r.t = static_cast<std::uint8_t>((x.t + y.t) % f_.k());
    std::array<std::uint8_t, kMaxAmbient * kMaxAmbient> yb;
    for (std::size_t i = 0; i < d_ * d_; ++i)
      yb[i] = fr[y.a[i].value()];
    for (std::size_t i = 0; i < d_; ++i)
      for (std::size_t j = 0; j < d_; ++j) {
        std::uint32_t s = 0;
        for (std::size_t l = 0; l < d_; ++l)
          s = add[s * q + mul[x.a[i * d_ + l].value() * q + yb[l * d_ + j]]];
        r.a[i * d_ + j] = FieldElem(static_cast<std::uint8_t>(s));
      }
    canonicalize(r);
    return r;
  }

  /// (A, s)^-1 = (frobenius(A^-1, -s), -s).
  Element inverse(const Element &x) const {
    Matrix inv = netlat::inverse(f_, x.matrix());
    const std::uint32_t back = (f_.k() - x.t % f_.k()) % f_.k();
    return make(frobenius(f_, inv, back), back);
  }

  Key key(const Element &e) const {
    Key k = 0;
    for (std::size_t i = d_ * d_; i-- > 0;)
      k = k * f_.q() + e.a[i].value();
    return k * f_.k() + e.t;
  }

  Element decode(Key k) const {
    Element e;
    e.d = static_cast<std::uint8_t>(d_);
    e.t = static_cast<std::uint8_t>(k % f_.k());
    k /= f_.k();
    for (std::size_t i = 0; i < d_ * d_; ++i) {
      e.a[i] = FieldElem(static_cast<std::uint8_t>(k % f_.q()));
      k /= f_.q();
    }
    return e;
  }

  Subspace act(const Element &g, const Subspace &u) const {
    if (u.ambient() != d_)
      throw AmbientMismatch(u.ambient(), d_);
    if (u.is_zero() || u.is_full())
      return u;
    const std::uint8_t *mul = f_.mul_table();
    const std::uint8_t *add = f_.add_table();
    const std::uint8_t *fr = f_.frob_table(g.t);
    const std::uint32_t q = f_.q();
    std::array<FieldElem, kMaxAmbient * kMaxAmbient> rows{};
    for (std::size_t r = 0; r < u.dim(); ++r) {
      const auto v = u.row(r);
      for (std::size_t i = 0; i < d_; ++i) {
        std::uint32_t s = 0;
        for (std::size_t j = 0; j < d_; ++j)
          s = add[s * q + mul[g.a[i * d_ + j].value() * q + fr[v[j].value()]]];
        rows[r * d_ + i] = FieldElem(static_cast<std::uint8_t>(s));
      }
    }
    const std::size_t rank = rref_inplace(
        f_, std::span<FieldElem>(rows.data(), u.dim() * d_), u.dim(), d_);
    return subspace_from_rref(d_, rows, rank);
  }

  /// Matrix rows "a,b|c,d" followed by ";t=<t>".
  std::string describe(const Element &e) const {
    std::string s;
    for (std::size_t i = 0; i < d_; ++i) {
      if (i)
        s += '|';
      for (std::size_t j = 0; j < d_; ++j) {
        if (j)
          s += ',';
        s += std::to_string(e(i, j).value());
      }
    }
    return s + ";t=" + std::to_string(e.t);
  }

private:
  Field f_;
  std::size_t d_;
  std::uint64_t key_space_ = 0;
};

} // namespace netlat

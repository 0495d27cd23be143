#pragma once

// Dense linear algebra over F_q and canonical (RREF) subspaces.
//
// Vectors are columns and matrices act on the left. A subspace is stored
// by the reduced row-echelon form of the matrix whose rows are a spanning
// set of column vectors written out as rows.

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "netlat/error.hpp"
#include "netlat/field.hpp"

namespace netlat {

inline constexpr std::size_t kMaxAmbient = 8;

class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows * cols) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<FieldElem> entries)
      : rows_(rows), cols_(cols), a_(std::move(entries)) {
    if (a_.size() != rows * cols)
      throw Error("matrix entry count does not match its shape");
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      m(i, i) = FieldElem(1);
    return m;
  }

  /// From small integer encodings, row-major.
  static Matrix from_values(const Field &f, std::size_t rows, std::size_t cols,
                            std::initializer_list<std::uint32_t> values) {
    std::vector<FieldElem> e;
    e.reserve(values.size());
    for (auto v : values)
      e.push_back(f.elem(v));
    return Matrix(rows, cols, std::move(e));
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  FieldElem &operator()(std::size_t r, std::size_t c) {
    return a_[r * cols_ + c];
  }
  FieldElem operator()(std::size_t r, std::size_t c) const {
    return a_[r * cols_ + c];
  }
  std::span<const FieldElem> row(std::size_t r) const {
    return {a_.data() + r * cols_, cols_};
  }
  std::span<const FieldElem> entries() const { return a_; }

  friend bool operator==(const Matrix &, const Matrix &) = default;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<FieldElem> a_;
};

inline Matrix multiply(const Field &f, const Matrix &a, const Matrix &b) {
  if (a.cols() != b.rows())
    throw AmbientMismatch(a.cols(), b.rows());
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      FieldElem s;
      for (std::size_t l = 0; l < a.cols(); ++l)
        s = f.add(s, f.mul(a(i, l), b(l, j)));
      c(i, j) = s;
    }
  return c;
}

/// Entrywise x -> x^(p^t).
inline Matrix frobenius(const Field &f, const Matrix &a, std::uint32_t t) {
  Matrix r = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      r(i, j) = f.frobenius(a(i, j), t);
  return r;
}

/// In-place reduced row echelon form of a rows x cols block; returns the
/// rank. Nonzero rows end up first, in pivot order.
inline std::size_t rref_inplace(const Field &f, std::span<FieldElem> a,
                                std::size_t rows, std::size_t cols) {
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rank;
    while (piv < rows && a[piv * cols + c].is_zero())
      ++piv;
    if (piv == rows)
      continue;
    if (piv != rank)
      for (std::size_t j = 0; j < cols; ++j)
        std::swap(a[piv * cols + j], a[rank * cols + j]);
    const FieldElem s = f.inv(a[rank * cols + c]);
    for (std::size_t j = 0; j < cols; ++j)
      a[rank * cols + j] = f.mul(a[rank * cols + j], s);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || a[r * cols + c].is_zero())
        continue;
      const FieldElem factor = a[r * cols + c];
      for (std::size_t j = 0; j < cols; ++j)
        a[r * cols + j] =
            f.sub(a[r * cols + j], f.mul(factor, a[rank * cols + j]));
    }
    ++rank;
  }
  return rank;
}

inline Matrix inverse(const Field &f, const Matrix &a) {
  if (a.rows() != a.cols())
    throw SingularMatrix();
  const std::size_t n = a.rows();
  std::vector<FieldElem> aug(n * 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j)
      aug[i * 2 * n + j] = a(i, j);
    aug[i * 2 * n + n + i] = FieldElem(1);
  }
  // Pivots must all land in the left block.
  if (rref_inplace(f, aug, n, 2 * n) < n)
    throw SingularMatrix();
  for (std::size_t i = 0; i < n; ++i)
    if (aug[i * 2 * n + i] != FieldElem(1))
      throw SingularMatrix();
  Matrix r(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      r(i, j) = aug[i * 2 * n + n + j];
  return r;
}

inline bool is_invertible(const Field &f, const Matrix &a) {
  if (a.rows() != a.cols())
    return false;
  std::vector<FieldElem> buf(a.entries().begin(), a.entries().end());
  return rref_inplace(f, buf, a.rows(), a.cols()) == a.rows();
}

/// A subspace of F_q^d in canonical form: the RREF basis with zero rows
/// dropped. Value equality is equality of subspaces.
class Subspace {
public:
  Subspace() = default;

  static Subspace zero(std::size_t d) {
    check_ambient(d);
    Subspace s;
    s.d_ = static_cast<std::uint8_t>(d);
    return s;
  }
  static Subspace full(std::size_t d) {
    Subspace s = zero(d);
    s.dim_ = static_cast<std::uint8_t>(d);
    for (std::size_t i = 0; i < d; ++i)
      s.rows_[i * d + i] = FieldElem(1);
    return s;
  }

  std::size_t ambient() const noexcept { return d_; }
  std::size_t dim() const noexcept { return dim_; }
  bool is_zero() const noexcept { return dim_ == 0; }
  bool is_full() const noexcept { return dim_ == d_; }

  std::span<const FieldElem> row(std::size_t i) const {
    return {rows_.data() + i * d_, d_};
  }
  std::span<const FieldElem> basis() const {
    return {rows_.data(), std::size_t(dim_) * d_};
  }

  /// Canonical order: by dimension, then lexicographically by basis.
  friend std::strong_ordering operator<=>(const Subspace &a,
                                          const Subspace &b) {
    if (auto c = a.d_ <=> b.d_; c != 0)
      return c;
    if (auto c = a.dim_ <=> b.dim_; c != 0)
      return c;
    for (std::size_t i = 0; i < std::size_t(a.dim_) * a.d_; ++i)
      if (auto c = a.rows_[i] <=> b.rows_[i]; c != 0)
        return c;
    return std::strong_ordering::equal;
  }
  friend bool operator==(const Subspace &a, const Subspace &b) {
    return (a <=> b) == 0;
  }

  std::size_t hash() const noexcept {
    std::size_t h = d_ * 131u + dim_;
    for (std::size_t i = 0; i < std::size_t(dim_) * d_; ++i)
      h = h * 1000003u ^ rows_[i].value();
    return h;
  }

  /// Compact text form: rows separated by '|', entries by their integer
  /// encodings, e.g. "1,0,2|0,1,1". The zero subspace prints as "0".
  std::string to_string() const {
    if (dim_ == 0)
      return "0";
    std::string s;
    for (std::size_t r = 0; r < dim_; ++r) {
      if (r)
        s += '|';
      for (std::size_t c = 0; c < d_; ++c) {
        if (c)
          s += ',';
        s += std::to_string(rows_[r * d_ + c].value());
      }
    }
    return s;
  }

private:
  friend Subspace subspace_from_rref(std::size_t, std::span<const FieldElem>,
                                     std::size_t);

  static void check_ambient(std::size_t d) {
    if (d > kMaxAmbient)
      throw CapExceeded("ambient dimension " + std::to_string(d), kMaxAmbient);
  }

  std::uint8_t d_ = 0;
  std::uint8_t dim_ = 0;
  std::array<FieldElem, kMaxAmbient * kMaxAmbient> rows_{};
};

struct SubspaceHash {
  std::size_t operator()(const Subspace &s) const noexcept { return s.hash(); }
};

/// Wraps the first `rank` rows of an RREF buffer of width d.
inline Subspace subspace_from_rref(std::size_t d,
                                   std::span<const FieldElem> rref,
                                   std::size_t rank) {
  Subspace s = Subspace::zero(d);
  s.dim_ = static_cast<std::uint8_t>(rank);
  std::copy_n(rref.begin(), rank * d, s.rows_.begin());
  return s;
}

/// Canonical representative of the row space of `rows` (width d).
inline Subspace canonical_subspace(const Field &f, std::size_t d,
                                   std::span<const FieldElem> rows) {
  if (d == 0 || rows.size() % d != 0)
    throw Error("row data does not match the ambient dimension");
  std::vector<FieldElem> buf(rows.begin(), rows.end());
  const std::size_t n = rows.size() / d;
  const std::size_t rank = rref_inplace(f, buf, n, d);
  return subspace_from_rref(d, buf, rank);
}

inline Subspace canonical_subspace(const Field &f, const Matrix &rows) {
  if (rows.rows() == 0)
    return Subspace::zero(rows.cols());
  return canonical_subspace(f, rows.cols(), rows.entries());
}

/// Span of the given vectors, each given by integer encodings.
inline Subspace span_of(const Field &f, std::size_t d,
                        std::initializer_list<std::vector<std::uint32_t>> vs) {
  std::vector<FieldElem> rows;
  for (const auto &v : vs) {
    if (v.size() != d)
      throw AmbientMismatch(v.size(), d);
    for (auto x : v)
      rows.push_back(f.elem(x));
  }
  if (rows.empty())
    return Subspace::zero(d);
  return canonical_subspace(f, d, rows);
}

inline Subspace sum_subspaces(const Field &f, const Subspace &u,
                              const Subspace &v) {
  if (u.ambient() != v.ambient())
    throw AmbientMismatch(u.ambient(), v.ambient());
  if (v.is_zero() || u.is_full())
    return u;
  if (u.is_zero() || v.is_full())
    return v;
  std::vector<FieldElem> rows(u.basis().begin(), u.basis().end());
  rows.insert(rows.end(), v.basis().begin(), v.basis().end());
  return canonical_subspace(f, u.ambient(), rows);
}

/// Zassenhaus: RREF of [[U, U], [V, 0]]; rows whose left half vanishes span
/// the intersection in their right half.
inline Subspace intersect_subspaces(const Field &f, const Subspace &u,
                                    const Subspace &v) {
  if (u.ambient() != v.ambient())
    throw AmbientMismatch(u.ambient(), v.ambient());
  const std::size_t d = u.ambient();
  if (u.is_zero() || v.is_full())
    return u;
  if (v.is_zero() || u.is_full())
    return v;
  const std::size_t n = u.dim() + v.dim();
  std::vector<FieldElem> buf(n * 2 * d);
  for (std::size_t r = 0; r < u.dim(); ++r)
    for (std::size_t c = 0; c < d; ++c) {
      buf[r * 2 * d + c] = u.row(r)[c];
      buf[r * 2 * d + d + c] = u.row(r)[c];
    }
  for (std::size_t r = 0; r < v.dim(); ++r)
    for (std::size_t c = 0; c < d; ++c)
      buf[(u.dim() + r) * 2 * d + c] = v.row(r)[c];
  const std::size_t rank = rref_inplace(f, buf, n, 2 * d);
  std::vector<FieldElem> out;
  for (std::size_t r = 0; r < rank; ++r) {
    bool left_zero = true;
    for (std::size_t c = 0; c < d && left_zero; ++c)
      left_zero = buf[r * 2 * d + c].is_zero();
    if (left_zero)
      out.insert(out.end(), buf.begin() + r * 2 * d + d,
                 buf.begin() + (r + 1) * 2 * d);
  }
  if (out.empty())
    return Subspace::zero(d);
  return canonical_subspace(f, d, out);
}

/// True iff v is a subspace of u.
inline bool contains(const Field &f, const Subspace &u, const Subspace &v) {
  if (u.ambient() != v.ambient())
    throw AmbientMismatch(u.ambient(), v.ambient());
  if (v.dim() > u.dim())
    return false;
  if (v.is_zero() || u.is_full())
    return true;
  return sum_subspaces(f, u, v).dim() == u.dim();
}

/// Image of U under v -> A * frobenius(v, t).
inline Subspace apply_semilinear(const Field &f, const Matrix &a,
                                 std::uint32_t t, const Subspace &u) {
  if (a.rows() != a.cols() || a.rows() != u.ambient())
    throw AmbientMismatch(a.rows(), u.ambient());
  if (!is_invertible(f, a))
    throw SingularMatrix();
  const std::size_t d = u.ambient();
  if (u.is_zero() || u.is_full())
    return u;
  std::vector<FieldElem> rows(u.dim() * d);
  for (std::size_t r = 0; r < u.dim(); ++r)
    for (std::size_t i = 0; i < d; ++i) {
      FieldElem s;
      for (std::size_t j = 0; j < d; ++j)
        s = f.add(s, f.mul(a(i, j), f.frobenius(u.row(r)[j], t)));
      rows[r * d + i] = s;
    }
  return canonical_subspace(f, d, rows);
}

/// Number of r-dimensional subspaces of F_q^d (Gaussian binomial).
inline std::uint64_t gaussian_binomial(std::uint64_t q, std::size_t d,
                                       std::size_t r) {
  if (r > d)
    return 0;
  long double num = 1, den = 1;
  long double qd = 1, qr = 1;
  for (std::size_t i = 0; i < d; ++i)
    qd *= static_cast<long double>(q);
  for (std::size_t i = 0; i < r; ++i)
    qr *= static_cast<long double>(q);
  long double qi = 1;
  for (std::size_t i = 0; i < r; ++i) {
    num *= (qd / qi - 1);
    den *= (qr / qi - 1);
    qi *= static_cast<long double>(q);
  }
  return static_cast<std::uint64_t>(num / den + 0.5L);
}

inline std::uint64_t subspace_count(std::uint64_t q, std::size_t d) {
  std::uint64_t total = 0;
  for (std::size_t r = 0; r <= d; ++r)
    total += gaussian_binomial(q, d, r);
  return total;
}

inline constexpr std::uint64_t kDefaultSubspaceCap = 100000;

/// All subspaces of F_q^d (optionally only those of one dimension), in
/// canonical order. Generates each RREF matrix exactly once from its pivot
/// set and free entries.
inline std::vector<Subspace>
enumerate_subspaces(const Field &f, std::size_t d,
                    std::optional<std::size_t> dim_filter = std::nullopt,
                    std::uint64_t cap = kDefaultSubspaceCap) {
  if (d > kMaxAmbient)
    throw CapExceeded("ambient dimension " + std::to_string(d), kMaxAmbient);
  std::uint64_t expected = dim_filter ? gaussian_binomial(f.q(), d, *dim_filter)
                                      : subspace_count(f.q(), d);
  if (expected > cap)
    throw CapExceeded("subspace count " + std::to_string(expected), cap);

  std::vector<Subspace> out;
  out.reserve(expected);
  for (std::size_t r = 0; r <= d; ++r) {
    if (dim_filter && *dim_filter != r)
      continue;
    if (r == 0) {
      out.push_back(Subspace::zero(d));
      continue;
    }
    // pivot columns: increasing r-subsets of {0..d-1}
    std::vector<std::size_t> piv(r);
    for (std::size_t i = 0; i < r; ++i)
      piv[i] = i;
    while (true) {
      std::vector<std::pair<std::size_t, std::size_t>> free;
      for (std::size_t row = 0; row < r; ++row)
        for (std::size_t c = piv[row] + 1; c < d; ++c)
          if (!std::binary_search(piv.begin(), piv.end(), c))
            free.emplace_back(row, c);
      std::vector<std::uint32_t> digit(free.size(), 0);
      std::vector<FieldElem> buf(r * d);
      while (true) {
        std::fill(buf.begin(), buf.end(), FieldElem());
        for (std::size_t row = 0; row < r; ++row)
          buf[row * d + piv[row]] = FieldElem(1);
        for (std::size_t i = 0; i < free.size(); ++i)
          buf[free[i].first * d + free[i].second] =
              FieldElem(static_cast<std::uint8_t>(digit[i]));
        out.push_back(subspace_from_rref(d, buf, r));
        std::size_t i = 0;
        while (i < digit.size() && ++digit[i] == f.q())
          digit[i++] = 0;
        if (i == digit.size())
          break;
      }
      // next pivot set
      std::size_t i = r;
      while (i > 0 && piv[i - 1] == d - r + (i - 1))
        --i;
      if (i == 0)
        break;
      ++piv[i - 1];
      for (std::size_t j = i; j < r; ++j)
        piv[j] = piv[j - 1] + 1;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

} // namespace netlat

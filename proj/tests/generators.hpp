#pragma once

// Seeded random generators for property tests, plus conversions between
// library values and the oracle representations.

#include <cstdint>
#include <random>
#include <vector>

#include "netlat/field.hpp"
#include "netlat/linalg.hpp"
#include "netlat/semilinear.hpp"
#include "oracles.hpp"

namespace gen {

using netlat::Field;
using netlat::FieldElem;
using netlat::Matrix;
using netlat::Subspace;

inline FieldElem element(const Field &f, std::mt19937_64 &rng) {
  return f.elem(static_cast<std::uint32_t>(rng() % f.q()));
}

/// Row space of a random number of random rows; every dimension occurs.
inline Subspace subspace(const Field &f, std::size_t d, std::mt19937_64 &rng) {
  const std::size_t r = rng() % (d + 1);
  if (r == 0)
    return Subspace::zero(d);
  std::vector<FieldElem> rows(r * d);
  for (auto &x : rows)
    x = element(f, rng);
  return netlat::canonical_subspace(f, d, rows);
}

inline Matrix invertible(const Field &f, std::size_t d, std::mt19937_64 &rng) {
  while (true) {
    std::vector<FieldElem> v(d * d);
    for (auto &x : v)
      x = element(f, rng);
    Matrix a(d, d, std::move(v));
    if (netlat::is_invertible(f, a))
      return a;
  }
}

inline netlat::SemilinearAut semilinear(const netlat::SemilinearModel &model,
                                        std::mt19937_64 &rng) {
  const Field &f = model.field();
  return model.make(invertible(f, model.dim(), rng),
                    static_cast<std::uint32_t>(rng() % f.k()));
}

inline oracle::PolyField oracle_field(const Field &f) {
  return oracle::poly_field(static_cast<int>(f.p()), static_cast<int>(f.k()));
}

inline oracle::VecSet vectors(const oracle::PolyField &pf, const Subspace &s) {
  std::vector<oracle::Vec> rows;
  for (std::size_t r = 0; r < s.dim(); ++r) {
    oracle::Vec v;
    for (auto x : s.row(r))
      v.push_back(x.value());
    rows.push_back(v);
  }
  return oracle::span(pf, rows, static_cast<int>(s.ambient()));
}

inline std::vector<oracle::Vec> rows_of(const Matrix &a) {
  std::vector<oracle::Vec> out(a.rows(), oracle::Vec(a.cols()));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      out[i][j] = a(i, j).value();
  return out;
}

} // namespace gen

#pragma once

// Standard generating sets for Aut(L) and its frame subgroups, pointwise
// stabilizer tests, and brute-force lattice automorphisms.
//
// For a frame of n blocks of size m over F_q:
//   diagonal: GL(m, q) in every diagonal block, plus the Frobenius map;
//             generates H = G(L0).
//   monomial: diagonal plus block permutations.
//   full:     monomial plus one elementary block transvection; generates
//             the projective semilinear group, which is Aut(L) in rank >= 3.
// In rank 2 (n = 2, m = 1) the same kinds are realised in AtomModel.

#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "netlat/atom_model.hpp"
#include "netlat/finite_lattice.hpp"
#include "netlat/lattice.hpp"
#include "netlat/semilinear.hpp"

namespace netlat {

enum class GenKind { diagonal, full, monomial };

inline const char *to_string(GenKind k) {
  switch (k) {
  case GenKind::diagonal:
    return "diagonal";
  case GenKind::full:
    return "full";
  case GenKind::monomial:
    return "monomial";
  }
  return "?";
}

/// Generators of GL(m, q): diag(w) in each position and the elementary
/// transvections I + E_ab.
inline std::vector<Matrix> gl_generators(const Field &f, std::size_t m) {
  std::vector<Matrix> gens;
  if (f.q() > 2)
    for (std::size_t a = 0; a < m; ++a) {
      Matrix d = Matrix::identity(m);
      d(a, a) = f.primitive();
      gens.push_back(d);
    }
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      if (a != b) {
        Matrix t = Matrix::identity(m);
        t(a, b) = FieldElem(1);
        gens.push_back(t);
      }
  return gens;
}

/// Identity except block (i, i), which is `local`.
inline Matrix block_diagonal_matrix(const Frame &fr, std::size_t i,
                                    const Matrix &local) {
  const std::size_t m = fr.m();
  Matrix a = Matrix::identity(fr.ambient());
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t c = 0; c < m; ++c)
      a(i * m + r, i * m + c) = local(r, c);
  return a;
}

/// t_ij(xi) = I + xi in block (i, j), i != j. With column vectors it fixes
/// every e_s for s != j and sends e_j into e_j + e_i.
inline Matrix block_transvection_matrix(const Frame &fr, std::size_t i,
                                        std::size_t j, const Matrix &xi) {
  if (i == j || i >= fr.n() || j >= fr.n())
    throw Error("block transvection needs distinct block indices");
  const std::size_t m = fr.m();
  Matrix a = Matrix::identity(fr.ambient());
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t c = 0; c < m; ++c)
      a(i * m + r, j * m + c) = xi(r, c);
  return a;
}

inline SemilinearAut block_transvection(const SemilinearModel &model,
                                        const Frame &fr, std::size_t i,
                                        std::size_t j, const Matrix &xi) {
  return model.make(block_transvection_matrix(fr, i, j, xi));
}

/// t_ij(1) with the identity block as coefficient.
inline SemilinearAut unit_transvection(const SemilinearModel &model,
                                       const Frame &fr, std::size_t i,
                                       std::size_t j) {
  return block_transvection(model, fr, i, j, Matrix::identity(fr.m()));
}

/// Block permutation matrix sending block j to block perm[j].
inline Matrix block_permutation_matrix(const Frame &fr,
                                       const std::vector<std::size_t> &perm) {
  const std::size_t m = fr.m();
  Matrix a(fr.ambient(), fr.ambient());
  for (std::size_t j = 0; j < fr.n(); ++j)
    for (std::size_t c = 0; c < m; ++c)
      a(perm.at(j) * m + c, j * m + c) = FieldElem(1);
  return a;
}

/// Swap of blocks i and j.
inline SemilinearAut block_swap(const SemilinearModel &model, const Frame &fr,
                                std::size_t i, std::size_t j) {
  std::vector<std::size_t> perm(fr.n());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::swap(perm.at(i), perm.at(j));
  return model.make(block_permutation_matrix(fr, perm));
}

inline std::vector<SemilinearAut>
standard_gens(const SemilinearModel &model, const Frame &fr, GenKind kind) {
  if (model.dim() != fr.ambient())
    throw AmbientMismatch(model.dim(), fr.ambient());
  std::vector<SemilinearAut> gens;
  for (std::size_t i = 0; i < fr.n(); ++i)
    for (const auto &g : gl_generators(fr.field(), fr.m()))
      gens.push_back(model.make(block_diagonal_matrix(fr, i, g)));
  if (fr.field().k() > 1)
    gens.push_back(model.frobenius_gen());
  if (kind == GenKind::diagonal)
    return gens;

  gens.push_back(block_swap(model, fr, 0, 1));
  if (fr.n() > 2) {
    std::vector<std::size_t> cyc(fr.n());
    for (std::size_t j = 0; j < fr.n(); ++j)
      cyc[j] = (j + 1) % fr.n();
    gens.push_back(model.make(block_permutation_matrix(fr, cyc)));
  }
  if (kind == GenKind::monomial)
    return gens;

  gens.push_back(unit_transvection(model, fr, 0, 1));
  return gens;
}

inline std::vector<Perm> standard_gens(const AtomModel &model, const Frame &fr,
                                       GenKind kind) {
  if (fr.ambient() != 2)
    throw ConfigError("the atom model needs a rank-2 frame");
  const auto e1 = static_cast<std::uint16_t>(model.index_of(fr.e(0)));
  const auto e2 = static_cast<std::uint16_t>(model.index_of(fr.e(1)));
  switch (kind) {
  case GenKind::diagonal:
    return model.stabilizer_of({fr.e(0), fr.e(1)});
  case GenKind::monomial: {
    auto gens = model.stabilizer_of({fr.e(0), fr.e(1)});
    gens.push_back(Perm::cycle(model.degree(), {e1, e2}));
    return gens;
  }
  case GenKind::full: {
    std::vector<std::uint16_t> all(model.degree());
    std::iota(all.begin(), all.end(), std::uint16_t{0});
    return model.symmetric_on(all);
  }
  }
  return {};
}

/// True iff g fixes every element of `m`.
template <class Model>
bool pointwise_fixes(const Model &model, const typename Model::Element &g,
                     const std::vector<Subspace> &m) {
  for (const auto &x : m)
    if (model.act(g, x) != x)
      return false;
  return true;
}

/// Order-preserving bijections of a subspace universe (closed under meet
/// and join), as permutations of its canonical order.
inline std::vector<Perm>
brute_force_lattice_autos(const Field &f, const std::vector<Subspace> &universe,
                          std::uint64_t cap = 1u << 22) {
  return lattice_automorphisms(FiniteLattice::from_subspaces(f, universe), cap);
}

/// Order of the rank >= 3 automorphism model, or (q+1)! in rank 2.
inline std::uint64_t factorial(std::uint64_t n) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 2; i <= n; ++i)
    r *= i;
  return r;
}

} // namespace netlat

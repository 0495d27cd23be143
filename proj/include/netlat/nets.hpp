#pragma once

// D-nets realised in the subspace lattice: net collections, the associated
// lattice K_sigma, net subgroups as pointwise stabilizers, normalizer
// membership and the net attached to an intermediate subgroup.
//
// Convention: realize(sigma)_ij = e_j exactly when sigma_ji is Full. With
// column vectors, the net subgroup G(K_sigma) then consists of the maps whose
// (i, j) block vanishes whenever sigma_ij is Zero.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "netlat/atom_model.hpp"
#include "netlat/autgroup.hpp"
#include "netlat/dnet.hpp"
#include "netlat/group.hpp"
#include "netlat/lattice.hpp"
#include "netlat/semilinear.hpp"

namespace netlat {

inline std::string key_to_string(std::uint64_t k) { return std::to_string(k); }
inline std::string key_to_string(const std::string &k) {
  static const char *hex = "0123456789abcdef";
  std::string s;
  for (unsigned char c : k) {
    s += hex[c >> 4];
    s += hex[c & 15];
  }
  return s;
}

/// An n x n array of subspaces, entry (i, j) below e_j.
struct NetCollection {
  std::size_t n = 0;
  std::vector<Subspace> tau;

  const Subspace &at(std::size_t i, std::size_t j) const { return tau[i * n + j]; }
  Subspace &at(std::size_t i, std::size_t j) { return tau[i * n + j]; }
};

/// tau_ij = e_j if bit (i, j) of the pattern is set, else 0.
inline NetCollection collection_from_pattern(const Pattern &p, const Frame &f) {
  if (p.n != f.n())
    throw ConfigError("pattern order does not match the frame");
  NetCollection c{p.n, std::vector<Subspace>(p.n * p.n, f.bottom())};
  for (std::size_t i = 0; i < p.n; ++i)
    for (std::size_t j = 0; j < p.n; ++j)
      if (p.at(i, j))
        c.at(i, j) = f.e(j);
  return c;
}

/// The collection sigma^T: tau_ij = e_j iff sigma_ji is Full.
inline NetCollection realize(const DNet &sigma, const Frame &f) {
  return collection_from_pattern(sigma.pattern().transposed(), f);
}

struct ConditionWitness {
  std::string condition; // "i", "ii", "iii" or "iv"
  std::size_t i = 0, j = 0, k = 0;
  std::string element;     // description of the group element, if any
  std::string element_key; // replayable key, if any
};

struct ConditionReport {
  bool cond_i = true, cond_ii = true, cond_iii = true, cond_iv = true;
  bool sampled = false;
  std::uint64_t elements_checked = 0;
  std::optional<ConditionWitness> witness;

  bool all() const { return cond_i && cond_ii && cond_iii && cond_iv; }
};

/// Checks (i) tau_ij <= e_j, (ii) tau_ii = e_i, (iii) tau_ij fixed by H
/// (given by generators), and (iv) for every listed g and all i, j:
///   [g(e_i)]_j <= tau_ij  iff  [g(tau_ki)]_j <= tau_kj for every k.
/// The right side with k = i is the left side, so only the forward
/// implication can fail; the witness names the offending k.
template <class Model, class Range>
ConditionReport
collection_conditions(const Model &model, const NetCollection &tau,
                      const Frame &f,
                      const std::vector<typename Model::Element> &h_gens,
                      Range &&g_elems, bool sampled) {
  const Field &fld = f.field();
  const std::size_t n = f.n();
  ConditionReport rep;
  rep.sampled = sampled;
  auto fail = [&](bool &flag, const char *which, std::size_t i, std::size_t j,
                  std::size_t k = 0) {
    if (flag) {
      flag = false;
      if (!rep.witness)
        rep.witness = ConditionWitness{which, i, j, k, {}, {}};
    }
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (!contains(fld, f.e(j), tau.at(i, j)))
        fail(rep.cond_i, "i", i, j);
      if (i == j && tau.at(i, i) != f.e(i))
        fail(rep.cond_ii, "ii", i, i);
      for (const auto &h : h_gens)
        if (model.act(h, tau.at(i, j)) != tau.at(i, j)) {
          fail(rep.cond_iii, "iii", i, j);
          break;
        }
    }

  std::vector<Subspace> distinct;
  for (std::size_t i = 0; i < n; ++i)
    distinct.push_back(f.e(i));
  for (const auto &t : tau.tau)
    if (std::find(distinct.begin(), distinct.end(), t) == distinct.end())
      distinct.push_back(t);
  auto slot = [&](const Subspace &x) {
    return static_cast<std::size_t>(
        std::find(distinct.begin(), distinct.end(), x) - distinct.begin());
  };
  std::vector<std::size_t> e_slot(n), tau_slot(n * n);
  for (std::size_t i = 0; i < n; ++i)
    e_slot[i] = slot(f.e(i));
  for (std::size_t i = 0; i < n * n; ++i)
    tau_slot[i] = slot(tau.tau[i]);

  std::vector<SupportVector> supp(distinct.size());
  for (const auto &g : g_elems) {
    ++rep.elements_checked;
    for (std::size_t s = 0; s < distinct.size(); ++s)
      supp[s] = support(model.act(g, distinct[s]), f);
    for (std::size_t i = 0; i < n && rep.cond_iv; ++i)
      for (std::size_t j = 0; j < n && rep.cond_iv; ++j) {
        const bool lhs =
            contains(fld, tau.at(i, j), supp[e_slot[i]].components[j]);
        bool rhs = true;
        std::size_t bad_k = 0;
        for (std::size_t k = 0; k < n && rhs; ++k)
          if (!contains(fld, tau.at(k, j),
                        supp[tau_slot[k * n + i]].components[j])) {
            rhs = false;
            bad_k = k;
          }
        if (lhs != rhs) {
          rep.cond_iv = false;
          if (!rep.witness)
            rep.witness = ConditionWitness{"iv", i, j, bad_k, model.describe(g),
                                           key_to_string(model.key(g))};
        }
      }
    if (!rep.cond_iv)
      break;
  }
  return rep;
}

/// K_tau: the sublattice generated by the row sums sum_j tau_ij.
struct NetLattice {
  std::vector<Subspace> generators;
  std::vector<Subspace> elements;
};

inline NetLattice associated_K(const DNet &sigma, const Frame &f,
                               std::uint64_t cap = 1u << 16) {
  const NetCollection tau = realize(sigma, f);
  NetLattice k;
  for (std::size_t i = 0; i < f.n(); ++i) {
    Subspace row = f.bottom();
    for (std::size_t j = 0; j < f.n(); ++j)
      row = sum_subspaces(f.field(), row, tau.at(i, j));
    k.generators.push_back(row);
  }
  k.elements = generated_sublattice(f.field(), k.generators, cap);
  return k;
}

/// Diagonal generators plus t_ij(1) for every Full off-diagonal sigma_ij.
inline std::vector<SemilinearAut>
net_group_gens(const SemilinearModel &model, const Frame &f, const DNet &sigma) {
  auto gens = standard_gens(model, f, GenKind::diagonal);
  for (std::size_t i = 0; i < f.n(); ++i)
    for (std::size_t j = 0; j < f.n(); ++j)
      if (i != j && sigma.full(i, j))
        gens.push_back(unit_transvection(model, f, i, j));
  return gens;
}

/// Rank 2: the symmetric group on the atoms outside K_sigma.
inline std::vector<Perm> net_group_gens(const AtomModel &model, const Frame &f,
                                        const DNet &sigma) {
  return model.stabilizer_of(associated_K(sigma, f).elements);
}

/// g fixes every generator of K (hence all of K).
template <class Model>
bool in_net_group(const Model &model, const typename Model::Element &g,
                  const NetLattice &k) {
  return pointwise_fixes(model, g, k.generators);
}

/// Block (i, j) of the matrix part vanishes whenever sigma_ij is Zero.
inline bool in_pattern_group(const SemilinearAut &g, const DNet &sigma,
                             const Frame &f) {
  const std::size_t m = f.m();
  for (std::size_t i = 0; i < f.n(); ++i)
    for (std::size_t j = 0; j < f.n(); ++j) {
      if (sigma.full(i, j))
        continue;
      for (std::size_t r = 0; r < m; ++r)
        for (std::size_t c = 0; c < m; ++c)
          if (!g(i * m + r, j * m + c).is_zero())
            return false;
    }
  return true;
}

/// Net subgroup data reused across many normalizer queries.
template <class Model> struct NetGroup {
  DNet sigma;
  NetLattice k;
  std::vector<typename Model::Element> gens;
};

template <class Model>
NetGroup<Model> make_net_group(const Model &model, const Frame &f,
                               const DNet &sigma) {
  return NetGroup<Model>{sigma, associated_K(sigma, f),
                         net_group_gens(model, f, sigma)};
}

/// x g x^-1 and x^-1 g x lie in G(K_sigma) for every net-group generator g.
template <class Model>
bool in_normalizer(const Model &model, const typename Model::Element &x,
                   const NetGroup<Model> &ng) {
  const auto xi = model.inverse(x);
  for (const auto &g : ng.gens) {
    if (!in_net_group(model, model.compose(model.compose(x, g), xi), ng.k))
      return false;
    if (!in_net_group(model, model.compose(model.compose(xi, g), x), ng.k))
      return false;
  }
  return true;
}

template <class Model>
bool in_normalizer(const Model &model, const typename Model::Element &x,
                   const DNet &sigma, const Frame &f) {
  return in_normalizer(model, x, make_net_group(model, f, sigma));
}

/// The pattern found for a subgroup, whether or not it is a D-net.
struct AssociatedNet {
  Pattern pattern;
  std::optional<DNet> net; // set when the pattern is transitive
};

inline AssociatedNet finish_associated(Pattern p) {
  AssociatedNet a{p, std::nullopt};
  if (p.reflexive() && p.transitive())
    a.net = DNet(p);
  return a;
}

/// sigma_ij Full iff F contains t_ij(xi) for some nonzero xi in M(m, q).
inline AssociatedNet associated_dnet(GroupHandle<SemilinearModel> &fh,
                                     const Frame &f) {
  fh.materialize();
  const SemilinearModel &model = fh.model();
  const std::size_t m = f.m();
  const std::uint32_t q = f.field().q();
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < m * m; ++i)
    count *= q;
  Pattern p = DNet::identity(f.n()).pattern();
  for (std::size_t i = 0; i < f.n(); ++i)
    for (std::size_t j = 0; j < f.n(); ++j) {
      if (i == j)
        continue;
      for (std::uint64_t c = 1; c < count; ++c) {
        Matrix xi(m, m);
        std::uint64_t r = c;
        for (std::size_t e = 0; e < m * m; ++e, r /= q)
          xi(e / m, e % m) = FieldElem(static_cast<std::uint8_t>(r % q));
        if (fh.contains(block_transvection(model, f, i, j, xi))) {
          p.set(i, j);
          break;
        }
      }
    }
  return finish_associated(p);
}

/// f lies in the lattice transvection set H_ij(x): it fixes e_s for s != i
/// and [f(e_i)] is e_i in place i, x in place j and 0 elsewhere.
template <class Model>
bool is_lattice_transvection(const Model &model,
                             const typename Model::Element &g, std::size_t i,
                             std::size_t j, const Subspace &x, const Frame &f) {
  for (std::size_t s = 0; s < f.n(); ++s)
    if (s != i && model.act(g, f.e(s)) != f.e(s))
      return false;
  const SupportVector sv = support(model.act(g, f.e(i)), f);
  for (std::size_t k = 0; k < f.n(); ++k) {
    const Subspace want = k == i ? f.e(i) : k == j ? x : f.bottom();
    if (sv.components[k] != want)
      return false;
  }
  return true;
}

/// Rank 2: sigma_ij Full iff F meets H_ji(e_i), the lattice transvections
/// that fix e_i and push e_j off the frame (t_ij in matrix terms).
inline AssociatedNet associated_dnet(GroupHandle<AtomModel> &fh,
                                     const Frame &f) {
  fh.materialize();
  const AtomModel &model = fh.model();
  Pattern p = DNet::identity(f.n()).pattern();
  for (const auto &g : fh.element_view())
    for (std::size_t i = 0; i < f.n(); ++i)
      for (std::size_t j = 0; j < f.n(); ++j)
        if (i != j && !p.at(i, j) &&
            is_lattice_transvection(model, g, j, i, f.e(i), f))
          p.set(i, j);
  return finish_associated(p);
}

/// The support-based pattern: sigma_ij Full iff some g in F has
/// [g(e_j)]_i != 0. Kept as an experiment next to associated_dnet.
template <class Model>
Pattern support_pattern(const GroupHandle<Model> &fh, const Frame &f) {
  const Model &model = fh.model();
  Pattern p = DNet::identity(f.n()).pattern();
  for (const auto &g : fh.element_view())
    for (std::size_t j = 0; j < f.n(); ++j) {
      const SupportVector sv = support(model.act(g, f.e(j)), f);
      for (std::size_t i = 0; i < f.n(); ++i)
        if (!sv.components[i].is_zero())
          p.set(i, j);
    }
  return p;
}

} // namespace netlat

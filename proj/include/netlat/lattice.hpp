#pragma once

// The subspace lattice L of F_q^{nm} with its Boolean frame L0.

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "netlat/error.hpp"
#include "netlat/field.hpp"
#include "netlat/linalg.hpp"

namespace netlat {

/// The coordinate blocks e_1..e_n (each of dimension m) of F_q^{nm}.
class Frame {
public:
  Frame(Field field, std::size_t n, std::size_t m)
      : field_(std::move(field)), n_(n), m_(m) {
    if (n < 2)
      throw ConfigError("a frame needs at least two blocks");
    if (m < 1)
      throw ConfigError("block size must be at least 1");
    if (n * m > kMaxAmbient)
      throw CapExceeded("ambient dimension " + std::to_string(n * m),
                        kMaxAmbient);
    for (std::size_t i = 0; i < n; ++i)
      e_.push_back(block_sum(std::uint32_t{1} << i));
    for (std::size_t i = 0; i < n; ++i)
      others_.push_back(block_sum(((std::uint32_t{1} << n) - 1) &
                                  ~(std::uint32_t{1} << i)));
  }

  const Field &field() const { return field_; }
  std::size_t n() const { return n_; }
  std::size_t m() const { return m_; }
  std::size_t ambient() const { return n_ * m_; }

  const Subspace &e(std::size_t i) const { return e_.at(i); }
  const std::vector<Subspace> &blocks() const { return e_; }
  /// Sum of all blocks except block i.
  const Subspace &others(std::size_t i) const { return others_.at(i); }

  Subspace top() const { return Subspace::full(ambient()); }
  Subspace bottom() const { return Subspace::zero(ambient()); }

  /// The coordinate subspace e_S for S given as a bit mask over blocks.
  Subspace block_sum(std::uint32_t mask) const {
    const std::size_t d = ambient();
    std::vector<FieldElem> rows;
    for (std::size_t i = 0; i < n_; ++i) {
      if (!(mask >> i & 1u))
        continue;
      for (std::size_t c = 0; c < m_; ++c) {
        std::vector<FieldElem> r(d);
        r[i * m_ + c] = FieldElem(1);
        rows.insert(rows.end(), r.begin(), r.end());
      }
    }
    if (rows.empty())
      return Subspace::zero(d);
    return canonical_subspace(field_, d, rows);
  }

  /// The Boolean sublattice L0, indexed by block mask.
  std::vector<Subspace> boolean_sublattice() const {
    std::vector<Subspace> out;
    for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << n_); ++mask)
      out.push_back(block_sum(mask));
    return out;
  }

private:
  Field field_;
  std::size_t n_;
  std::size_t m_;
  std::vector<Subspace> e_;
  std::vector<Subspace> others_;
};

inline Frame make_frame(const Field &field, std::size_t n, std::size_t m) {
  return Frame(field, n, m);
}

/// [x] = ([x]_1, ..., [x]_n) with [x]_i <= e_i.
struct SupportVector {
  std::vector<Subspace> components;

  friend bool operator==(const SupportVector &,
                         const SupportVector &) = default;
};

/// [x]_i = (x + sum_{j != i} e_j) meet e_i.
inline SupportVector support(const Subspace &x, const Frame &f) {
  if (x.ambient() != f.ambient())
    throw AmbientMismatch(x.ambient(), f.ambient());
  SupportVector s;
  for (std::size_t i = 0; i < f.n(); ++i)
    s.components.push_back(intersect_subspaces(
        f.field(), sum_subspaces(f.field(), x, f.others(i)), f.e(i)));
  return s;
}

/// The componentwise-least collection (x_1..x_n), x_i <= e_i, whose sum
/// contains x, found by exhaustive search over all subspaces of each block.
inline SupportVector support_bruteforce(const Subspace &x, const Frame &f,
                                        std::uint64_t cap = 1u << 20) {
  const Field &fld = f.field();
  const std::size_t d = f.ambient();
  const std::size_t m = f.m();
  const auto local = enumerate_subspaces(fld, m);

  std::vector<std::vector<Subspace>> per_block(f.n());
  for (std::size_t i = 0; i < f.n(); ++i)
    for (const auto &s : local) {
      std::vector<FieldElem> rows;
      for (std::size_t r = 0; r < s.dim(); ++r) {
        std::vector<FieldElem> row(d);
        for (std::size_t c = 0; c < m; ++c)
          row[i * m + c] = s.row(r)[c];
        rows.insert(rows.end(), row.begin(), row.end());
      }
      per_block[i].push_back(rows.empty() ? Subspace::zero(d)
                                          : canonical_subspace(fld, d, rows));
    }

  std::uint64_t tuples = 1;
  for (std::size_t i = 0; i < f.n(); ++i) {
    tuples *= local.size();
    if (tuples > cap)
      throw CapExceeded("support search space", cap);
  }

  std::vector<std::vector<Subspace>> valid;
  std::vector<std::size_t> idx(f.n(), 0);
  while (true) {
    Subspace total = Subspace::zero(d);
    std::vector<Subspace> cand;
    for (std::size_t i = 0; i < f.n(); ++i) {
      cand.push_back(per_block[i][idx[i]]);
      total = sum_subspaces(fld, total, cand.back());
    }
    if (contains(fld, total, x))
      valid.push_back(std::move(cand));
    std::size_t i = 0;
    while (i < f.n() && ++idx[i] == local.size())
      idx[i++] = 0;
    if (i == f.n())
      break;
  }

  auto leq = [&](const std::vector<Subspace> &a,
                 const std::vector<Subspace> &b) {
    for (std::size_t i = 0; i < a.size(); ++i)
      if (!contains(fld, b[i], a[i]))
        return false;
    return true;
  };
  for (const auto &c : valid) {
    bool least = true;
    for (const auto &other : valid)
      if (!leq(c, other)) {
        least = false;
        break;
      }
    if (least)
      return SupportVector{c};
  }
  throw Error("no least covering collection exists for " + x.to_string());
}

/// Closure of `gens` under pairwise meet and join, in canonical order.
inline std::vector<Subspace>
generated_sublattice(const Field &f, const std::vector<Subspace> &gens,
                     std::uint64_t cap = 1u << 16) {
  if (gens.empty())
    throw Error("generated_sublattice needs at least one generator");
  std::set<Subspace> seen;
  std::vector<Subspace> elems;
  std::vector<Subspace> work;
  for (const auto &g : gens)
    if (seen.insert(g).second) {
      elems.push_back(g);
      work.push_back(g);
    }
  while (!work.empty()) {
    Subspace x = work.back();
    work.pop_back();
    const std::size_t count = elems.size();
    for (std::size_t i = 0; i < count; ++i) {
      for (const Subspace &y : {sum_subspaces(f, x, elems[i]),
                                intersect_subspaces(f, x, elems[i])}) {
        if (seen.insert(y).second) {
          if (seen.size() > cap)
            throw CapExceeded("generated sublattice", cap);
          elems.push_back(y);
          work.push_back(y);
        }
      }
    }
  }
  return {seen.begin(), seen.end()};
}

/// Elements of `universe` fixed by every generator. Fixing under the
/// generators implies fixing under the group they generate.
template <class Model>
std::vector<Subspace>
fixed_lattice(const Model &model,
              const std::vector<typename Model::Element> &gens,
              const std::vector<Subspace> &universe) {
  std::vector<Subspace> out;
  for (const auto &x : universe) {
    bool fixed = true;
    for (const auto &g : gens)
      if (model.act(g, x) != x) {
        fixed = false;
        break;
      }
    if (fixed)
      out.push_back(x);
  }
  return out;
}

} // namespace netlat

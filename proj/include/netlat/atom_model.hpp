#pragma once

// Permutation models.
//
// AtomModel: the automorphism group of a rank-2 subspace lattice (F_q^2),
// which is the full symmetric group on its q + 1 atoms.
// PermModel: arbitrary permutations of the element indices of a finite
// lattice, used for table-driven instances.

#include <algorithm>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "netlat/error.hpp"
#include "netlat/field.hpp"
#include "netlat/linalg.hpp"
#include "netlat/perm.hpp"

namespace netlat {

/// Lexicographic rank of a permutation among all permutations of its degree.
inline std::uint64_t lehmer_rank(const Perm &p) {
  const std::size_t n = p.degree();
  std::uint64_t r = 0;
  std::uint32_t used = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint32_t x = p(i);
    const auto smaller =
        static_cast<std::uint64_t>(x - __builtin_popcount(used & ((1u << x) - 1)));
    r = r * (n - i) + smaller;
    used |= 1u << x;
  }
  return r;
}

inline Perm lehmer_unrank(std::uint64_t r, std::size_t n) {
  std::vector<std::uint64_t> digits(n);
  for (std::size_t i = n; i-- > 0;) {
    digits[i] = r % (n - i);
    r /= (n - i);
  }
  std::vector<std::uint16_t> pool(n), img(n);
  for (std::size_t i = 0; i < n; ++i)
    pool[i] = static_cast<std::uint16_t>(i);
  for (std::size_t i = 0; i < n; ++i) {
    img[i] = pool[digits[i]];
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(digits[i]));
  }
  return Perm(std::move(img));
}

class AtomModel {
public:
  using Element = Perm;
  using Key = std::uint64_t;
  static constexpr std::size_t kMaxAtoms = 20;

  explicit AtomModel(Field f)
      : f_(std::move(f)),
        atoms_(std::make_shared<const std::vector<Subspace>>(
            enumerate_subspaces(f_, 2, 1))) {
    if (atoms_->size() > kMaxAtoms)
      throw CapExceeded("atom count " + std::to_string(atoms_->size()),
                        kMaxAtoms);
    key_space_ = 1;
    for (std::size_t i = 2; i <= atoms_->size(); ++i)
      key_space_ *= i;
  }

  const Field &field() const { return f_; }
  const std::vector<Subspace> &atoms() const { return *atoms_; }
  std::size_t degree() const { return atoms_->size(); }
  std::uint64_t key_space() const { return key_space_; }

  std::size_t index_of(const Subspace &atom) const {
    auto it = std::lower_bound(atoms_->begin(), atoms_->end(), atom);
    if (it == atoms_->end() || *it != atom)
      throw Error("not an atom of the rank-2 lattice: " + atom.to_string());
    return static_cast<std::size_t>(it - atoms_->begin());
  }

  Element identity() const { return Perm::identity(degree()); }
  Element compose(const Element &a, const Element &b) const { return a * b; }
  Element inverse(const Element &a) const { return a.inverse(); }
  Key key(const Element &a) const { return lehmer_rank(a); }
  Element decode(Key k) const { return lehmer_unrank(k, degree()); }

  Subspace act(const Element &g, const Subspace &x) const {
    if (x.ambient() != 2)
      throw AmbientMismatch(x.ambient(), 2);
    if (x.is_zero() || x.is_full())
      return x;
    return (*atoms_)[g(index_of(x))];
  }

  /// Generators of the symmetric group on `points` (empty if fewer than 2).
  std::vector<Element> symmetric_on(const std::vector<std::uint16_t> &points) const {
    std::vector<Element> gens;
    if (points.size() < 2)
      return gens;
    gens.push_back(Perm::cycle(degree(), {points[0], points[1]}));
    if (points.size() > 2)
      gens.push_back(Perm::cycle(degree(), points));
    return gens;
  }

  /// Generators of the pointwise stabilizer of `fixed` atoms.
  std::vector<Element> stabilizer_of(const std::vector<Subspace> &fixed) const {
    std::vector<bool> keep(degree(), false);
    for (const auto &s : fixed)
      if (s.dim() == 1)
        keep[index_of(s)] = true;
    std::vector<std::uint16_t> moving;
    for (std::size_t i = 0; i < degree(); ++i)
      if (!keep[i])
        moving.push_back(static_cast<std::uint16_t>(i));
    return symmetric_on(moving);
  }

  std::string describe(const Element &e) const { return e.to_string(); }

private:
  Field f_;
  std::shared_ptr<const std::vector<Subspace>> atoms_;
  std::uint64_t key_space_ = 1;
};

/// Permutations of {0..degree-1}, keyed by their image bytes.
class PermModel {
public:
  using Element = Perm;
  using Key = std::string;

  explicit PermModel(std::size_t degree) : degree_(degree) {}

  std::size_t degree() const { return degree_; }
  std::uint64_t key_space() const { return 0; }
  Element identity() const { return Perm::identity(degree_); }
  Element compose(const Element &a, const Element &b) const { return a * b; }
  Element inverse(const Element &a) const { return a.inverse(); }
  Key key(const Element &a) const { return a.key(); }
  Element decode(const Key &k) const { return Perm::from_key(k); }
  std::string describe(const Element &e) const { return e.to_string(); }

private:
  std::size_t degree_;
};

} // namespace netlat

#pragma once

// Finite lattices given by explicit meet and join tables.
//
// Text format (whitespace separated, '#' starts a comment):
//
//   elements  <name_0> <name_1> ... <name_{N-1}>
//   meet      <N rows of N names: row a, column b holds a meet b>
//   join      <N rows of N names>
//   frame     <names of the frame atoms e_1 .. e_n>      (optional)
//
// Loading rejects tables that fail the lattice axioms or modularity.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "netlat/error.hpp"
#include "netlat/linalg.hpp"
#include "netlat/perm.hpp"

namespace netlat {

class FiniteLattice {
public:
  using Index = std::uint16_t;

  FiniteLattice() = default;

  /// Validates the axioms; modularity is required unless `require_modular`
  /// is false.
  static FiniteLattice from_tables(std::vector<std::string> names,
                                   std::vector<Index> meet,
                                   std::vector<Index> join,
                                   bool require_modular = true) {
    FiniteLattice l;
    l.n_ = names.size();
    if (l.n_ == 0 || l.n_ > 4096)
      throw LatticeError("lattice must have between 1 and 4096 elements");
    if (meet.size() != l.n_ * l.n_ || join.size() != l.n_ * l.n_)
      throw LatticeError("meet/join tables must be N x N");
    l.names_ = std::move(names);
    l.meet_ = std::move(meet);
    l.join_ = std::move(join);
    for (auto v : l.meet_)
      if (v >= l.n_)
        throw LatticeError("meet table entry out of range");
    for (auto v : l.join_)
      if (v >= l.n_)
        throw LatticeError("join table entry out of range");
    l.validate_axioms();
    if (require_modular) {
      if (auto w = l.modularity_violation())
        throw LatticeError("not modular: " + *w);
    }
    l.finish();
    return l;
  }

  /// The lattice of the given subspaces (must be closed under + and meet).
  static FiniteLattice from_subspaces(const Field &f,
                                      const std::vector<Subspace> &universe) {
    std::vector<Subspace> sorted = universe;
    std::sort(sorted.begin(), sorted.end());
    if (sorted.size() > 4096)
      throw CapExceeded("lattice size", 4096);
    auto index = [&](const Subspace &s) -> Index {
      auto it = std::lower_bound(sorted.begin(), sorted.end(), s);
      if (it == sorted.end() || *it != s)
        throw LatticeError("subspace universe is not closed under meet/join");
      return static_cast<Index>(it - sorted.begin());
    };
    const std::size_t n = sorted.size();
    std::vector<Index> meet(n * n), join(n * n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a; b < n; ++b) {
        meet[a * n + b] = meet[b * n + a] =
            index(intersect_subspaces(f, sorted[a], sorted[b]));
        join[a * n + b] = join[b * n + a] =
            index(sum_subspaces(f, sorted[a], sorted[b]));
      }
    std::vector<std::string> names;
    for (const auto &s : sorted)
      names.push_back(s.to_string());
    // Subspace lattices are modular; skip the cubic check on large inputs.
    FiniteLattice l = from_tables(std::move(names), std::move(meet),
                                  std::move(join), n <= 256);
    l.subspaces_ = std::move(sorted);
    return l;
  }

  static FiniteLattice parse(std::istream &in) {
    std::vector<std::string> tokens;
    std::string line;
    while (std::getline(in, line)) {
      if (auto pos = line.find('#'); pos != std::string::npos)
        line.erase(pos);
      std::istringstream ls(line);
      std::string tok;
      while (ls >> tok)
        tokens.push_back(tok);
    }
    std::map<std::string, std::vector<std::string>> sections;
    std::string current;
    for (const auto &t : tokens) {
      if (t == "elements" || t == "meet" || t == "join" || t == "frame") {
        if (sections.count(t))
          throw LatticeError("duplicate section '" + t + "'");
        current = t;
        sections[t];
        continue;
      }
      if (current.empty())
        throw LatticeError("token '" + t + "' before any section keyword");
      sections[current].push_back(t);
    }
    for (const char *need : {"elements", "meet", "join"})
      if (!sections.count(need))
        throw LatticeError(std::string("missing section '") + need + "'");

    const auto &names = sections["elements"];
    std::map<std::string, Index> idx;
    for (std::size_t i = 0; i < names.size(); ++i)
      if (!idx.emplace(names[i], static_cast<Index>(i)).second)
        throw LatticeError("duplicate element name '" + names[i] + "'");
    auto table = [&](const std::string &which) {
      const auto &raw = sections[which];
      if (raw.size() != names.size() * names.size())
        throw LatticeError(which + " table has " + std::to_string(raw.size()) +
                           " entries, expected " +
                           std::to_string(names.size() * names.size()));
      std::vector<Index> t;
      for (const auto &s : raw) {
        auto it = idx.find(s);
        if (it == idx.end())
          throw LatticeError("unknown element '" + s + "' in " + which);
        t.push_back(it->second);
      }
      return t;
    };
    FiniteLattice l = from_tables(names, table("meet"), table("join"));
    if (sections.count("frame")) {
      for (const auto &s : sections["frame"]) {
        auto it = idx.find(s);
        if (it == idx.end())
          throw LatticeError("unknown frame element '" + s + "'");
        l.frame_.push_back(it->second);
      }
    }
    return l;
  }

  static FiniteLattice parse_text(const std::string &text) {
    std::istringstream in(text);
    return parse(in);
  }

  static FiniteLattice load(const std::string &path) {
    std::ifstream in(path);
    if (!in)
      throw LatticeError("cannot open lattice file '" + path + "'");
    return parse(in);
  }

  std::size_t size() const { return n_; }
  Index meet(Index a, Index b) const { return meet_[a * n_ + b]; }
  Index join(Index a, Index b) const { return join_[a * n_ + b]; }
  bool leq(Index a, Index b) const { return meet(a, b) == a; }
  Index bottom() const { return bottom_; }
  Index top() const { return top_; }
  std::size_t height(Index a) const { return height_[a]; }
  std::size_t length() const { return height_[top_]; }
  const std::string &name(Index a) const { return names_[a]; }
  const std::vector<Index> &atoms() const { return atoms_; }
  bool is_atom(Index a) const { return height_[a] == 1; }

  Index index_of(const std::string &name) const {
    for (std::size_t i = 0; i < n_; ++i)
      if (names_[i] == name)
        return static_cast<Index>(i);
    throw LatticeError("no element named '" + name + "'");
  }

  /// Frame atoms declared by a fixture (empty when none given).
  const std::vector<Index> &frame() const { return frame_; }
  void set_frame(std::vector<Index> frame) { frame_ = std::move(frame); }

  /// Subspaces behind the indices, when built by from_subspaces.
  const std::vector<Subspace> &subspaces() const { return subspaces_; }
  Index index_of(const Subspace &s) const {
    auto it = std::lower_bound(subspaces_.begin(), subspaces_.end(), s);
    if (it == subspaces_.end() || *it != s)
      throw LatticeError("subspace not in this lattice");
    return static_cast<Index>(it - subspaces_.begin());
  }

  /// Every element is the join of the atoms below it.
  bool is_atomistic() const {
    for (std::size_t x = 0; x < n_; ++x) {
      Index j = bottom_;
      for (auto a : atoms_)
        if (leq(a, static_cast<Index>(x)))
          j = join(j, a);
      if (j != x)
        return false;
    }
    return true;
  }

  /// A human-readable description of a failing triple, if any.
  std::optional<std::string> modularity_violation() const {
    for (std::size_t a = 0; a < n_; ++a)
      for (std::size_t c = 0; c < n_; ++c) {
        if (meet_[a * n_ + c] != a)
          continue; // need a <= c
        for (std::size_t b = 0; b < n_; ++b) {
          Index lhs = join_[a * n_ + meet_[b * n_ + c]];
          Index rhs = meet_[join_[a * n_ + b] * n_ + c];
          if (lhs != rhs)
            return names_[a] + " <= " + names_[c] + ", b = " + names_[b];
        }
      }
    return std::nullopt;
  }

private:
  void validate_axioms() const {
    auto fail = [&](const std::string &what, std::size_t a, std::size_t b,
                    std::size_t c = SIZE_MAX) {
      std::string s = what + " fails at (" + names_[a] + ", " + names_[b];
      if (c != SIZE_MAX)
        s += ", " + names_[c];
      throw LatticeError(s + ")");
    };
    for (std::size_t a = 0; a < n_; ++a) {
      if (meet_[a * n_ + a] != a || join_[a * n_ + a] != a)
        fail("idempotence", a, a);
      for (std::size_t b = 0; b < n_; ++b) {
        if (meet_[a * n_ + b] != meet_[b * n_ + a] ||
            join_[a * n_ + b] != join_[b * n_ + a])
          fail("commutativity", a, b);
        if (join_[a * n_ + meet_[a * n_ + b]] != a ||
            meet_[a * n_ + join_[a * n_ + b]] != a)
          fail("absorption", a, b);
      }
    }
    if (n_ <= 256) {
      for (std::size_t a = 0; a < n_; ++a)
        for (std::size_t b = 0; b < n_; ++b)
          for (std::size_t c = 0; c < n_; ++c) {
            if (meet_[meet_[a * n_ + b] * n_ + c] !=
                meet_[a * n_ + meet_[b * n_ + c]])
              fail("meet associativity", a, b, c);
            if (join_[join_[a * n_ + b] * n_ + c] !=
                join_[a * n_ + join_[b * n_ + c]])
              fail("join associativity", a, b, c);
          }
    }
  }

  void finish() {
    Index bot = 0, top = 0;
    for (std::size_t a = 0; a < n_; ++a) {
      bot = meet(bot, static_cast<Index>(a));
      top = join(top, static_cast<Index>(a));
    }
    bottom_ = bot;
    top_ = top;

    // heights along the order, processed by increasing down-set size
    std::vector<std::size_t> below(n_, 0);
    for (std::size_t a = 0; a < n_; ++a)
      for (std::size_t b = 0; b < n_; ++b)
        if (leq(static_cast<Index>(b), static_cast<Index>(a)))
          ++below[a];
    std::vector<Index> order(n_);
    for (std::size_t i = 0; i < n_; ++i)
      order[i] = static_cast<Index>(i);
    std::stable_sort(order.begin(), order.end(),
                     [&](Index x, Index y) { return below[x] < below[y]; });
    height_.assign(n_, 0);
    for (auto a : order)
      for (std::size_t b = 0; b < n_; ++b)
        if (b != a && leq(static_cast<Index>(b), a))
          height_[a] = std::max(height_[a], height_[b] + 1);
    atoms_.clear();
    for (std::size_t a = 0; a < n_; ++a)
      if (height_[a] == 1)
        atoms_.push_back(static_cast<Index>(a));
  }

  std::size_t n_ = 0;
  std::vector<std::string> names_;
  std::vector<Index> meet_, join_;
  Index bottom_ = 0, top_ = 0;
  std::vector<std::size_t> height_;
  std::vector<Index> atoms_;
  std::vector<Index> frame_;
  std::vector<Subspace> subspaces_;
};

namespace detail {

inline bool preserves_tables(const FiniteLattice &l,
                             const std::vector<FiniteLattice::Index> &img) {
  const std::size_t n = l.size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      auto x = static_cast<FiniteLattice::Index>(a);
      auto y = static_cast<FiniteLattice::Index>(b);
      if (img[l.meet(x, y)] != l.meet(img[x], img[y]) ||
          img[l.join(x, y)] != l.join(img[x], img[y]))
        return false;
    }
  return true;
}

} // namespace detail

/// All automorphisms of a finite lattice, as permutations of its element
/// indices in lexicographic order of their image lists. Atomistic lattices
/// are searched over atom images, pruning on "c <= a v b" for mapped atom
/// triples; other lattices by a direct search over height-preserving
/// assignments (small lattices only). Every candidate is verified against
/// the full meet and join tables.
inline std::vector<Perm> lattice_automorphisms(const FiniteLattice &l,
                                               std::uint64_t cap = 1u << 22) {
  using Index = FiniteLattice::Index;
  const std::size_t n = l.size();
  std::vector<Perm> out;
  auto emit = [&](std::vector<Index> img) {
    if (out.size() >= cap)
      throw CapExceeded("automorphism count", cap);
    out.emplace_back(std::move(img));
  };

  if (l.is_atomistic()) {
    const auto &atoms = l.atoms();
    const std::size_t na = atoms.size();
    if (na > 64)
      throw CapExceeded("atom count " + std::to_string(na), 64);
    std::vector<Index> image(na);
    std::vector<bool> used(na, false);
    std::vector<std::size_t> atom_pos(n, SIZE_MAX);
    for (std::size_t i = 0; i < na; ++i)
      atom_pos[atoms[i]] = i;

    auto consistent = [&](std::size_t k) {
      const Index c = atoms[k], fc = image[k];
      for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = a + 1; b < k; ++b) {
          bool before = l.leq(c, l.join(atoms[a], atoms[b]));
          bool after = l.leq(fc, l.join(image[a], image[b]));
          if (before != after)
            return false;
        }
      return true;
    };

    auto extend = [&]() {
      std::vector<Index> img(n);
      std::vector<bool> hit(n, false);
      for (std::size_t x = 0; x < n; ++x) {
        Index j = l.bottom();
        for (std::size_t i = 0; i < na; ++i)
          if (l.leq(atoms[i], static_cast<Index>(x)))
            j = l.join(j, image[i]);
        if (hit[j])
          return;
        hit[j] = true;
        img[x] = j;
      }
      if (detail::preserves_tables(l, img))
        emit(std::move(img));
    };

    auto rec = [&](auto &&self, std::size_t k) -> void {
      if (k == na) {
        extend();
        return;
      }
      for (std::size_t t = 0; t < na; ++t) {
        if (used[t])
          continue;
        image[k] = atoms[t];
        if (!consistent(k))
          continue;
        used[t] = true;
        self(self, k + 1);
        used[t] = false;
      }
    };
    rec(rec, 0);
  } else {
    if (n > 16)
      throw CapExceeded("non-atomistic lattice size " + std::to_string(n), 16);
    std::vector<Index> order(n);
    for (std::size_t i = 0; i < n; ++i)
      order[i] = static_cast<Index>(i);
    std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
      return l.height(a) < l.height(b);
    });
    std::vector<Index> img(n);
    std::vector<bool> assigned(n, false), used(n, false);
    auto ok = [&](Index x) {
      for (std::size_t y = 0; y < n; ++y) {
        if (!assigned[y])
          continue;
        auto yy = static_cast<Index>(y);
        Index mx = l.meet(x, yy), jx = l.join(x, yy);
        if (assigned[mx] && img[mx] != l.meet(img[x], img[y]))
          return false;
        if (assigned[jx] && img[jx] != l.join(img[x], img[y]))
          return false;
        if (l.leq(x, yy) != l.leq(img[x], img[y]))
          return false;
      }
      return true;
    };
    auto rec = [&](auto &&self, std::size_t k) -> void {
      if (k == n) {
        if (detail::preserves_tables(l, img))
          emit(img);
        return;
      }
      const Index x = order[k];
      for (std::size_t t = 0; t < n; ++t) {
        if (used[t] || l.height(static_cast<Index>(t)) != l.height(x))
          continue;
        img[x] = static_cast<Index>(t);
        assigned[x] = true;
        if (ok(x)) {
          used[t] = true;
          self(self, k + 1);
          used[t] = false;
        }
        assigned[x] = false;
      }
    };
    rec(rec, 0);
  }
  std::sort(out.begin(), out.end());
  return out;
}

} // namespace netlat

#pragma once

// Generic finite-group engine over a "model" that supplies the element
// type, composition, inverses and a canonical key per element.
//
// A model M provides:
//   using Element; using Key;
//   Element identity() const;
//   Element compose(const Element&, const Element&) const;  // a after b
//   Element inverse(const Element&) const;
//   Key key(const Element&) const;          // canonical, injective
//   Element decode(const Key&) const;
//   std::uint64_t key_space() const;        // number of possible keys, 0 if unknown

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <ranges>
#include <unordered_set>
#include <vector>

#include "netlat/error.hpp"

namespace netlat {

template <class M>
concept GroupModel = requires(const M &m, const typename M::Element &a,
                              const typename M::Key &k) {
  { m.identity() } -> std::convertible_to<typename M::Element>;
  { m.compose(a, a) } -> std::convertible_to<typename M::Element>;
  { m.inverse(a) } -> std::convertible_to<typename M::Element>;
  { m.key(a) } -> std::convertible_to<typename M::Key>;
  { m.decode(k) } -> std::convertible_to<typename M::Element>;
  { m.key_space() } -> std::convertible_to<std::uint64_t>;
};

inline constexpr std::uint64_t kDefaultClosureBudget = 20'000'000;

/// Set of keys. Generic keys use a hash set.
template <class Key> class KeySet {
public:
  explicit KeySet(std::uint64_t /*key_space*/ = 0) {}
  bool insert(const Key &k) { return s_.insert(k).second; }
  bool contains(const Key &k) const { return s_.count(k) != 0; }
  std::size_t size() const { return s_.size(); }

private:
  std::unordered_set<Key> s_;
};

/// 64-bit keys: a dense bitset when the key space is small enough,
/// otherwise open addressing with linear probing.
template <> class KeySet<std::uint64_t> {
public:
  static constexpr std::uint64_t kDenseLimit = std::uint64_t{1} << 30;

  explicit KeySet(std::uint64_t key_space = 0) {
    if (key_space != 0 && key_space <= kDenseLimit) {
      dense_ = true;
      bits_.assign((key_space + 63) / 64, 0);
    } else {
      slots_.assign(1024, kEmpty);
    }
  }

  bool insert(std::uint64_t k) {
    if (dense_) {
      std::uint64_t &w = bits_[k >> 6];
      const std::uint64_t bit = std::uint64_t{1} << (k & 63);
      if (w & bit)
        return false;
      w |= bit;
      ++size_;
      return true;
    }
    if ((size_ + 1) * 2 > slots_.size())
      grow();
    return place(k);
  }

  bool contains(std::uint64_t k) const {
    if (dense_)
      return k < bits_.size() * 64 && (bits_[k >> 6] >> (k & 63) & 1);
    const std::size_t mask = slots_.size() - 1;
    for (std::size_t i = mix(k) & mask;; i = (i + 1) & mask) {
      if (slots_[i] == k)
        return true;
      if (slots_[i] == kEmpty)
        return false;
    }
  }

  std::size_t size() const { return size_; }

private:
  static constexpr std::uint64_t kEmpty = ~std::uint64_t{0};

  static std::size_t mix(std::uint64_t k) {
    k ^= k >> 33;
    k *= 0xff51afd7ed558ccdULL;
    k ^= k >> 33;
    return static_cast<std::size_t>(k);
  }

  bool place(std::uint64_t k) {
    const std::size_t mask = slots_.size() - 1;
    for (std::size_t i = mix(k) & mask;; i = (i + 1) & mask) {
      if (slots_[i] == k)
        return false;
      if (slots_[i] == kEmpty) {
        slots_[i] = k;
        ++size_;
        return true;
      }
    }
  }

  void grow() {
    std::vector<std::uint64_t> old = std::move(slots_);
    slots_.assign(old.size() * 2, kEmpty);
    size_ = 0;
    for (auto k : old)
      if (k != kEmpty)
        place(k);
  }

  bool dense_ = false;
  std::vector<std::uint64_t> bits_;
  std::vector<std::uint64_t> slots_;
  std::size_t size_ = 0;
};

/// A materialized group: its keys in canonical (sorted) order plus a
/// membership index.
template <GroupModel Model> class ElementSet {
public:
  using Key = typename Model::Key;

  ElementSet(std::vector<Key> keys, KeySet<Key> index)
      : keys_(std::move(keys)), index_(std::move(index)) {
    std::sort(keys_.begin(), keys_.end());
  }

  std::size_t size() const { return keys_.size(); }
  const std::vector<Key> &keys() const { return keys_; }
  bool contains_key(const Key &k) const { return index_.contains(k); }

private:
  std::vector<Key> keys_;
  KeySet<Key> index_;
};

/// Breadth-first closure of `gens` under right multiplication. Throws
/// BudgetExceeded as soon as the element count passes `budget`.
template <GroupModel Model>
ElementSet<Model> closure(const Model &model,
                          const std::vector<typename Model::Element> &gens,
                          std::uint64_t budget = kDefaultClosureBudget) {
  using Key = typename Model::Key;
  if (budget == 0)
    throw ConfigError("closure budget must be positive");
  KeySet<Key> seen(model.key_space());
  std::vector<Key> list;
  const Key id = model.key(model.identity());
  seen.insert(id);
  list.push_back(id);
  for (std::size_t head = 0; head < list.size(); ++head) {
    const auto x = model.decode(list[head]);
    for (const auto &s : gens) {
      Key k = model.key(model.compose(x, s));
      if (seen.insert(k)) {
        if (list.size() >= budget)
          throw BudgetExceeded(budget, list.size() + 1);
        list.push_back(std::move(k));
      }
    }
  }
  return ElementSet<Model>(std::move(list), std::move(seen));
}

/// A subgroup given by generators, optionally materialized.
template <GroupModel Model> class GroupHandle {
public:
  using Element = typename Model::Element;
  using Key = typename Model::Key;

  GroupHandle(Model model, std::vector<Element> gens,
              std::uint64_t budget = kDefaultClosureBudget)
      : model_(std::move(model)), gens_(std::move(gens)), budget_(budget) {}

  const Model &model() const { return model_; }
  const std::vector<Element> &generators() const { return gens_; }
  std::uint64_t budget() const { return budget_; }

  bool materialized() const { return elems_ != nullptr; }

  /// Computes the element set once; throws BudgetExceeded.
  const ElementSet<Model> &materialize() {
    if (!elems_)
      elems_ = std::make_shared<const ElementSet<Model>>(
          closure(model_, gens_, budget_));
    return *elems_;
  }

  const ElementSet<Model> &elements() const {
    if (!elems_)
      throw Error("group handle is not materialized");
    return *elems_;
  }

  std::optional<std::uint64_t> order() const {
    if (!elems_)
      return std::nullopt;
    return elems_->size();
  }

  /// Membership in the materialized set.
  bool contains(const Element &g) const {
    return elements().contains_key(model_.key(g));
  }

  /// Lazily decoded elements in canonical order.
  auto element_view() const {
    return elements().keys() |
           std::views::transform(
               [this](const Key &k) { return model_.decode(k); });
  }

  /// Same group extended by more generators (not materialized).
  GroupHandle extended(const std::vector<Element> &more) const {
    std::vector<Element> g = gens_;
    g.insert(g.end(), more.begin(), more.end());
    return GroupHandle(model_, std::move(g), budget_);
  }

  /// True iff both are materialized with identical element sets.
  bool same_elements(const GroupHandle &o) const {
    return elements().keys() == o.elements().keys();
  }

private:
  Model model_;
  std::vector<Element> gens_;
  std::uint64_t budget_;
  std::shared_ptr<const ElementSet<Model>> elems_;
};

/// g in <h.generators>; materializes h on demand.
template <GroupModel Model>
bool membership(const typename Model::Element &g, GroupHandle<Model> &h) {
  h.materialize();
  return h.contains(g);
}

/// Generators of a materialized set, chosen greedily in key order: an
/// element is kept when it is not yet in the group generated so far.
template <GroupModel Model>
std::vector<typename Model::Element>
reduce_generators(const Model &model,
                  const std::vector<typename Model::Element> &elements,
                  std::uint64_t budget = kDefaultClosureBudget) {
  std::vector<typename Model::Element> gens;
  std::optional<ElementSet<Model>> current;
  for (const auto &e : elements) {
    if (current && current->contains_key(model.key(e)))
      continue;
    if (!current && model.key(e) == model.key(model.identity()))
      continue;
    gens.push_back(e);
    current.emplace(closure(model, gens, budget));
  }
  return gens;
}

// ---------------------------------------------------------------------------
// Seeded sampling.

/// Uniform integer in [0, n) from a 64-bit engine by rejection; unlike
/// std::uniform_int_distribution its output is fixed by the standard
/// engine alone.
inline std::uint64_t uniform_below(std::mt19937_64 &rng, std::uint64_t n) {
  if (n == 0)
    return 0;
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % n;
}

/// A product of `length` uniformly chosen generators and their inverses.
template <GroupModel Model>
typename Model::Element
random_word(const Model &model,
            const std::vector<typename Model::Element> &gens,
            std::mt19937_64 &rng, std::size_t length = 64) {
  auto x = model.identity();
  if (gens.empty())
    return x;
  for (std::size_t i = 0; i < length; ++i) {
    const auto &g = gens[uniform_below(rng, gens.size())];
    x = model.compose(x, uniform_below(rng, 2) ? g : model.inverse(g));
  }
  return x;
}

/// H's generators plus `extra` seeded elements of G: uniform over the
/// materialized G when it fits the budget, otherwise random words in G's
/// generators.
template <GroupModel Model>
GroupHandle<Model> random_intermediate(const GroupHandle<Model> &h,
                                       GroupHandle<Model> &g,
                                       std::size_t extra, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<typename Model::Element> more;
  bool uniform = true;
  if (extra > 0) {
    try {
      g.materialize();
    } catch (const BudgetExceeded &) {
      uniform = false;
    }
  }
  for (std::size_t i = 0; i < extra; ++i) {
    if (uniform) {
      const auto &keys = g.elements().keys();
      more.push_back(g.model().decode(keys[uniform_below(rng, keys.size())]));
    } else {
      more.push_back(random_word(g.model(), g.generators(), rng));
    }
  }
  return h.extended(more);
}

// ---------------------------------------------------------------------------
// Census of intermediate subgroups.

/// All subgroups F with H <= F <= G, by the fixed point "adjoin one outside
/// element to a known subgroup and close". The adjoined element only
/// matters up to its double coset K g K, so one representative per double
/// coset is tried. Output is materialized, ordered by (order, keys).
template <GroupModel Model>
std::vector<GroupHandle<Model>>
intermediate_census(GroupHandle<Model> h, GroupHandle<Model> g) {
  using Key = typename Model::Key;
  const Model &model = g.model();
  g.materialize();
  h.materialize();
  for (const auto &x : h.generators())
    if (!g.contains(x))
      throw Error("census: H is not contained in G");

  std::vector<GroupHandle<Model>> known{h};
  for (std::size_t cur = 0; cur < known.size(); ++cur) {
    GroupHandle<Model> k = known[cur];
    KeySet<Key> done(model.key_space());
    for (const Key &key : g.elements().keys()) {
      if (k.elements().contains_key(key) || done.contains(key))
        continue;
      // mark the double coset K x K
      std::vector<Key> stack{key};
      done.insert(key);
      while (!stack.empty()) {
        const auto y = model.decode(stack.back());
        stack.pop_back();
        for (const auto &s : k.generators())
          for (const auto &z : {model.compose(s, y), model.compose(y, s)}) {
            Key zk = model.key(z);
            if (done.insert(zk))
              stack.push_back(std::move(zk));
          }
      }
      GroupHandle<Model> f = k.extended({model.decode(key)});
      f.materialize();
      bool fresh = true;
      for (const auto &other : known)
        if (other.order() == f.order() && other.same_elements(f)) {
          fresh = false;
          break;
        }
      if (fresh)
        known.push_back(std::move(f));
    }
  }
  std::sort(known.begin(), known.end(),
            [](const GroupHandle<Model> &a, const GroupHandle<Model> &b) {
              if (a.order() != b.order())
                return *a.order() < *b.order();
              return a.elements().keys() < b.elements().keys();
            });
  return known;
}

/// Number of elements x of materialized G with x F x^-1 = F.
template <GroupModel Model>
std::uint64_t normalizer_order(const GroupHandle<Model> &f,
                               const GroupHandle<Model> &g) {
  const Model &model = g.model();
  std::uint64_t count = 0;
  for (const auto &x : g.element_view()) {
    const auto xi = model.inverse(x);
    bool ok = true;
    for (const auto &s : f.generators())
      if (!f.contains(model.compose(model.compose(x, s), xi))) {
        ok = false;
        break;
      }
    count += ok;
  }
  return count;
}

} // namespace netlat

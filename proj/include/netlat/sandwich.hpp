#pragma once

// Theorem-level checks: sandwich classification and uniqueness of the net,
// the rank-2 census, the fixed lattice of H, the net-collection / D-net
// equivalence, the net-group oracle, and the sufficient conditions for
// normality of G(K_sigma) on an abstract modular lattice.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "netlat/atom_model.hpp"
#include "netlat/autgroup.hpp"
#include "netlat/dnet.hpp"
#include "netlat/finite_lattice.hpp"
#include "netlat/group.hpp"
#include "netlat/lattice.hpp"
#include "netlat/nets.hpp"
#include "netlat/parallel.hpp"
#include "netlat/semilinear.hpp"

namespace netlat {

enum class CheckStatus { pass, fail, budget_exceeded };

inline const char *to_string(CheckStatus s) {
  switch (s) {
  case CheckStatus::pass:
    return "pass";
  case CheckStatus::fail:
    return "fail";
  case CheckStatus::budget_exceeded:
    return "budget_exceeded";
  }
  return "?";
}

/// A concrete reason for a failed check.
struct Witness {
  std::string check;
  std::string detail;
  std::string element;     // human-readable group element, if any
  std::string element_key; // model key, if any
};

// ---------------------------------------------------------------------------
// Sandwich classification.

struct SandwichReport {
  std::size_t n = 0, m = 0;
  std::uint32_t q = 0;
  std::vector<std::string> f_generators;
  std::vector<std::string> f_generator_keys;
  std::optional<std::uint64_t> f_order;
  std::optional<Pattern> pattern; // associated pattern, transitive or not
  std::optional<DNet> net;
  bool lower_ok = false, upper_ok = false, unique_ok = false;
  CheckStatus status = CheckStatus::fail;
  std::vector<std::string> budget_notes;
  std::optional<Witness> witness;
};

/// D-nets other than sigma0 whose fan also contains F.
template <class Model>
std::vector<DNet> uniqueness_scan(const GroupHandle<Model> &fh,
                                  const DNet &sigma0, const Frame &f) {
  const Model &model = fh.model();
  std::vector<DNet> others;
  for (const auto &s : enumerate_dnets(f.n())) {
    if (s == sigma0)
      continue;
    const auto ng = make_net_group(model, f, s);
    bool lower = true;
    for (const auto &g : ng.gens)
      if (!fh.contains(g)) {
        lower = false;
        break;
      }
    if (!lower)
      continue;
    bool upper = true;
    for (const auto &x : fh.generators())
      if (!in_normalizer(model, x, ng)) {
        upper = false;
        break;
      }
    if (upper)
      others.push_back(s);
  }
  return others;
}

/// sigma = associated_dnet(F); G(K_sigma) <= F via membership of the
/// net-group generators; F <= N(sigma) via the F generators; no other
/// D-net sandwiches F.
template <class Model>
SandwichReport verify_sandwich(GroupHandle<Model> &fh, const Frame &f) {
  const Model &model = fh.model();
  SandwichReport r;
  r.n = f.n();
  r.m = f.m();
  r.q = f.field().q();
  for (const auto &g : fh.generators()) {
    r.f_generators.push_back(model.describe(g));
    r.f_generator_keys.push_back(key_to_string(model.key(g)));
  }
  try {
    fh.materialize();
  } catch (const BudgetExceeded &e) {
    r.status = CheckStatus::budget_exceeded;
    r.budget_notes.push_back(std::string("materializing F: ") + e.what());
    return r;
  }
  r.f_order = fh.order();

  const AssociatedNet an = associated_dnet(fh, f);
  r.pattern = an.pattern;
  if (!an.net) {
    r.witness = Witness{"net", "associated pattern " + an.pattern.to_string() +
                                   " is not transitive",
                        {}, {}};
    return r;
  }
  r.net = an.net;
  const auto ng = make_net_group(model, f, *an.net);

  r.lower_ok = true;
  for (const auto &g : ng.gens)
    if (!fh.contains(g)) {
      r.lower_ok = false;
      r.witness = Witness{"lower", "net-group generator outside F",
                          model.describe(g), key_to_string(model.key(g))};
      break;
    }
  r.upper_ok = true;
  for (const auto &x : fh.generators())
    if (!in_normalizer(model, x, ng)) {
      r.upper_ok = false;
      if (!r.witness)
        r.witness = Witness{"upper", "F generator outside the normalizer",
                            model.describe(x), key_to_string(model.key(x))};
      break;
    }
  const auto others = uniqueness_scan(fh, *an.net, f);
  r.unique_ok = others.empty();
  if (!r.unique_ok && !r.witness)
    r.witness = Witness{"unique", "F also lies in the fan of " +
                                      others.front().to_string(),
                        {}, {}};
  r.status = r.lower_ok && r.upper_ok && r.unique_ok ? CheckStatus::pass
                                                     : CheckStatus::fail;
  return r;
}

// ---------------------------------------------------------------------------
// Rank-2 census.

struct CensusMember {
  std::uint64_t order = 0;
  std::string label; // H, N_G H, G(M_1), G(M_2), G or "?"
  bool self_normalizing = false;
  std::vector<std::string> fans; // D-nets whose fan contains the member
  std::vector<std::string> generators;
};

struct CensusReport {
  std::uint32_t q = 0;
  std::vector<CensusMember> members;
  bool count_ok = false;       // exactly 5 members
  bool labels_ok = false;      // the 5 expected subgroups, once each
  bool self_normal_ok = false; // all but H self-normalizing
  bool fans_ok = false;        // every member in exactly one fan
  std::optional<bool> aut_crosscheck; // brute-force |Aut L| = (q+1)!
  std::optional<Witness> witness;

  bool all() const {
    return count_ok && labels_ok && self_normal_ok && fans_ok &&
           aut_crosscheck.value_or(true);
  }
};

inline bool census_contains_all(const GroupHandle<AtomModel> &f,
                                const std::vector<Perm> &gens) {
  for (const auto &g : gens)
    if (!f.contains(g))
      return false;
  return true;
}

/// Intermediate subgroups of H = G(e_1, e_2) in G = Sym(atoms), rank 2.
inline CensusReport n2_census(const Field &field,
                              std::uint64_t budget = kDefaultClosureBudget) {
  const AtomModel model(field);
  const Frame fr(field, 2, 1);
  CensusReport rep;
  rep.q = field.q();

  GroupHandle<AtomModel> h(model, standard_gens(model, fr, GenKind::diagonal),
                           budget);
  GroupHandle<AtomModel> g(model, standard_gens(model, fr, GenKind::full),
                           budget);
  g.materialize();
  h.materialize();
  const auto census = intermediate_census(h, g);

  // Reference subgroups by their generators.
  GroupHandle<AtomModel> m1(model, model.stabilizer_of({fr.e(0)}), budget);
  GroupHandle<AtomModel> m2(model, model.stabilizer_of({fr.e(1)}), budget);
  GroupHandle<AtomModel> nh(model, standard_gens(model, fr, GenKind::monomial),
                            budget);
  for (auto *x : {&m1, &m2, &nh})
    x->materialize();
  const std::vector<std::pair<std::string, const GroupHandle<AtomModel> *>>
      refs{{"H", &h}, {"N_G H", &nh}, {"G(M_1)", &m1}, {"G(M_2)", &m2},
           {"G", &g}};

  std::vector<NetGroup<AtomModel>> nets;
  for (const auto &s : enumerate_dnets(2))
    nets.push_back(make_net_group(model, fr, s));

  std::set<std::string> labels;
  rep.self_normal_ok = true;
  rep.fans_ok = true;
  for (const auto &f : census) {
    CensusMember cm;
    cm.order = *f.order();
    cm.label = "?";
    for (const auto &[name, ref] : refs)
      if (ref->order() == f.order() && ref->same_elements(f))
        cm.label = name;
    labels.insert(cm.label);
    cm.self_normalizing = normalizer_order(f, g) == cm.order;
    if (cm.label != "H" && !cm.self_normalizing) {
      rep.self_normal_ok = false;
      if (!rep.witness)
        rep.witness = Witness{"self_normalizing",
                              "census member " + cm.label + " of order " +
                                  std::to_string(cm.order),
                              {}, {}};
    }
    for (const auto &ng : nets) {
      if (!census_contains_all(f, ng.gens))
        continue;
      bool upper = true;
      for (const auto &x : f.generators())
        upper = upper && in_normalizer(model, x, ng);
      if (upper)
        cm.fans.push_back(ng.sigma.to_string());
    }
    if (cm.fans.size() != 1) {
      rep.fans_ok = false;
      if (!rep.witness)
        rep.witness = Witness{"fans",
                              "member " + cm.label + " lies in " +
                                  std::to_string(cm.fans.size()) + " fans",
                              {}, {}};
    }
    for (const auto &x : f.generators())
      cm.generators.push_back(model.describe(x));
    rep.members.push_back(std::move(cm));
  }
  rep.count_ok = census.size() == 5;
  rep.labels_ok = labels.size() == 5 && !labels.count("?");
  if (!rep.count_ok && !rep.witness)
    rep.witness = Witness{"count",
                          std::to_string(census.size()) + " subgroups found",
                          {}, {}};

  if (model.degree() <= 6) {
    const auto autos =
        brute_force_lattice_autos(field, enumerate_subspaces(field, 2));
    rep.aut_crosscheck = autos.size() == g.order();
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Fixed lattice of H, equivalence experiment, net-group oracle.

struct FixedFrameReport {
  std::size_t universe = 0;
  std::size_t fixed = 0;
  bool ok = false;
  std::optional<std::string> extra_element; // fixed but outside L0
};

inline FixedFrameReport fixed_frame_check(const Frame &f,
                                          std::uint64_t cap = kDefaultSubspaceCap) {
  const auto universe = enumerate_subspaces(f.field(), f.ambient(), std::nullopt, cap);
  std::vector<Subspace> fixed;
  if (f.ambient() == 2) {
    const AtomModel model(f.field());
    fixed = fixed_lattice(model, standard_gens(model, f, GenKind::diagonal),
                          universe);
  } else {
    const SemilinearModel model(f.field(), f.ambient());
    fixed = fixed_lattice(model, standard_gens(model, f, GenKind::diagonal),
                          universe);
  }
  FixedFrameReport r;
  r.universe = universe.size();
  r.fixed = fixed.size();
  auto l0 = f.boolean_sublattice();
  std::sort(l0.begin(), l0.end());
  for (const auto &x : fixed)
    if (!std::binary_search(l0.begin(), l0.end(), x)) {
      r.extra_element = x.to_string();
      break;
    }
  r.ok = fixed == l0;
  return r;
}

struct EquivalenceReport {
  std::size_t patterns = 0;
  std::vector<std::string> passing;  // collections passing (i)-(iv)
  std::vector<std::string> expected; // transposes of D-nets
  std::vector<std::string> discrepancies;
  std::optional<ConditionWitness> sample_failure; // first failing pattern's witness
  std::string sample_failure_pattern;
  bool sampled = false;
  bool ok = false;
};

/// Every Boolean off-diagonal collection against conditions (i)-(iv) over
/// `g_elems` (all of G, or a labelled sample); the passing set must be the
/// set of D-net transposes.
template <class Model, class Range>
EquivalenceReport equivalence_experiment(const Model &model, const Frame &f,
                                         const Range &g_elems, bool sampled) {
  const std::size_t n = f.n();
  const auto h_gens = standard_gens(model, f, GenKind::diagonal);
  std::vector<std::size_t> off;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j)
        off.push_back(i * n + j);
  const Pattern diag = DNet::identity(n).pattern();

  std::set<std::string> expected;
  for (const auto &s : enumerate_dnets(n))
    expected.insert(transpose(s).to_string());

  const std::size_t count = std::size_t{1} << off.size();
  std::vector<Pattern> patterns(count, diag);
  std::vector<ConditionReport> reports(count);
  for (std::size_t mask = 0; mask < count; ++mask)
    for (std::size_t b = 0; b < off.size(); ++b)
      if (mask >> b & 1u)
        patterns[mask].bits |= std::uint32_t{1} << off[b];
  parallel_for(count, [&](std::size_t i) {
    reports[i] = collection_conditions(model,
                                       collection_from_pattern(patterns[i], f),
                                       f, h_gens, g_elems, sampled);
  });

  EquivalenceReport rep;
  rep.patterns = count;
  rep.sampled = sampled;
  std::set<std::string> passing;
  for (std::size_t i = 0; i < count; ++i) {
    if (reports[i].all())
      passing.insert(patterns[i].to_string());
    else if (!rep.sample_failure && reports[i].witness &&
             reports[i].witness->condition == "iv") {
      rep.sample_failure = reports[i].witness;
      rep.sample_failure_pattern = patterns[i].to_string();
    }
  }
  rep.passing.assign(passing.begin(), passing.end());
  rep.expected.assign(expected.begin(), expected.end());
  std::set_symmetric_difference(passing.begin(), passing.end(),
                                expected.begin(), expected.end(),
                                std::back_inserter(rep.discrepancies));
  rep.ok = rep.discrepancies.empty();
  return rep;
}

struct NetOracleEntry {
  std::string net;
  std::uint64_t generated = 0;  // |closure(net_group_gens)|
  std::uint64_t stabilizer = 0; // |{g : g fixes K_sigma}|
  std::uint64_t pattern = 0;    // |{g : zero blocks where sigma is Zero}|
  bool gens_fix_k = false;
  bool pattern_matches = false; // elementwise agreement with the stabilizer
  bool ok = false;
};

/// Generator-, stabilizer- and matrix-pattern descriptions of each net
/// subgroup, compared over the materialized G in a single pass.
inline std::vector<NetOracleEntry>
net_group_oracle(GroupHandle<SemilinearModel> &gh, const Frame &f,
                 std::vector<DNet> nets = {}) {
  const SemilinearModel &model = gh.model();
  gh.materialize();
  if (nets.empty())
    nets = enumerate_dnets(f.n());
  std::vector<NetGroup<SemilinearModel>> groups;
  std::vector<NetOracleEntry> out(nets.size());
  for (const auto &s : nets)
    groups.push_back(make_net_group(model, f, s));
  parallel_for(nets.size(), [&](std::size_t i) {
    NetOracleEntry &e = out[i];
    e.net = nets[i].to_string();
    e.generated = closure(model, groups[i].gens, gh.budget()).size();
    e.gens_fix_k = true;
    for (const auto &g : groups[i].gens)
      e.gens_fix_k = e.gens_fix_k && in_net_group(model, g, groups[i].k);
    e.pattern_matches = true;
  });
  for (const auto &g : gh.element_view())
    for (std::size_t i = 0; i < nets.size(); ++i) {
      const bool st = in_net_group(model, g, groups[i].k);
      const bool pt = in_pattern_group(g, nets[i], f);
      out[i].stabilizer += st;
      out[i].pattern += pt;
      if (st != pt)
        out[i].pattern_matches = false;
    }
  for (auto &e : out)
    e.ok = e.gens_fix_k && e.pattern_matches && e.generated == e.stabilizer;
  return out;
}

// ---------------------------------------------------------------------------
// Transvection sets.

/// i != j, x <= e_j.
struct TransvectionQuery {
  std::size_t i = 0, j = 0;
  Subspace x;
};

template <class Model, class Range>
std::vector<typename Model::Element>
transvection_set(const Model &model, const TransvectionQuery &tq,
                 Range &&g_elems, const Frame &f) {
  if (tq.i == tq.j || tq.i >= f.n() || tq.j >= f.n())
    throw ConfigError("transvection query needs distinct block indices");
  if (!contains(f.field(), f.e(tq.j), tq.x))
    throw ConfigError("transvection query needs x <= e_j");
  std::vector<typename Model::Element> out;
  for (const auto &g : g_elems)
    if (is_lattice_transvection(model, g, tq.i, tq.j, tq.x, f))
      out.push_back(g);
  return out;
}

/// Conjugates of the net-group generators by the F generators, both ways,
/// stay in G(K_sigma).
template <class Model>
bool thm3_normality(const GroupHandle<Model> &fh, const DNet &sigma,
                    const Frame &f) {
  const auto ng = make_net_group(fh.model(), f, sigma);
  for (const auto &x : fh.generators())
    if (!in_normalizer(fh.model(), x, ng))
      return false;
  return true;
}

// ---------------------------------------------------------------------------
// Sufficient conditions for normality on an abstract modular lattice.
//
// G is a group of automorphisms given as permutations of element indices,
// H its pointwise stabilizer of the frame. Supports are computed from the
// meet and join tables.

class AbstractFrame {
public:
  using Index = FiniteLattice::Index;

  /// Throws LatticeError unless the frame atoms are independent, join to
  /// the top and the Boolean sublattice has the length of L.
  explicit AbstractFrame(const FiniteLattice &l) : l_(&l), e_(l.frame()) {
    const std::size_t n = e_.size();
    if (n < 2)
      throw LatticeError("the lattice needs a frame of at least 2 elements");
    Index all = l.bottom();
    std::size_t heights = 0;
    for (auto x : e_) {
      all = l.join(all, x);
      heights += l.height(x);
    }
    if (all != l.top() || heights != l.length())
      throw LatticeError("frame does not span L with the same length");
    for (std::size_t i = 0; i < n; ++i) {
      Index rest = l.bottom();
      for (std::size_t j = 0; j < n; ++j)
        if (j != i)
          rest = l.join(rest, e_[j]);
      if (l.meet(rest, e_[i]) != l.bottom())
        throw LatticeError("frame elements are not independent");
      others_.push_back(rest);
    }
  }

  const FiniteLattice &lattice() const { return *l_; }
  std::size_t n() const { return e_.size(); }
  Index e(std::size_t i) const { return e_[i]; }

  /// [x]_i = (x v sum_{j != i} e_j) ^ e_i.
  Index support(Index x, std::size_t i) const {
    return l_->meet(l_->join(x, others_[i]), e_[i]);
  }

  /// p fixes e_s for s != i and [p(e_i)] is e_i at i, x at j, 0 elsewhere.
  bool is_transvection(const Perm &p, std::size_t i, std::size_t j,
                       Index x) const {
    for (std::size_t s = 0; s < n(); ++s)
      if (s != i && p(e_[s]) != e_[s])
        return false;
    const auto y = static_cast<Index>(p(e_[i]));
    for (std::size_t k = 0; k < n(); ++k) {
      const Index want = k == i ? e_[i] : k == j ? x : l_->bottom();
      if (support(y, k) != want)
        return false;
    }
    return true;
  }

  /// Sublattice generated by `gens` via the tables.
  std::vector<Index> generated(const std::vector<Index> &gens) const {
    std::set<Index> seen(gens.begin(), gens.end());
    std::vector<Index> work(seen.begin(), seen.end());
    while (!work.empty()) {
      const Index x = work.back();
      work.pop_back();
      const std::vector<Index> now(seen.begin(), seen.end());
      for (Index y : now)
        for (Index z : {l_->meet(x, y), l_->join(x, y)})
          if (seen.insert(z).second)
            work.push_back(z);
    }
    return {seen.begin(), seen.end()};
  }

private:
  const FiniteLattice *l_;
  std::vector<Index> e_;
  std::vector<Index> others_;
};

struct Thm3Report {
  bool a = false, b = false, c = false;
  bool d = false;             // conjunctive reading
  bool d_disjunctive = false; // both intersections replaced by "either"
  bool d_exhaustive = true;
  std::uint64_t d_checked = 0;
  std::uint64_t g_order = 0, h_order = 0;
  std::optional<bool> normality; // G(K_sigma) normal in every F >= H
  std::size_t census_size = 0;
  std::vector<std::pair<std::uint64_t, std::string>> census_nets; // (|F|, net of F)
  std::vector<std::string> witnesses;

  bool all() const { return a && b && c && d && normality.value_or(true); }
};

struct Thm3Options {
  std::uint64_t d_exhaustive_limit = 10'000;
  std::size_t d_samples = 200;
  std::uint64_t seed = 0;
  bool census = true;
  std::uint64_t budget = kDefaultClosureBudget;
};

namespace detail {

inline std::vector<Perm> closure_list(const PermModel &model,
                                      const std::vector<Perm> &gens,
                                      std::uint64_t budget) {
  const auto es = closure(model, gens, budget);
  std::vector<Perm> out;
  for (const auto &k : es.keys())
    out.push_back(model.decode(k));
  return out;
}

} // namespace detail

/// Conditions (a)-(d) for a frame of `l` and G = `g_elems` (all of G);
/// then, if requested, normality of G(K_sigma) in every intermediate F.
inline Thm3Report thm3_conditions(const FiniteLattice &l,
                                  std::vector<Perm> g_elems,
                                  const Thm3Options &opt = {}) {
  using Index = FiniteLattice::Index;
  const AbstractFrame fr(l);
  const std::size_t n = fr.n();
  const PermModel model(l.size());
  std::sort(g_elems.begin(), g_elems.end());
  Thm3Report rep;
  rep.g_order = g_elems.size();

  std::vector<Perm> h_elems;
  for (const auto &p : g_elems) {
    bool fixes = true;
    for (std::size_t i = 0; i < n; ++i)
      fixes = fixes && p(fr.e(i)) == fr.e(i);
    if (fixes)
      h_elems.push_back(p);
  }
  rep.h_order = h_elems.size();
  const auto h_gens = reduce_generators(model, h_elems, opt.budget);

  // (a)
  rep.a = true;
  for (std::size_t i = 0; i < n; ++i) {
    bool found = false;
    for (const auto &h : h_elems) {
      bool ok = true;
      for (Index x : l.atoms()) {
        const Index s = fr.support(x, i);
        if (x != fr.e(i) && s == fr.e(i) && h(x) == x)
          ok = false;
        if (s == l.bottom() && h(x) != x)
          ok = false;
        if (!ok)
          break;
      }
      if (ok) {
        found = true;
        break;
      }
    }
    if (!found) {
      rep.a = false;
      rep.witnesses.push_back("a: no element of H for i=" + std::to_string(i + 1));
    }
  }

  // (b)
  rep.b = true;
  for (Index x : l.atoms()) {
    for (Index y : l.atoms()) {
      bool same = true;
      for (std::size_t i = 0; i < n; ++i)
        same = same && fr.support(x, i) == fr.support(y, i);
      if (!same)
        continue;
      bool moved = false;
      for (const auto &h : h_elems)
        if (h(x) == y) {
          moved = true;
          break;
        }
      if (!moved && rep.b) {
        rep.b = false;
        rep.witnesses.push_back("b: no h with h(" + l.name(x) + ") = " + l.name(y));
      }
    }
  }

  // (c)
  rep.c = true;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j)
        continue;
      bool found = false;
      for (const auto &g : g_elems)
        if (fr.is_transvection(g, i, j, fr.e(j))) {
          found = true;
          break;
        }
      if (!found) {
        rep.c = false;
        rep.witnesses.push_back("c: H_" + std::to_string(i + 1) +
                                std::to_string(j + 1) + "(e_" +
                                std::to_string(j + 1) + ") is empty");
      }
    }

  // (d)
  std::vector<Perm> as;
  if (g_elems.size() <= opt.d_exhaustive_limit) {
    as = g_elems;
  } else {
    rep.d_exhaustive = false;
    std::mt19937_64 rng(opt.seed);
    for (std::size_t s = 0; s < opt.d_samples; ++s)
      as.push_back(g_elems[uniform_below(rng, g_elems.size())]);
  }
  rep.d = true;
  rep.d_disjunctive = true;
  std::map<std::vector<std::string>, std::set<std::tuple<std::size_t, std::size_t, Index>>>
      hit_cache;
  for (const auto &a : as) {
    ++rep.d_checked;
    std::vector<Perm> gens = h_gens;
    gens.push_back(a);
    const auto ah = detail::closure_list(model, gens, opt.budget);
    std::vector<std::string> key;
    for (const auto &p : ah)
      key.push_back(p.key());
    auto it = hit_cache.find(key);
    if (it == hit_cache.end()) {
      // (i, j, x) with H_ij(x) meeting <a, H>
      std::set<std::tuple<std::size_t, std::size_t, Index>> hits;
      for (const auto &f : ah)
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j)
            if (i != j) {
              const auto x = fr.support(static_cast<Index>(f(fr.e(i))), j);
              if (fr.is_transvection(f, i, j, x))
                hits.emplace(i, j, x);
            }
      it = hit_cache.emplace(std::move(key), std::move(hits)).first;
    }
    const auto &hits = it->second;
    const Perm ai = a.inverse();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j)
          continue;
        std::vector<Perm> conj, disj;
        for (const auto &h : h_elems) {
          const auto x1 = fr.support(static_cast<Index>((a * h * ai)(fr.e(i))), j);
          const auto x2 =
              fr.support(static_cast<Index>((a * h.inverse() * ai)(fr.e(i))), j);
          const bool c1 = hits.count({i, j, x1}) != 0;
          const bool c2 = hits.count({i, j, x2}) != 0;
          if (c1 && c2)
            conj.push_back(h);
          if (c1 || c2)
            disj.push_back(h);
        }
        const bool conj_ok =
            closure(model, conj, opt.budget).size() == h_elems.size();
        const bool disj_ok =
            closure(model, disj, opt.budget).size() == h_elems.size();
        if (!conj_ok && rep.d)
          rep.witnesses.push_back("d: a=" + a.to_string() + " i=" +
                                  std::to_string(i + 1) + " j=" +
                                  std::to_string(j + 1));
        rep.d = rep.d && conj_ok;
        rep.d_disjunctive = rep.d_disjunctive && disj_ok;
      }
  }

  if (!opt.census)
    return rep;

  // Normality of G(K_sigma) in every F with H <= F <= G, sigma the net of F
  // read off from transvections: sigma_ij Full iff F meets H_ji(e_i).
  GroupHandle<PermModel> hh(model, h_gens, opt.budget);
  GroupHandle<PermModel> gh(model, reduce_generators(model, g_elems, opt.budget),
                            opt.budget);
  const auto census = intermediate_census(hh, gh);
  rep.census_size = census.size();
  rep.normality = true;
  for (const auto &f : census) {
    Pattern p{n, 0};
    for (std::size_t i = 0; i < n; ++i)
      p.set(i, i);
    for (const auto &x : f.element_view())
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (i != j && fr.is_transvection(x, j, i, fr.e(i)))
            p.set(i, j);
    rep.census_nets.emplace_back(*f.order(), p.to_string());
    // row sums of tau = sigma^T: tau_ij = e_j iff sigma_ji Full
    std::vector<Index> rows;
    for (std::size_t i = 0; i < n; ++i) {
      Index r = l.bottom();
      for (std::size_t j = 0; j < n; ++j)
        if (p.at(j, i))
          r = l.join(r, fr.e(j));
      rows.push_back(r);
    }
    std::vector<Perm> gk;
    for (const auto &g : g_elems) {
      bool fixes = true;
      for (Index x : rows)
        fixes = fixes && g(x) == x;
      if (fixes)
        gk.push_back(g);
    }
    std::set<std::string> gk_keys;
    for (const auto &g : gk)
      gk_keys.insert(g.key());
    bool normal = true;
    for (const auto &x : f.generators()) {
      const Perm xi = x.inverse();
      for (const auto &g : gk)
        if (!gk_keys.count((x * g * xi).key())) {
          normal = false;
          break;
        }
      if (!normal)
        break;
    }
    bool contained = true;
    for (const auto &g : gk)
      contained = contained && f.contains(g);
    if (!normal || !contained) {
      rep.normality = false;
      rep.witnesses.push_back("normality: F of order " +
                              std::to_string(*f.order()) + " with net " +
                              p.to_string() +
                              (contained ? "" : " does not contain G(K)"));
    }
  }
  return rep;
}

/// The rank-2 subspace lattice of F_q^2 with its coordinate frame.
inline FiniteLattice rank2_lattice(const Field &field) {
  FiniteLattice l =
      FiniteLattice::from_subspaces(field, enumerate_subspaces(field, 2));
  const Frame fr(field, 2, 1);
  l.set_frame({l.index_of(fr.e(0)), l.index_of(fr.e(1))});
  return l;
}

} // namespace netlat

#pragma once

// Command surface: a RunConfig in, a structured report and exit code out.
//
// Report layout (schema_version 1), keys in this order:
//   schema_version, engine{name, version}, command, config{...},
//   model, hypothesis{excluded, note}, status, results[...], timings{...}
// Everything except `timings` is a pure function of the config.
//
// Exit codes: 0 all checks pass, 1 a mathematical violation, 2 a closure
// budget or enumeration cap was exceeded, 3 configuration error.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "netlat/atom_model.hpp"
#include "netlat/autgroup.hpp"
#include "netlat/dnet.hpp"
#include "netlat/error.hpp"
#include "netlat/finite_lattice.hpp"
#include "netlat/group.hpp"
#include "netlat/lattice.hpp"
#include "netlat/nets.hpp"
#include "netlat/parallel.hpp"
#include "netlat/sandwich.hpp"
#include "netlat/semilinear.hpp"

namespace netlat::cli {

inline constexpr const char *kEngineName = "netlat";
inline constexpr const char *kEngineVersion = "0.1.0";
inline constexpr int kSchemaVersion = 1;
inline constexpr std::uint64_t kDefaultSeed = 42;

enum ExitCode : int { kPass = 0, kViolation = 1, kBudget = 2, kConfig = 3 };

using json = nlohmann::ordered_json;

struct RunConfig {
  std::string command;
  std::uint32_t q = 0; // 0: command default
  std::size_t n = 0;   // 0: command default
  std::size_t m = 0;   // 0: command default
  std::size_t samples = 20;
  std::uint64_t seed = kDefaultSeed;
  std::uint64_t budget = kDefaultClosureBudget;
  std::uint64_t cap = kDefaultSubspaceCap;
  std::string mode = "exhaustive";
  std::string out;
  bool allow_excluded = false;
  std::string replay;
  std::string gens;    // comma-separated element keys (verify)
  std::string pattern; // one D-net, e.g. "101/010/001" (nets)
  std::string lattice; // fixture path (thm3)
};

struct Report {
  json body;
  json timings;
  int exit_code = kPass;

  std::string status() const { return body.value("status", std::string{}); }
  /// Body plus the timings block.
  std::string text() const {
    json j = body;
    j["timings"] = timings;
    return j.dump(2) + "\n";
  }
};

inline const std::vector<std::string> &commands() {
  static const std::vector<std::string> c{"census", "verify", "nets", "equiv",
                                          "fixed",  "thm3",   "autcheck"};
  return c;
}

/// Parses command-line words (without the program name).
inline RunConfig parse_args(const std::vector<std::string> &words) {
  RunConfig c;
  CLI::App app{"netlat: subspace lattices, D-nets and sandwich checks"};
  app.add_option("command", c.command, "census|verify|nets|equiv|fixed|thm3|autcheck")
      ->check(CLI::IsMember(commands()));
  app.add_option("--q", c.q, "field order (prime power)");
  app.add_option("--n", c.n, "number of frame blocks");
  app.add_option("--m", c.m, "block size");
  app.add_option("--samples", c.samples, "random intermediate subgroups or sampled elements");
  app.add_option("--seed", c.seed, "seed for every sampler");
  app.add_option("--budget", c.budget, "closure element budget");
  app.add_option("--cap", c.cap, "subspace universe cap");
  app.add_option("--mode", c.mode, "exhaustive|sample")
      ->check(CLI::IsMember({"exhaustive", "sample"}));
  app.add_option("--out", c.out, "write the report to this file");
  app.add_flag("--allow-excluded", c.allow_excluded,
               "run instances outside the theorem hypotheses");
  app.add_option("--replay", c.replay, "re-run a witness replay string");
  app.add_option("--gens", c.gens, "comma-separated generator keys (verify)");
  app.add_option("--pattern", c.pattern, "restrict nets to one D-net");
  app.add_option("--lattice", c.lattice, "lattice fixture for thm3");
  std::vector<std::string> args(words.rbegin(), words.rend());
  try {
    app.parse(args);
  } catch (const CLI::ParseError &e) {
    throw ConfigError(std::string("bad arguments: ") + e.what());
  }
  if (c.command.empty() && c.replay.empty())
    throw ConfigError("no command given");
  return c;
}

inline std::vector<std::string> split_words(const std::string &s) {
  std::istringstream in(s);
  std::vector<std::string> w;
  for (std::string x; in >> x;)
    w.push_back(x);
  return w;
}

namespace detail {

class Timer {
public:
  Timer() : t0_(std::chrono::steady_clock::now()) {}
  double ms() const {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - t0_)
        .count();
  }

private:
  std::chrono::steady_clock::time_point t0_;
};

struct Context {
  RunConfig cfg;
  json results = json::array();
  json timings = json::object();
  bool any_fail = false;
  bool any_budget = false;
  bool excluded = false;
  std::string note;
  std::string model = "none";

  void add(json r, double ms) {
    const std::string st = r.value("status", "pass");
    any_fail = any_fail || st == "fail";
    any_budget = any_budget || st == "budget_exceeded";
    timings[r.value("check", "check") + "#" + std::to_string(results.size())] = ms;
    results.push_back(std::move(r));
  }
};

inline const char *kProjectiveModel =
    "projective semilinear: invertible matrices modulo scalars with field "
    "automorphisms; vectors are columns";
inline const char *kAtomModel =
    "rank 2: permutations of the q+1 atoms";

inline std::string pass_fail(bool ok) { return ok ? "pass" : "fail"; }

inline json witness_json(const Witness &w, const std::string &replay) {
  json j;
  j["check"] = w.check;
  j["detail"] = w.detail;
  if (!w.element.empty())
    j["element"] = w.element;
  if (!w.element_key.empty())
    j["element_key"] = w.element_key;
  j["replay"] = replay;
  return j;
}

inline std::string instance_args(const RunConfig &c) {
  return "--q " + std::to_string(c.q) + " --n " + std::to_string(c.n) +
         " --m " + std::to_string(c.m);
}

inline std::vector<std::uint64_t> parse_keys(const std::string &s) {
  std::vector<std::uint64_t> out;
  std::string cur;
  for (char ch : s + ",") {
    if (ch == ',') {
      if (!cur.empty()) {
        try {
          out.push_back(std::stoull(cur));
        } catch (const std::exception &) {
          throw ConfigError("bad generator key '" + cur + "'");
        }
      }
      cur.clear();
    } else {
      cur += ch;
    }
  }
  return out;
}

inline std::string join_keys(const std::vector<std::string> &keys) {
  std::string s;
  for (const auto &k : keys)
    s += (s.empty() ? "" : ",") + k;
  return s;
}

inline void gate(Context &ctx, bool excluded, const std::string &why) {
  if (!excluded)
    return;
  if (!ctx.cfg.allow_excluded)
    throw ConfigError(why + " (pass --allow-excluded to run it anyway)");
  ctx.excluded = true;
  ctx.note = "out of hypothesis: " + why;
}

inline void set_defaults(RunConfig &c) {
  const std::string &k = c.command;
  if (c.q == 0)
    c.q = k == "census" || k == "thm3" ? 4 : k == "verify" ? 7 : k == "autcheck" ? 2 : 3;
  if (c.n == 0)
    c.n = k == "census" || k == "thm3" ? 2 : 3;
  if (c.m == 0)
    c.m = 1;
  if (k == "census" && (c.n != 2 || c.m != 1))
    throw ConfigError("census runs on the rank-2 lattice (n=2, m=1)");
  if (c.samples == 0 && c.mode == "sample")
    throw ConfigError("sample mode needs --samples > 0");
  if (c.budget == 0 || c.cap == 0)
    throw ConfigError("budget and cap must be positive");
}

// --- census ---------------------------------------------------------------

inline void run_census(Context &ctx) {
  const RunConfig &c = ctx.cfg;
  gate(ctx, c.q == 2 || c.q == 3,
       "rank-2 census needs at least 5 atoms (q >= 4)");
  ctx.model = kAtomModel;
  Timer t;
  const Field field = make_field_of_order(c.q);
  const CensusReport rep = n2_census(field, c.budget);
  json r;
  r["check"] = "census";
  r["q"] = c.q;
  r["count"] = rep.members.size();
  json members = json::array();
  for (const auto &m : rep.members) {
    json j;
    j["label"] = m.label;
    j["order"] = m.order;
    j["self_normalizing"] = m.self_normalizing;
    j["fans"] = m.fans;
    j["generators"] = m.generators;
    members.push_back(j);
  }
  r["members"] = members;
  r["count_ok"] = rep.count_ok;
  r["labels_ok"] = rep.labels_ok;
  r["self_normalizing_ok"] = rep.self_normal_ok;
  r["fans_partition_ok"] = rep.fans_ok;
  if (rep.aut_crosscheck)
    r["aut_bruteforce_ok"] = *rep.aut_crosscheck;
  r["status"] = pass_fail(rep.all());
  if (!rep.all()) {
    Witness w = rep.witness.value_or(Witness{"census", "census mismatch", {}, {}});
    r["witness"] = witness_json(w, "census --q " + std::to_string(c.q) +
                                       (ctx.excluded ? " --allow-excluded" : ""));
  }
  ctx.add(std::move(r), t.ms());
}

// --- verify ---------------------------------------------------------------

template <class Model>
json sandwich_json(const SandwichReport &s, const std::string &name,
                   const Context &ctx) {
  json r;
  r["check"] = "sandwich";
  r["family"] = name;
  r["status"] = to_string(s.status);
  if (s.f_order)
    r["f_order"] = *s.f_order;
  r["f_generators"] = s.f_generators;
  r["f_generator_keys"] = s.f_generator_keys;
  if (s.pattern)
    r["associated_pattern"] = s.pattern->to_string();
  r["net"] = s.net ? json(s.net->to_string()) : json(nullptr);
  r["lower_ok"] = s.lower_ok;
  r["upper_ok"] = s.upper_ok;
  r["unique_ok"] = s.unique_ok;
  if (!s.budget_notes.empty())
    r["budget_notes"] = s.budget_notes;
  if (s.status != CheckStatus::pass) {
    const std::string replay = "verify " + instance_args(ctx.cfg) +
                               " --budget " + std::to_string(ctx.cfg.budget) +
                               " --gens " + join_keys(s.f_generator_keys) +
                               (ctx.excluded ? " --allow-excluded" : "");
    Witness w = s.witness.value_or(
        Witness{"budget", s.budget_notes.empty() ? "" : s.budget_notes.front(),
                {}, {}});
    r["witness"] = witness_json(w, replay);
  }
  return r;
}

template <class Model>
void verify_families(Context &ctx, const Model &model, const Frame &fr,
                     std::vector<std::pair<std::string, std::vector<typename Model::Element>>>
                         families) {
  const RunConfig &c = ctx.cfg;
  const auto h_gens = standard_gens(model, fr, GenKind::diagonal);
  GroupHandle<Model> h(model, h_gens, c.budget);
  if (!c.gens.empty()) {
    std::vector<typename Model::Element> gens;
    for (auto k : parse_keys(c.gens)) {
      if (model.key_space() != 0 && k >= model.key_space())
        throw ConfigError("generator key out of range");
      gens.push_back(model.decode(k));
    }
    families = {{"replay", gens}};
  } else {
    GroupHandle<Model> g(model, standard_gens(model, fr, GenKind::full), c.budget);
    for (std::size_t i = 0; i < c.samples; ++i) {
      const auto f = random_intermediate(h, g, 1, c.seed + i);
      families.emplace_back("random seed=" + std::to_string(c.seed + i),
                            f.generators());
    }
  }
  for (auto &[name, gens] : families) {
    Timer t;
    GroupHandle<Model> f(model, gens, c.budget);
    const SandwichReport s = verify_sandwich(f, fr);
    ctx.add(sandwich_json<Model>(s, name, ctx), t.ms());
  }
}

inline void run_verify(Context &ctx) {
  const RunConfig &c = ctx.cfg;
  const bool rank2 = c.n == 2 && c.m == 1;
  gate(ctx, rank2 && c.q < 4, "rank 2 needs at least 5 atoms (q >= 4)");
  gate(ctx, !rank2 && c.m == 1 && c.q < 7,
       "fields with fewer than seven elements are excluded");
  gate(ctx, c.m == 2 && c.q == 2, "M(2, F_2) is excluded");
  const Field field = make_field_of_order(c.q);
  const Frame fr(field, c.n, c.m);
  if (rank2) {
    ctx.model = kAtomModel;
    const AtomModel model(field);
    auto h = standard_gens(model, fr, GenKind::diagonal);
    auto m1 = model.stabilizer_of({fr.e(0)});
    verify_families(ctx, model, fr,
                    {{"H", h},
                     {"G", standard_gens(model, fr, GenKind::full)},
                     {"G(M_1)", m1},
                     {"monomial", standard_gens(model, fr, GenKind::monomial)}});
    return;
  }
  ctx.model = kProjectiveModel;
  const SemilinearModel model(field, fr.ambient());
  auto h = standard_gens(model, fr, GenKind::diagonal);
  auto ht = h;
  ht.push_back(unit_transvection(model, fr, 0, c.n - 1));
  auto mono = h;
  mono.push_back(block_swap(model, fr, 0, 1));
  verify_families(ctx, model, fr,
                  {{"H", h},
                   {"G", standard_gens(model, fr, GenKind::full)},
                   {"<H,t_1" + std::to_string(c.n) + "(1)>", ht},
                   {"monomial", mono}});
}

// --- nets -----------------------------------------------------------------

inline void run_nets(Context &ctx) {
  const RunConfig &c = ctx.cfg;
  ctx.model = kProjectiveModel;
  {
    Timer t;
    json r;
    r["check"] = "dnet_counts";
    json counts = json::array();
    bool ok = true;
    for (std::size_t k = 1; k <= std::min<std::size_t>(c.n, kMaxNetOrder); ++k) {
      const auto a = enumerate_dnets(k).size();
      const auto b = count_dnets_by_closure(k);
      counts.push_back({{"n", k}, {"enumerated", a}, {"closure_route", b}});
      ok = ok && a == b;
    }
    r["counts"] = counts;
    r["status"] = pass_fail(ok);
    ctx.add(std::move(r), t.ms());
  }
  const Field field = make_field_of_order(c.q);
  const Frame fr(field, c.n, c.m);
  const SemilinearModel model(field, fr.ambient());
  std::vector<DNet> nets;
  if (!c.pattern.empty())
    nets.push_back(DNet(parse_pattern(c.pattern)));
  else
    nets = enumerate_dnets(c.n);

  GroupHandle<SemilinearModel> g(model, standard_gens(model, fr, GenKind::full),
                                 c.budget);
  Timer tg;
  g.materialize();
  const double g_ms = tg.ms();
  ctx.timings["materialize_G"] = g_ms;

  const bool sampled = c.mode == "sample";
  std::vector<SemilinearAut> sample;
  if (sampled) {
    std::mt19937_64 rng(c.seed);
    const auto &keys = g.elements().keys();
    for (std::size_t i = 0; i < c.samples; ++i)
      sample.push_back(model.decode(keys[uniform_below(rng, keys.size())]));
  }

  Timer to;
  const auto oracle = net_group_oracle(g, fr, nets);
  ctx.timings["net_group_oracle"] = to.ms();
  const auto h_gens = standard_gens(model, fr, GenKind::diagonal);
  for (std::size_t i = 0; i < nets.size(); ++i) {
    Timer t;
    const DNet &s = nets[i];
    const auto k = associated_K(s, fr);
    const NetCollection tau = realize(s, fr);
    const ConditionReport cr =
        sampled ? collection_conditions(model, tau, fr, h_gens, sample, true)
                : collection_conditions(model, tau, fr, h_gens, g.element_view(), false);
    json r;
    r["check"] = "net";
    r["net"] = s.to_string();
    r["transpose"] = transpose(s).to_string();
    r["k_size"] = k.elements.size();
    json kg = json::array();
    for (const auto &x : k.generators)
      kg.push_back(x.to_string());
    r["k_generators"] = kg;
    r["generated_order"] = oracle[i].generated;
    r["stabilizer_order"] = oracle[i].stabilizer;
    r["pattern_order"] = oracle[i].pattern;
    r["oracle_ok"] = oracle[i].ok;
    r["conditions"] = {{"i", cr.cond_i},   {"ii", cr.cond_ii},
                       {"iii", cr.cond_iii}, {"iv", cr.cond_iv},
                       {"mode", sampled ? "sample" : "exhaustive"},
                       {"elements", cr.elements_checked}};
    const bool ok = oracle[i].ok && cr.all();
    r["status"] = pass_fail(ok);
    if (!ok) {
      Witness w{"net", oracle[i].ok ? "collection conditions" : "net-group oracle",
                {}, {}};
      if (cr.witness) {
        w.check = "condition " + cr.witness->condition;
        w.element = cr.witness->element;
        w.element_key = cr.witness->element_key;
      }
      r["witness"] = witness_json(w, "nets " + instance_args(c) + " --pattern " +
                                         s.to_string());
    }
    ctx.add(std::move(r), t.ms());
  }
}

// --- equiv ----------------------------------------------------------------

inline json condition_witness_json(const ConditionWitness &w) {
  return {{"condition", w.condition},
          {"i", w.i + 1},
          {"j", w.j + 1},
          {"k", w.k + 1},
          {"element", w.element},
          {"element_key", w.element_key}};
}

inline void run_equiv(Context &ctx) {
  const RunConfig &c = ctx.cfg;
  gate(ctx, c.q == 2 && c.m == 1, "the prime field F_2 is excluded");
  ctx.model = kProjectiveModel;
  const Field field = make_field_of_order(c.q);
  const Frame fr(field, c.n, c.m);
  const SemilinearModel model(field, fr.ambient());
  GroupHandle<SemilinearModel> g(model, standard_gens(model, fr, GenKind::full),
                                 c.budget);
  Timer tg;
  g.materialize();
  ctx.timings["materialize_G"] = tg.ms();
  Timer t;
  EquivalenceReport rep;
  if (c.mode == "sample") {
    std::mt19937_64 rng(c.seed);
    std::vector<SemilinearAut> sample;
    const auto &keys = g.elements().keys();
    for (std::size_t i = 0; i < c.samples; ++i)
      sample.push_back(model.decode(keys[uniform_below(rng, keys.size())]));
    rep = equivalence_experiment(model, fr, sample, true);
  } else {
    rep = equivalence_experiment(model, fr, g.element_view(), false);
  }
  json r;
  r["check"] = "equivalence";
  r["mode"] = rep.sampled ? "sample" : "exhaustive";
  r["group_order"] = *g.order();
  r["collections"] = rep.patterns;
  r["passing_count"] = rep.passing.size();
  r["dnet_transposes"] = rep.expected.size();
  r["passing"] = rep.passing;
  r["discrepancies"] = rep.discrepancies;
  if (rep.sample_failure) {
    r["example_failure"] = condition_witness_json(*rep.sample_failure);
    r["example_failure"]["pattern"] = rep.sample_failure_pattern;
  }
  r["status"] = pass_fail(rep.ok);
  if (!rep.ok)
    r["witness"] = witness_json(
        Witness{"equivalence", "collection " + rep.discrepancies.front() +
                                   " disagrees with the D-net criterion",
                {}, {}},
        "nets " + instance_args(c) + " --pattern " + rep.discrepancies.front());
  ctx.add(std::move(r), t.ms());
}

// --- fixed ----------------------------------------------------------------

inline void run_fixed(Context &ctx) {
  const RunConfig &c = ctx.cfg;
  const Field field = make_field_of_order(c.q);
  const Frame fr(field, c.n, c.m);
  ctx.model = fr.ambient() == 2 ? kAtomModel : kProjectiveModel;
  Timer t;
  const auto rep = fixed_frame_check(fr, c.cap);
  json r;
  r["check"] = "fixed_frame";
  r["universe"] = rep.universe;
  r["fixed"] = rep.fixed;
  r["frame_size"] = std::size_t{1} << c.n;
  r["status"] = pass_fail(rep.ok);
  if (!rep.ok)
    r["witness"] = witness_json(
        Witness{"fixed_frame", "fixed element outside L0",
                rep.extra_element.value_or(""), {}},
        "fixed " + instance_args(c));
  ctx.add(std::move(r), t.ms());
}

// --- thm3 -----------------------------------------------------------------

inline void run_thm3(Context &ctx) {
  const RunConfig &c = ctx.cfg;
  FiniteLattice l;
  if (!c.lattice.empty()) {
    l = FiniteLattice::load(c.lattice);
    ctx.model = "table lattice: G = all lattice automorphisms";
  } else {
    if (c.n != 2 || c.m != 1)
      throw ConfigError("thm3 without --lattice runs on the rank-2 lattice (n=2, m=1)");
    l = rank2_lattice(make_field_of_order(c.q));
    ctx.model = "rank-2 subspace lattice as a table lattice: G = all lattice "
                "automorphisms";
  }
  Timer t;
  auto autos = lattice_automorphisms(l);
  Thm3Options opt;
  opt.seed = c.seed;
  opt.budget = c.budget;
  opt.d_samples = c.samples;
  if (c.mode == "sample")
    opt.d_exhaustive_limit = 0;
  const Thm3Report rep = thm3_conditions(l, std::move(autos), opt);
  json r;
  r["check"] = "thm3";
  r["lattice"] = c.lattice.empty() ? "rank2 q=" + std::to_string(c.q) : c.lattice;
  r["g_order"] = rep.g_order;
  r["h_order"] = rep.h_order;
  r["a"] = rep.a;
  r["b"] = rep.b;
  r["c"] = rep.c;
  r["d"] = rep.d;
  r["d_disjunctive"] = rep.d_disjunctive;
  r["d_mode"] = rep.d_exhaustive ? "exhaustive" : "sample";
  r["d_checked"] = rep.d_checked;
  if (rep.normality)
    r["normality"] = *rep.normality;
  r["census_size"] = rep.census_size;
  json cn = json::array();
  for (const auto &[order, net] : rep.census_nets)
    cn.push_back({{"order", order}, {"net", net}});
  r["census_nets"] = cn;
  r["status"] = pass_fail(rep.all());
  if (!rep.all()) {
    std::string replay = "thm3 --seed " + std::to_string(c.seed) + " --samples " +
                         std::to_string(c.samples) + " --mode " + c.mode;
    replay += c.lattice.empty() ? " --q " + std::to_string(c.q) : " --lattice " + c.lattice;
    r["witness"] = witness_json(
        Witness{"thm3", rep.witnesses.empty() ? "" : rep.witnesses.front(), {}, {}},
        replay);
    r["all_witnesses"] = rep.witnesses;
  }
  ctx.add(std::move(r), t.ms());
}

// --- autcheck -------------------------------------------------------------

inline void run_autcheck(Context &ctx) {
  const RunConfig &c = ctx.cfg;
  const Field field = make_field_of_order(c.q);
  const Frame fr(field, c.n, c.m);
  const std::size_t d = fr.ambient();
  Timer t;
  const auto universe = enumerate_subspaces(field, d, std::nullopt, c.cap);
  const auto autos = brute_force_lattice_autos(field, universe);
  std::uint64_t model_order = 0;
  if (d == 2) {
    ctx.model = kAtomModel;
    model_order = factorial(field.q() + 1);
  } else {
    ctx.model = kProjectiveModel;
    const SemilinearModel model(field, d);
    model_order = closure(model, standard_gens(model, fr, GenKind::full), c.budget).size();
  }
  json r;
  r["check"] = "autcheck";
  r["universe"] = universe.size();
  r["bruteforce_automorphisms"] = autos.size();
  r["model_order"] = model_order;
  const bool ok = autos.size() == model_order;
  r["status"] = pass_fail(ok);
  if (!ok)
    r["witness"] = witness_json(Witness{"autcheck", "automorphism counts differ", {}, {}},
                                "autcheck " + instance_args(c));
  ctx.add(std::move(r), t.ms());
}

} // namespace detail

/// Runs one command. Errors become report statuses and exit codes.
inline Report run(RunConfig cfg) {
  detail::Timer total;
  Report rep;
  std::string replayed;
  detail::Context ctx;
  std::string status = "pass";
  std::string error;
  try {
    if (!cfg.replay.empty()) {
      replayed = cfg.replay;
      RunConfig inner = parse_args(split_words(cfg.replay));
      inner.out = cfg.out;
      cfg = inner;
    }
    detail::set_defaults(cfg);
    ctx.cfg = cfg;
    const std::string &k = cfg.command;
    if (k == "census")
      detail::run_census(ctx);
    else if (k == "verify")
      detail::run_verify(ctx);
    else if (k == "nets")
      detail::run_nets(ctx);
    else if (k == "equiv")
      detail::run_equiv(ctx);
    else if (k == "fixed")
      detail::run_fixed(ctx);
    else if (k == "thm3")
      detail::run_thm3(ctx);
    else if (k == "autcheck")
      detail::run_autcheck(ctx);
    else
      throw ConfigError("unknown command '" + k + "'");
    status = ctx.any_fail ? "fail" : ctx.any_budget ? "budget_exceeded" : "pass";
  } catch (const BudgetExceeded &e) {
    status = "budget_exceeded";
    error = e.what();
  } catch (const CapExceeded &e) {
    status = "budget_exceeded";
    error = e.what();
  } catch (const ConfigError &e) {
    status = "config_error";
    error = e.what();
  } catch (const NonPrime &e) {
    status = "config_error";
    error = e.what();
  } catch (const LatticeError &e) {
    status = "config_error";
    error = e.what();
  }
  ctx.cfg = cfg;

  json &b = rep.body;
  b["schema_version"] = kSchemaVersion;
  b["engine"] = {{"name", kEngineName}, {"version", kEngineVersion}};
  b["command"] = cfg.command;
  b["config"] = {{"q", cfg.q},
                 {"n", cfg.n},
                 {"m", cfg.m},
                 {"samples", cfg.samples},
                 {"seed", cfg.seed},
                 {"budget", cfg.budget},
                 {"cap", cfg.cap},
                 {"mode", cfg.mode},
                 {"allow_excluded", cfg.allow_excluded}};
  if (!cfg.gens.empty())
    b["config"]["gens"] = cfg.gens;
  if (!cfg.pattern.empty())
    b["config"]["pattern"] = cfg.pattern;
  if (!cfg.lattice.empty())
    b["config"]["lattice"] = cfg.lattice;
  if (!replayed.empty())
    b["replay_of"] = replayed;
  b["model"] = ctx.model;
  b["hypothesis"] = {{"excluded", ctx.excluded}, {"note", ctx.note}};
  b["status"] = status;
  if (!error.empty())
    b["error"] = error;
  b["results"] = ctx.results;

  rep.timings = ctx.timings;
  rep.timings["workers"] = worker_count();
  rep.timings["total_ms"] = total.ms();
  rep.exit_code = status == "pass"              ? kPass
                  : status == "fail"            ? kViolation
                  : status == "budget_exceeded" ? kBudget
                                                : kConfig;
  if (!cfg.out.empty()) {
    std::ofstream out(cfg.out);
    out << rep.text();
    if (!out) {
      rep.body["status"] = "config_error";
      rep.body["error"] = "cannot write report to " + cfg.out;
      rep.exit_code = kConfig;
    }
  }
  return rep;
}

} // namespace netlat::cli

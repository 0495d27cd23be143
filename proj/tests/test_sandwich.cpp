#include <gtest/gtest.h>

#include <random>
#include <set>

#include "generators.hpp"
#include "netlat/sandwich.hpp"

using namespace netlat;

namespace {

using SGroup = GroupHandle<SemilinearModel>;

struct Instance {
  Field f;
  Frame fr;
  SemilinearModel model;
  Instance(std::uint32_t q, std::size_t n, std::size_t m)
      : f(make_field_of_order(q)), fr(f, n, m), model(f, n * m) {}
  SGroup group(GenKind kind) const {
    return SGroup(model, standard_gens(model, fr, kind));
  }
};

std::string fixture(const std::string &name) {
  return std::string(NETLAT_FIXTURE_DIR) + "/" + name;
}

} // namespace

TEST(Sandwich, DiagonalGroupSitsInTheIdentityFan) {
  const Instance in(7, 3, 1);
  auto h = in.group(GenKind::diagonal);
  const auto r = verify_sandwich(h, in.fr);
  EXPECT_EQ(r.status, CheckStatus::pass);
  EXPECT_EQ(r.net, DNet::identity(3));
  EXPECT_TRUE(r.lower_ok && r.upper_ok && r.unique_ok);
  EXPECT_EQ(r.f_order, 36u);
}

TEST(Sandwich, TransvectionExample) {
  const Instance in(7, 3, 1);
  auto f = in.group(GenKind::diagonal).extended(
      {unit_transvection(in.model, in.fr, 0, 2)});
  const auto r = verify_sandwich(f, in.fr);
  EXPECT_EQ(r.status, CheckStatus::pass);
  EXPECT_EQ(r.net, DNet::with_entries(3, {{0, 2}}));
  EXPECT_EQ(r.f_order, 252u);
}

TEST(Sandwich, MonomialAndFullGroups) {
  const Instance in(7, 3, 1);
  auto mono = in.group(GenKind::monomial);
  const auto r = verify_sandwich(mono, in.fr);
  EXPECT_EQ(r.status, CheckStatus::pass);
  EXPECT_EQ(r.net, DNet::identity(3));
  const Instance i5(5, 3, 1);
  auto g = i5.group(GenKind::full);
  const auto rg = verify_sandwich(g, i5.fr);
  EXPECT_EQ(rg.status, CheckStatus::pass);
  EXPECT_EQ(rg.net, DNet::all_full(3));
  EXPECT_EQ(rg.f_order, oracle::pgl_order(5, 3));
}

TEST(Sandwich, BudgetReport) {
  const Instance in(7, 3, 1);
  SGroup g(in.model, standard_gens(in.model, in.fr, GenKind::full), 1000);
  const auto r = verify_sandwich(g, in.fr);
  EXPECT_EQ(r.status, CheckStatus::budget_exceeded);
  EXPECT_FALSE(r.budget_notes.empty());
  EXPECT_FALSE(r.f_generator_keys.empty());
}

TEST(Sandwich, StableUnderAdjoiningDiagonalElements) {
  const Instance in(5, 3, 1);
  auto g = in.group(GenKind::full);
  const auto h = in.group(GenKind::diagonal);
  std::mt19937_64 rng(41);
  auto hh = h;
  hh.materialize();
  const auto &hkeys = hh.elements().keys();
  for (const auto &s : enumerate_dnets(3)) {
    auto f = h.extended(net_group_gens(in.model, in.fr, s));
    const auto base = verify_sandwich(f, in.fr);
    ASSERT_EQ(base.status, CheckStatus::pass) << s.to_string();
    ASSERT_EQ(base.net, s);
    const auto x = in.model.decode(hkeys[uniform_below(rng, hkeys.size())]);
    auto f2 = f.extended({x});
    const auto again = verify_sandwich(f2, in.fr);
    EXPECT_EQ(again.net, base.net) << s.to_string();
  }
  (void)g;
}

TEST(Sandwich, AssociatedNetIsMonotone) {
  const Instance in(3, 3, 1);
  auto g = in.group(GenKind::full);
  const auto h = in.group(GenKind::diagonal);
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    auto f1 = random_intermediate(h, g, 1, seed);
    auto f2 = random_intermediate(f1, g, 1, seed + 100);
    const auto a1 = associated_dnet(f1, in.fr);
    const auto a2 = associated_dnet(f2, in.fr);
    EXPECT_EQ(a1.pattern.bits & ~a2.pattern.bits, 0u) << "seed " << seed;
  }
}

TEST(Census, RankTwoReports) {
  for (std::uint32_t q : {4u, 5u}) {
    const auto rep = n2_census(make_field_of_order(q));
    EXPECT_TRUE(rep.all()) << "q=" << q;
    ASSERT_EQ(rep.members.size(), 5u);
    std::multiset<std::string> labels;
    for (const auto &m : rep.members) {
      labels.insert(m.label);
      EXPECT_EQ(m.fans.size(), 1u);
      EXPECT_EQ(m.self_normalizing, m.label != "H");
    }
    EXPECT_EQ(labels, (std::multiset<std::string>{"H", "N_G H", "G(M_1)", "G(M_2)", "G"}));
    ASSERT_TRUE(rep.aut_crosscheck);
    EXPECT_TRUE(*rep.aut_crosscheck);
  }
  const auto r5 = n2_census(make_field_of_order(5));
  std::vector<std::uint64_t> orders;
  for (const auto &m : r5.members)
    orders.push_back(m.order);
  EXPECT_EQ(orders, (std::vector<std::uint64_t>{24, 48, 120, 120, 720}));
}

TEST(Census, SmallFieldsBreakTheCount) {
  EXPECT_FALSE(n2_census(make_field_of_order(3)).count_ok);
}

TEST(FixedFrame, Instances) {
  for (auto [q, n, m] : std::vector<std::tuple<std::uint32_t, int, int>>{
           {3, 3, 1}, {5, 2, 1}, {3, 2, 2}, {4, 3, 1}}) {
    const Frame fr(make_field_of_order(q), n, m);
    const auto r = fixed_frame_check(fr);
    EXPECT_TRUE(r.ok) << q << "," << n << "," << m;
    EXPECT_EQ(r.fixed, std::size_t{1} << n);
    EXPECT_FALSE(r.extra_element);
  }
  // over F_2 the diagonal group is trivial and fixes everything
  const auto r2 = fixed_frame_check(Frame(make_field_of_order(2), 3, 1));
  EXPECT_FALSE(r2.ok);
  EXPECT_EQ(r2.fixed, 16u);
  EXPECT_TRUE(r2.extra_element);
}

TEST(Transvections, SetsMatchBruteForce) {
  const Instance in(3, 3, 1);
  auto g = in.group(GenKind::full);
  g.materialize();
  const auto mats = oracle::projective_matrices(gen::oracle_field(in.f), 3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      if (i == j)
        continue;
      const auto set = transvection_set(in.model, {i, j, in.fr.e(j)},
                                        g.element_view(), in.fr);
      std::size_t want = 0;
      for (const auto &a : mats) {
        bool ok = a[i][i] != 0 && a[j][i] != 0;
        for (std::size_t r = 0; r < 3; ++r)
          for (std::size_t c = 0; c < 3; ++c) {
            if (c == i)
              ok = ok && (r == i || r == j || a[r][c] == 0);
            else
              ok = ok && (r == c ? a[r][c] != 0 : a[r][c] == 0);
          }
        want += ok;
      }
      EXPECT_EQ(set.size(), want);
      EXPECT_GT(want, 0u);
    }
  EXPECT_THROW(transvection_set(in.model, {0, 0, in.fr.e(0)}, g.element_view(), in.fr),
               ConfigError);
  EXPECT_THROW(transvection_set(in.model, {0, 1, in.fr.e(0)}, g.element_view(), in.fr),
               ConfigError);
}

TEST(Thm3, NormalityExamples) {
  const Instance in(7, 3, 1);
  for (const auto &s : enumerate_dnets(3)) {
    const SGroup gk(in.model, net_group_gens(in.model, in.fr, s));
    EXPECT_TRUE(thm3_normality(gk, s, in.fr)) << s.to_string();
  }
  const auto t13 = in.group(GenKind::diagonal).extended(
      {unit_transvection(in.model, in.fr, 0, 2)});
  EXPECT_TRUE(thm3_normality(t13, DNet::with_entries(3, {{0, 2}}), in.fr));
  EXPECT_FALSE(thm3_normality(in.group(GenKind::monomial),
                              DNet::with_entries(3, {{0, 2}}), in.fr));
}

TEST(Thm3, RankTwoTableLattice) {
  const Field f = make_field_of_order(4);
  const auto l = rank2_lattice(f);
  const auto rep = thm3_conditions(l, lattice_automorphisms(l));
  EXPECT_TRUE(rep.a && rep.b && rep.c && rep.d);
  EXPECT_TRUE(rep.d_exhaustive);
  EXPECT_EQ(rep.g_order, 120u);
  EXPECT_EQ(rep.h_order, 6u);
  ASSERT_TRUE(rep.normality);
  EXPECT_TRUE(*rep.normality);
  EXPECT_EQ(rep.census_size, 5u);
  EXPECT_TRUE(rep.all());
}

TEST(Thm3, FixtureLattices) {
  const auto m3 = FiniteLattice::load(fixture("m3.lat"));
  const auto rep = thm3_conditions(m3, lattice_automorphisms(m3));
  EXPECT_FALSE(rep.all());
  EXPECT_FALSE(rep.witnesses.empty());
  const auto b3 = FiniteLattice::load(fixture("boolean3.lat"));
  EXPECT_NO_THROW(AbstractFrame{b3});
  auto bad = b3;
  bad.set_frame({b3.index_of(std::string("x")), b3.index_of(std::string("y"))});
  EXPECT_THROW(AbstractFrame{bad}, LatticeError);
  bad.set_frame({b3.index_of(std::string("x")), b3.index_of(std::string("xy")),
                 b3.index_of(std::string("z"))});
  EXPECT_THROW(AbstractFrame{bad}, LatticeError);
}

TEST(AbstractFrame, SupportMatchesSubspaceSupport) {
  const Field f = make_field_of_order(3);
  const auto l = rank2_lattice(f);
  const AbstractFrame af(l);
  const Frame fr(f, 2, 1);
  for (std::size_t x = 0; x < l.size(); ++x) {
    const auto sv = support(l.subspaces()[x], fr);
    for (std::size_t i = 0; i < 2; ++i)
      EXPECT_EQ(l.subspaces()[af.support(static_cast<FiniteLattice::Index>(x), i)],
                sv.components[i]);
  }
}

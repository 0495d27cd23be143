// Seeded property checks over randomly generated inputs.

#include <gtest/gtest.h>

#include <random>
#include <set>

#include "generators.hpp"
#include "netlat/atom_model.hpp"
#include "netlat/autgroup.hpp"
#include "netlat/lattice.hpp"
#include "netlat/nets.hpp"

using namespace netlat;

TEST(Properties, FieldAxiomsExhaustive) {
  for (std::uint32_t q = 2; q <= 49; ++q) {
    Field f;
    try {
      f = make_field_of_order(q);
    } catch (const ConfigError &) {
      continue;
    }
    for (std::uint32_t a = 0; a < q; ++a) {
      const auto x = f.elem(a);
      ASSERT_EQ(f.add(x, f.zero()), x);
      ASSERT_EQ(f.mul(x, f.one()), x);
      ASSERT_EQ(f.frobenius(x, f.k()), x);
      for (std::uint32_t b = 0; b < q; ++b) {
        const auto y = f.elem(b);
        ASSERT_EQ(f.add(x, y), f.add(y, x));
        ASSERT_EQ(f.mul(x, y), f.mul(y, x));
        ASSERT_EQ(f.add(f.sub(x, y), y), x);
        for (std::uint32_t c = 0; c < q; ++c) {
          const auto z = f.elem(c);
          ASSERT_EQ(f.add(f.add(x, y), z), f.add(x, f.add(y, z)));
          ASSERT_EQ(f.mul(f.mul(x, y), z), f.mul(x, f.mul(y, z)));
          ASSERT_EQ(f.mul(x, f.add(y, z)), f.add(f.mul(x, y), f.mul(x, z)));
        }
      }
    }
  }
}

TEST(Properties, FieldAxiomsSampledAbove49) {
  std::mt19937_64 rng(2);
  for (std::uint32_t q : {64u, 81u, 121u, 125u, 128u, 243u, 256u}) {
    const Field f = make_field_of_order(q);
    for (int trial = 0; trial < 5000; ++trial) {
      const auto x = gen::element(f, rng), y = gen::element(f, rng),
                 z = gen::element(f, rng);
      ASSERT_EQ(f.mul(f.mul(x, y), z), f.mul(x, f.mul(y, z)));
      ASSERT_EQ(f.mul(x, f.add(y, z)), f.add(f.mul(x, y), f.mul(x, z)));
      ASSERT_EQ(f.frobenius(f.mul(x, y), 1), f.mul(f.frobenius(x, 1), f.frobenius(y, 1)));
      if (!x.is_zero()) {
        ASSERT_EQ(f.mul(x, f.inv(x)), f.one());
      }
    }
  }
}

TEST(Properties, SubspaceEqualityIsSetEquality) {
  const Field f = make_field_of_order(3);
  const auto pf = gen::oracle_field(f);
  const auto all = enumerate_subspaces(f, 3);
  std::set<oracle::VecSet> sets;
  for (const auto &u : all) {
    EXPECT_EQ(canonical_subspace(f, 3, u.basis()), u);
    sets.insert(gen::vectors(pf, u));
  }
  EXPECT_EQ(sets.size(), all.size());
  // every spanning set of a subspace, not only its basis, gives the same value
  std::mt19937_64 rng(8);
  for (const auto &u : all) {
    const auto vs = gen::vectors(pf, u);
    const std::vector<oracle::Vec> pool(vs.begin(), vs.end());
    for (int trial = 0; trial < 5; ++trial) {
      std::vector<FieldElem> rows;
      for (int r = 0; r < 4; ++r)
        for (int x : pool[rng() % pool.size()])
          rows.push_back(f.elem(x));
      const auto s = canonical_subspace(f, 3, rows);
      EXPECT_TRUE(contains(f, u, s));
      EXPECT_EQ(s == u, gen::vectors(pf, s) == vs);
    }
  }
}

TEST(Properties, ModularLaw) {
  std::mt19937_64 rng(1234);
  const Field f = make_field_of_order(3);
  int checked = 0;
  while (checked < 10000) {
    const auto u = gen::subspace(f, 4, rng), v = gen::subspace(f, 4, rng);
    auto w = gen::subspace(f, 4, rng);
    w = sum_subspaces(f, w, u); // force U <= W
    ASSERT_EQ(sum_subspaces(f, u, intersect_subspaces(f, v, w)),
              intersect_subspaces(f, sum_subspaces(f, u, v), w));
    ++checked;
  }
}

TEST(Properties, SemilinearActionIsALatticeMap) {
  std::mt19937_64 rng(99);
  for (std::uint32_t q : {3u, 4u, 9u}) {
    const Field f = make_field_of_order(q);
    for (int trial = 0; trial < 500; ++trial) {
      const Matrix a = gen::invertible(f, 3, rng);
      const std::uint32_t t = static_cast<std::uint32_t>(rng() % f.k());
      const auto u = gen::subspace(f, 3, rng), v = gen::subspace(f, 3, rng);
      auto img = [&](const Subspace &x) { return apply_semilinear(f, a, t, x); };
      ASSERT_EQ(img(sum_subspaces(f, u, v)), sum_subspaces(f, img(u), img(v)));
      ASSERT_EQ(img(intersect_subspaces(f, u, v)),
                intersect_subspaces(f, img(u), img(v)));
      ASSERT_EQ(img(u).dim(), u.dim());
    }
  }
}

TEST(Properties, ModelActionAgreesWithMatrixAction) {
  std::mt19937_64 rng(5);
  const Field f = make_field_of_order(8);
  const SemilinearModel m(f, 3);
  for (int trial = 0; trial < 300; ++trial) {
    const auto g = gen::semilinear(m, rng);
    const auto u = gen::subspace(f, 3, rng);
    ASSERT_EQ(m.act(g, u), apply_semilinear(f, g.matrix(), g.t, u));
  }
}

TEST(Properties, SupportComponentsLieInBlocks) {
  std::mt19937_64 rng(77);
  for (auto [q, n, m] : std::vector<std::tuple<std::uint32_t, int, int>>{
           {5, 3, 1}, {4, 2, 2}, {3, 4, 2}, {2, 2, 4}}) {
    const Frame fr(make_field_of_order(q), n, m);
    for (int trial = 0; trial < 200; ++trial) {
      const auto x = gen::subspace(fr.field(), fr.ambient(), rng);
      const auto s = support(x, fr);
      Subspace total = fr.bottom();
      for (std::size_t i = 0; i < fr.n(); ++i) {
        ASSERT_TRUE(contains(fr.field(), fr.e(i), s.components[i]));
        total = sum_subspaces(fr.field(), total, s.components[i]);
      }
      ASSERT_TRUE(contains(fr.field(), total, x));
    }
  }
}

TEST(Properties, ClosureIsAGroup) {
  std::mt19937_64 rng(13);
  const Field f = make_field_of_order(3);
  const SemilinearModel m(f, 3);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<SemilinearAut> gens;
    const std::size_t count = 1 + rng() % 2;
    for (std::size_t i = 0; i < count; ++i)
      gens.push_back(gen::semilinear(m, rng));
    const auto es = closure(m, gens);
    ASSERT_TRUE(es.contains_key(m.key(m.identity())));
    ASSERT_EQ(5616u % es.size(), 0u); // Lagrange in PGL(3,3)
    std::vector<SemilinearAut> elems;
    for (const auto &k : es.keys())
      elems.push_back(m.decode(k));
    for (std::size_t i = 0; i < std::min<std::size_t>(elems.size(), 50); ++i) {
      const auto &x = elems[rng() % elems.size()];
      ASSERT_TRUE(es.contains_key(m.key(m.inverse(x))));
      for (int r = 0; r < 20; ++r)
        ASSERT_TRUE(es.contains_key(m.key(m.compose(x, elems[rng() % elems.size()]))));
    }
  }
}

TEST(Properties, GaloisConnectionAntitoneAndExtensive) {
  std::mt19937_64 rng(21);
  const Field f = make_field_of_order(3);
  const Frame fr(f, 3, 1);
  const SemilinearModel m(f, 3);
  const auto universe = enumerate_subspaces(f, 3);
  GroupHandle<SemilinearModel> g(m, standard_gens(m, fr, GenKind::full));
  g.materialize();
  const std::vector<SemilinearAut> all(g.element_view().begin(), g.element_view().end());
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<SemilinearAut> f1, f2;
    for (int i = 0; i < 3; ++i) {
      f1.push_back(all[uniform_below(rng, all.size())]);
      f2.push_back(f1.back());
    }
    f2.push_back(all[uniform_below(rng, all.size())]);
    const auto l1 = fixed_lattice(m, f1, universe);
    const auto l2 = fixed_lattice(m, f2, universe);
    ASSERT_TRUE(std::includes(l1.begin(), l1.end(), l2.begin(), l2.end()));

    // M is fixed by its own stabilizer
    std::vector<Subspace> mset;
    for (const auto &u : universe)
      if (uniform_below(rng, 10) == 0)
        mset.push_back(u);
    std::vector<SemilinearAut> stab;
    for (const auto &x : all)
      if (pointwise_fixes(m, x, mset))
        stab.push_back(x);
    const auto fixed = fixed_lattice(m, stab, universe);
    for (const auto &u : mset)
      ASSERT_TRUE(std::binary_search(fixed.begin(), fixed.end(), u));
  }
}

TEST(Properties, AtomStabilizersAreExtensive) {
  std::mt19937_64 rng(3);
  const Field f = make_field_of_order(5);
  const AtomModel m(f);
  const auto universe = enumerate_subspaces(f, 2);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<Subspace> mset;
    for (const auto &a : m.atoms())
      if (uniform_below(rng, 3) == 0)
        mset.push_back(a);
    const auto fixed = fixed_lattice(m, m.stabilizer_of(mset), universe);
    for (const auto &u : mset)
      EXPECT_TRUE(std::binary_search(fixed.begin(), fixed.end(), u));
  }
}

TEST(Properties, NetsFixTheirLattice) {
  for (auto [q, n, m] : std::vector<std::tuple<std::uint32_t, int, int>>{
           {3, 3, 1}, {2, 2, 2}, {2, 4, 1}}) {
    const Field f = make_field_of_order(q);
    const Frame fr(f, n, m);
    const SemilinearModel model(f, n * m);
    const auto universe = enumerate_subspaces(f, n * m);
    for (const auto &s : enumerate_dnets(n)) {
      const auto k = associated_K(s, fr);
      const auto fixed = fixed_lattice(model, net_group_gens(model, fr, s), universe);
      for (const auto &x : k.elements)
        ASSERT_TRUE(std::binary_search(fixed.begin(), fixed.end(), x)) << s.to_string();
    }
  }
}

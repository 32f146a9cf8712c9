#include <gtest/gtest.h>

#include "gra/algebra.hpp"
#include "gra/builders.hpp"
#include "support.hpp"

namespace gra {
namespace {

FiniteGroup klein() { return testing::klein_group(); }

std::vector<GlobalId> ids_of(const BaseSpace& u, Index x) {
  std::vector<GlobalId> out;
  for (Element e = 0; e < u.order(x); ++e) out.push_back(u.id(x, e));
  return out;
}

TEST(Complex, Z1) {
  const Algebra a = Algebra::from_frame(build_complex_algebra_frame(make_cyclic(1)));
  EXPECT_EQ(a.atom_count(), 1u);
  EXPECT_EQ(a.atom_relation(0), identity_on(a.space()));
}

TEST(Complex, Z6AtomsAreBijections) {
  const Algebra a = Algebra::from_frame(build_complex_algebra_frame(make_cyclic(6)));
  ASSERT_EQ(a.atom_count(), 6u);
  const auto all = ids_of(a.space(), 0);
  for (AtomId x = 0; x < 6; ++x) EXPECT_TRUE(a.atom_relation(x).is_bijection_between(all, all));
}

TEST(Complex, KleinAtomsSelfConverse) {
  const Algebra a = Algebra::from_frame(build_complex_algebra_frame(klein()));
  ASSERT_EQ(a.atom_count(), 4u);
  for (AtomId x = 0; x < 4; ++x) {
    EXPECT_EQ(a.converse_atom(x), x);
    EXPECT_EQ(rel_converse(a.atom_relation(x)), a.atom_relation(x));
  }
}

TEST(Power, TrivialGroupGivesRectangles) {
  const Frame f = build_power_frame(make_cyclic(1), ElementSet(1, {0}), 4, {{0, 2}, {1, 3}});
  const Algebra a = Algebra::from_frame(f);
  EXPECT_EQ(a.atom_count(), 8u);
  for (AtomId x = 0; x < a.atom_count(); ++x) {
    const AtomIndex& at = a.atom(x);
    EXPECT_EQ(a.atom_relation(x), rectangle(a.space(), at.x, at.y));
  }
}

TEST(Power, TrivialNormalSubgroupGivesFunctionalAtoms) {
  const Frame f = build_power_frame(klein(), ElementSet(4, {0}), 3, {{0, 1, 2}});
  const Algebra a = Algebra::from_frame(f);
  for (AtomId x = 0; x < a.atom_count(); ++x) {
    const AtomIndex& at = a.atom(x);
    EXPECT_TRUE(a.atom_relation(x).is_bijection_between(ids_of(a.space(), at.x),
                                                         ids_of(a.space(), at.y)));
  }
}

TEST(Power, WholeGroupGivesOneCrossAtom) {
  const Frame f = build_power_frame(make_cyclic(6), ElementSet::full(6), 3, {{0, 1, 2}});
  const Algebra a = Algebra::from_frame(f);
  for (Index x = 0; x < 3; ++x)
    for (Index y = 0; y < 3; ++y) {
      if (x == y) continue;
      const auto ids = a.atoms_of(x, y);
      ASSERT_EQ(ids.size(), 1u);
      EXPECT_EQ(a.atom_relation(ids[0]), rectangle(a.space(), x, y));
    }
}

TEST(Power, PerBlockGroups) {
  const Frame f = build_power_frame({PowerBlock{make_cyclic(4), ElementSet(4, {0, 2}), 2},
                                     PowerBlock{klein(), ElementSet(4, {0}), 2}});
  EXPECT_EQ(f.size(), 4u);
  EXPECT_EQ(f.blocks().size(), 2u);
  EXPECT_TRUE(check_frame_full(f).passed());
}

TEST(Power, NonNormalRefused) {
  const FiniteGroup g = testing::s3_group();
  EXPECT_THROW(build_power_frame(g, ElementSet(6, {0, 3}), 2, {{0, 1}}), Error);
}

TEST(Cyclic, RunningExample) {
  const Algebra a = Algebra::from_frame(build_cyclic_frame({6, 9}, {{6, 3}, {3, 9}}));
  EXPECT_EQ(a.atom_count(), 21u);
}

TEST(Cyclic, PairDense) {
  const Algebra a =
      Algebra::from_frame(build_cyclic_frame({2, 2, 2}, {{2, 2, 2}, {2, 2, 2}, {2, 2, 2}}));
  EXPECT_TRUE(a.measure_report().pair_dense);
  for (AtomId x = 0; x < a.atom_count(); ++x) {
    const AtomIndex& at = a.atom(x);
    if (at.x == at.y) continue;
    EXPECT_EQ(a.atom_relation(x).size(), 2u);
    EXPECT_TRUE(a.atom_relation(x).is_bijection_between(ids_of(a.space(), at.x),
                                                         ids_of(a.space(), at.y)));
  }
}

TEST(Cyclic, ConditionMessages) {
  auto message = [](std::vector<std::size_t> orders, KappaMatrix k) {
    try {
      build_cyclic_frame(orders, k);
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::condition_violation);
      return std::string(e.what());
    }
    return std::string("built");
  };
  EXPECT_EQ(message({6, 9}, {{6, 4}, {4, 9}}), "condition (i): 4 does not divide 6");
  EXPECT_EQ(message({6, 9}, {{3, 3}, {3, 9}}), "condition (ii): kappa_xx = 3 is not the order 6");
  EXPECT_EQ(message({6, 9}, {{6, 3}, {1, 9}}), "condition (iii): kappa_xy = 3 but kappa_yx = 1");
  EXPECT_EQ(message({6, 6, 6}, {{6, 2, 3}, {2, 6, 6}, {3, 6, 6}}).rfind("condition (iv)", 0), 0u);
}

TEST(Cyclic, CardinalityFormula) {
  testing::Rng rng(17);
  for (int i = 0; i < 15; ++i) {
    const testing::CyclicInput s = testing::random_cyclic_input(rng);
    const Algebra a = Algebra::from_frame(build_cyclic_frame(s.orders, s.kappa));
    for (AtomId x = 0; x < a.atom_count(); ++x) {
      const AtomIndex& at = a.atom(x);
      EXPECT_EQ(a.atoms_of(at.x, at.y).size(), s.kappa[at.x][at.y]);
      EXPECT_EQ(a.atom_relation(x).size(), s.orders[at.x] * (s.orders[at.y] / s.kappa[at.x][at.y]));
    }
  }
}

TEST(Cyclic, EveryOutputPassesFullCheck) {
  testing::Rng rng(23);
  for (int i = 0; i < 30; ++i) EXPECT_TRUE(check_frame_full(testing::random_cyclic_frame(rng)).passed());
}

}  // namespace
}  // namespace gra

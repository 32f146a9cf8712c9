#include <gtest/gtest.h>

#include "gra/gra.hpp"
#include "support.hpp"

namespace gra {
namespace {

TEST(Properties, VerifySuiteOnRandomFrames) {
  testing::Rng rng(1001);
  for (int i = 0; i < 12; ++i) {
    const Frame f = testing::random_cyclic_frame(rng, {.max_groups = 3, .max_order = 12});
    const VerifyReport rep = verify_algebra(Algebra::from_frame(f), {.sampled_triples = 2000});
    std::ostringstream out;
    rep.print(out);
    EXPECT_TRUE(rep.passed()) << emit_frame(f) << out.str();
  }
}

TEST(Properties, VerifySuiteOnTableGroups) {
  const FiniteGroup s3 = testing::s3_group();
  for (const Frame& f :
       {build_complex_algebra_frame(s3),
        build_power_frame(s3, ElementSet(6, {0, 1, 2}), 3, {{0, 1, 2}}),
        build_power_frame(testing::klein_group(), ElementSet(4, {0, 3}), 2, {{0, 1}})}) {
    const VerifyReport rep = verify_algebra(Algebra::from_frame(f));
    std::ostringstream out;
    rep.print(out);
    EXPECT_TRUE(rep.passed()) << out.str();
  }
}

TEST(Properties, FullAndReducedAgree) {
  testing::Rng rng(2002);
  for (int i = 0; i < 40; ++i) {
    const Frame f = i % 2 ? testing::random_cyclic_frame(rng)
                          : testing::random_corruption(rng, static_cast<std::size_t>(i / 2));
    EXPECT_EQ(check_frame_full(f).passed(), check_frame_reduced(f).passed());
    if (i % 2 == 0) {
      EXPECT_FALSE(check_frame_reduced(f).passed());
    }
  }
}

// The frame verdict against closure of the explicit atom relations.
TEST(Properties, VerdictMatchesOracleClosure) {
  testing::Rng rng(3003);
  for (int i = 0; i < 24; ++i) {
    const Frame f = i % 2 ? testing::random_cyclic_frame(rng, {.max_groups = 3, .max_order = 8})
                          : testing::random_corruption(rng, static_cast<std::size_t>(i / 2));
    EXPECT_EQ(check_frame_reduced(f).passed(), atoms_closed_under_operations(f));
  }
}

TEST(Properties, FastPathsAgree) {
  testing::Rng rng(4004);
  for (int i = 0; i < 10; ++i) {
    const Algebra a = Algebra::from_frame(testing::random_cyclic_frame(rng));
    for (AtomId x = 0; x < a.atom_count(); ++x)
      for (AtomId y = 0; y < a.atom_count(); ++y)
        if (a.fast_path(x, y) != FastPath::none) {
          ASSERT_EQ(a.fast_compose_subidentity(x, y), a.compose_atoms(x, y));
        }
  }
}

TEST(Properties, SomeImpliesAllClosure) {
  // Converse and composition of every atom pair land in the frame relations:
  // the results are atom sets inside the expected rectangle.
  testing::Rng rng(5005);
  for (int i = 0; i < 10; ++i) {
    const Algebra a = Algebra::from_frame(testing::random_cyclic_frame(rng));
    for (AtomId x = 0; x < a.atom_count(); ++x) {
      const AtomIndex& l = a.atom(x);
      EXPECT_EQ(a.atom(a.converse_atom(x)).x, l.y);
      for (AtomId y : a.atoms_of(l.y, l.y)) {
        const FrameElement r = a.compose_atoms(x, y);
        EXPECT_EQ(r.size(), 1u);
        for (AtomId z : r.atoms()) EXPECT_EQ(std::pair(a.atom(z).x, a.atom(z).y), std::pair(l.x, l.y));
      }
    }
  }
}

}  // namespace
}  // namespace gra

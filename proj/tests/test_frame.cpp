#include <gtest/gtest.h>

#include "gra/builders.hpp"
#include "gra/frame.hpp"
#include "gra/frame_check.hpp"
#include "support.hpp"

namespace gra {
namespace {

using testing::running_example;

ElementSet set(std::size_t n, std::initializer_list<Element> e) { return ElementSet(n, e); }

TEST(Resolve, SquareIsIdentityOfTrivialQuotient) {
  const Frame f = running_example();
  const IsoRecord r = resolve_iso(f, 1, 1);
  ASSERT_EQ(r.count(), 9u);
  EXPECT_EQ(r.h.subgroup(), set(9, {0}));
  for (std::size_t g = 0; g < 9; ++g) {
    EXPECT_EQ(r.h.coset(g), set(9, {static_cast<Element>(g)}));
    EXPECT_EQ(r.k.coset(g), r.h.coset(g));
  }
}

TEST(Resolve, ReversedPairSwapsSystems) {
  const Frame f = running_example();
  const IsoRecord fwd = resolve_iso(f, 0, 1);
  const IsoRecord back = resolve_iso(f, 1, 0);
  EXPECT_EQ(back.h.subgroup(), set(9, {0, 3, 6}));
  EXPECT_EQ(back.k.subgroup(), set(6, {0, 3}));
  for (std::size_t g = 0; g < 3; ++g) {
    EXPECT_EQ(back.h.coset(g), fwd.k.coset(g));
    EXPECT_EQ(back.k.coset(g), fwd.h.coset(g));
  }
}

TEST(Resolve, UnrelatedPair) {
  const Frame f = build_cyclic_frame({2, 3}, {{2, 0}, {0, 3}});
  try {
    resolve_iso(f, 0, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::not_related);
  }
}

TEST(Resolve, ReverseIsCosetMapInverseEverywhere) {
  testing::Rng rng(7);
  for (int i = 0; i < 20; ++i) {
    const Frame f = testing::random_cyclic_frame(rng);
    for (Index x = 0; x < f.size(); ++x)
      for (Index y = 0; y < f.size(); ++y) {
        if (!f.related(x, y)) continue;
        const IsoRecord a = resolve_iso(f, x, y), b = resolve_iso(f, y, x);
        ASSERT_EQ(a.count(), b.count());
        for (std::size_t g = 0; g < a.count(); ++g) {
          // phi_yx(phi_xy(H_g)) = H_g
          EXPECT_EQ(*b.image(*a.image(a.h.coset(g))), a.h.coset(g));
        }
      }
  }
}

TEST(Frame, StructuralValidation) {
  const FiniteGroup z2 = make_cyclic(2);
  // In-block pair without an isomorphism.
  EXPECT_THROW(Frame({z2, z2}, {}, {{0, 1}}, {}), Error);
  // Index in no block.
  EXPECT_THROW(Frame({z2, z2}, {}, {{0}}, {}), Error);
  // Duplicate labels.
  EXPECT_THROW(Frame({z2, z2}, {"a", "a"}, {{0}, {1}}, {}), Error);
  // Isomorphism across blocks.
  const IsoRecord r = make_iso_record(0, z2, set(2, {0}), 1, z2, set(2, {0}), std::vector<Index>{0, 1});
  EXPECT_THROW(Frame({z2, z2}, {}, {{0}, {1}}, {r}), Error);
  // Stored records must have x<y.
  EXPECT_THROW(Frame({z2, z2}, {}, {{0, 1}}, {r.inverse()}), Error);
}

TEST(Frame, IsoRecordRejectsNonIsomorphism) {
  const FiniteGroup z4 = make_cyclic(4);
  EXPECT_THROW(make_iso_record(0, z4, set(4, {0}), 1, z4, set(4, {0}), std::vector<Index>{0, 2, 1, 3}),
               Error);
}

TEST(Induced, BackToStartCollapses) {
  const Frame f = running_example();
  const InducedIso ind = induced_iso(f, 0, 1, 0);
  // P0 = K_01 * H_10 = K_01, M0 = H_01.
  EXPECT_EQ(ind.p.subgroup(), set(9, {0, 3, 6}));
  EXPECT_EQ(ind.m.subgroup(), set(6, {0, 3}));
  EXPECT_EQ(ind.n.subgroup(), set(6, {0, 3}));
  ASSERT_TRUE(ind.xz_map.has_value());
  for (std::size_t i = 0; i < ind.xz_map->size(); ++i) EXPECT_EQ((*ind.xz_map)[i], i);
  EXPECT_TRUE(ind.composition_matches());
}

TEST(Induced, SquareFirstLegIsPhiYZ) {
  const Frame f = running_example();
  const InducedIso ind = induced_iso(f, 0, 0, 1);
  const IsoRecord r = resolve_iso(f, 0, 1);
  EXPECT_EQ(ind.m.subgroup(), r.h.subgroup());
  EXPECT_EQ(ind.n.subgroup(), r.k.subgroup());
  EXPECT_TRUE(ind.composition_matches());
}

TEST(Induced, ThreeGroupsAgainstGeneratedSubgroup) {
  // Z6, Z9, Z12 with kappa 3 everywhere.
  const Frame f = build_cyclic_frame({6, 9, 12}, {{6, 3, 3}, {3, 9, 3}, {3, 3, 12}});
  const InducedIso ind = induced_iso(f, 0, 1, 2);
  // Brute force: the subgroup generated by K_01 and H_12 in Z9.
  const IsoRecord a = resolve_iso(f, 0, 1), b = resolve_iso(f, 1, 2);
  ElementSet gen = a.k.subgroup() | b.h.subgroup();
  const FiniteGroup z9 = make_cyclic(9);
  for (bool grew = true; grew;) {
    grew = false;
    for (Element u : gen.elements())
      for (Element v : gen.elements())
        if (!gen.contains(z9.op(u, v))) {
          gen.insert(z9.op(u, v));
          grew = true;
        }
  }
  EXPECT_EQ(ind.p.subgroup(), gen);
  EXPECT_TRUE(ind.composition_matches());
}

TEST(Check, SingleGroupPasses) {
  const Frame f = build_complex_algebra_frame(make_cyclic(5));
  EXPECT_TRUE(check_frame_full(f).passed());
  EXPECT_TRUE(check_frame_reduced(f).passed());
}

TEST(Check, RunningExamplePasses) {
  const Frame f = running_example();
  EXPECT_TRUE(check_frame_full(f).passed());
  EXPECT_TRUE(check_frame_reduced(f).passed());
}

TEST(Check, SquareCorruptionIsConditionOne) {
  testing::Rng rng(3);
  const Frame f = testing::corrupt_square(rng);
  for (const FrameReport& r : {check_frame_full(f), check_frame_reduced(f)}) {
    ASSERT_FALSE(r.passed());
    bool saw_one = false;
    for (const auto& v : r.violations) saw_one = saw_one || v.condition == 1;
    EXPECT_TRUE(saw_one);
  }
}

TEST(Check, ConverseCorruptionIsConditionTwo) {
  testing::Rng rng(4);
  const Frame f = testing::corrupt_converse(rng);
  const FrameReport r = check_frame_reduced(f);
  ASSERT_FALSE(r.passed());
  EXPECT_EQ(r.violations.front().condition, 2);
  EXPECT_FALSE(check_frame_full(f).passed());
}

TEST(Check, TwistIsConditionFour) {
  testing::Rng rng(5);
  const Frame f = testing::corrupt_by_twist(rng);
  const FrameReport r = check_frame_reduced(f);
  ASSERT_FALSE(r.passed());
  for (const auto& v : r.violations) EXPECT_EQ(v.condition, 4);
  EXPECT_FALSE(check_frame_full(f).passed());
}

TEST(Check, GcdBreakIsConditionThree) {
  testing::Rng rng(6);
  const Frame f = testing::corrupt_by_kappa(rng);
  const FrameReport r = check_frame_reduced(f);
  ASSERT_FALSE(r.passed());
  EXPECT_EQ(r.violations.front().condition, 3);
}

TEST(Check, TwoGroupBlockHasNoTriples) {
  const FrameReport r = check_frame_reduced(running_example());
  // (i) for two groups and (ii) for one pair.
  EXPECT_EQ(r.checks, 3u);
}

TEST(Check, BlocksAreCheckedSeparately) {
  const Frame f = build_cyclic_frame({4, 6, 9}, {{4, 0, 0}, {0, 6, 0}, {0, 0, 9}});
  EXPECT_EQ(f.blocks().size(), 3u);
  EXPECT_EQ(check_frame_reduced(f).checks, 3u);
  EXPECT_TRUE(check_frame_full(f).passed());
}

TEST(Check, ReportFormat) {
  testing::Rng rng(5);
  const Frame f = testing::corrupt_by_twist(rng);
  std::ostringstream out;
  check_frame_reduced(f).print(out, f);
  EXPECT_EQ(out.str().rfind("reduced frame check: FAIL", 0), 0u);
  EXPECT_NE(out.str().find("condition (iv) at (0,1,"), std::string::npos);
}

TEST(ImageEquations, HoldOnPassingFrames) {
  testing::Rng rng(11);
  for (int i = 0; i < 20; ++i) {
    const Frame f = testing::random_cyclic_frame(rng);
    for (const auto& b : f.blocks())
      for (Index x : b)
        for (Index y : b)
          for (Index z : b) {
            const IsoRecord xy = resolve_iso(f, x, y), yz = resolve_iso(f, y, z),
                            xz = resolve_iso(f, x, z);
            const ElementSet hh = complex_product(f.group(x), xy.h.subgroup(), xz.h.subgroup());
            const ElementSet kh = complex_product(f.group(y), xy.k.subgroup(), yz.h.subgroup());
            const ElementSet kk = complex_product(f.group(z), xz.k.subgroup(), yz.k.subgroup());
            EXPECT_EQ(*xy.image(hh), kh);
            EXPECT_EQ(*yz.image(kh), kk);
            EXPECT_EQ(*xz.image(hh), kk);
            const InducedIso back = induced_iso(f, x, y, x);
            EXPECT_EQ(back.m.subgroup(), xy.h.subgroup());
            EXPECT_TRUE(back.composition_matches());
          }
  }
}

TEST(Restrict, KeepsRecords) {
  const Frame f = build_cyclic_frame({4, 6, 9, 12}, {{4, 0, 0, 0}, {0, 6, 3, 3}, {0, 3, 9, 3}, {0, 3, 3, 12}});
  const Frame r = restrict_to_block(f, f.blocks()[1]);
  EXPECT_EQ(r.size(), 3u);
  EXPECT_EQ(r.label(0), "1");
  EXPECT_EQ(resolve_iso(r, 0, 2).h, resolve_iso(f, 1, 3).h);
  EXPECT_TRUE(check_frame_full(r).passed());
}

}  // namespace
}  // namespace gra

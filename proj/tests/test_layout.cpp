//
// Project ocsrkit - Copyright 2026 ocsrkit authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "molgen.h"
#include "ocsrkit/layout.h"

using namespace ocsrkit;

namespace {

double dist(const Point &a, const Point &b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

}  // namespace

TEST(Layout, SingleAtomAtOrigin) {
  auto p = layout2d(parse_smiles("C"));
  ASSERT_EQ(p.size(), 1u);
  EXPECT_EQ(p[0].x, 0.0);
  EXPECT_EQ(p[0].y, 0.0);
}

TEST(Layout, BenzeneIsRegularHexagon) {
  MolGraph g = parse_smiles("c1ccccc1");
  auto p = layout2d(g);
  ASSERT_EQ(p.size(), 6u);
  const auto &ring = g.ring_paths()[0];
  const double side = dist(p[ring[0]], p[ring[1]]);
  for (std::size_t i = 0; i < 6; ++i) {
    EXPECT_NEAR(dist(p[ring[i]], p[ring[(i + 1) % 6]]), side, 1e-6);
    EXPECT_NEAR(dist(p[ring[i]], p[ring[(i + 2) % 6]]), side * std::sqrt(3.0),
                1e-6);
    EXPECT_NEAR(dist(p[ring[i]], p[ring[(i + 3) % 6]]), 2 * side, 1e-6);
  }
}

TEST(Layout, ChainUnitSpacingAtOneTwenty) {
  auto p = layout2d(parse_smiles("CCO"));
  ASSERT_EQ(p.size(), 3u);
  EXPECT_NEAR(dist(p[0], p[1]), 1.0, 1e-6);
  EXPECT_NEAR(dist(p[1], p[2]), 1.0, 1e-6);
  // 120 degrees at the middle atom puts the ends sqrt(3) apart.
  EXPECT_NEAR(dist(p[0], p[2]), std::sqrt(3.0), 1e-6);
}

TEST(Layout, RandomMoleculesFiniteWithSaneTreeBonds) {
  std::mt19937_64 rng(8);
  testsupport::MolGenOptions opts;
  opts.fragments = true;
  for (int i = 0; i < 500; ++i) {
    MolGraph g = testsupport::random_molecule(rng, opts);
    auto p = layout2d(g);
    ASSERT_EQ(static_cast<int>(p.size()), g.atom_count());
    for (const Point &q: p)
      ASSERT_TRUE(std::isfinite(q.x) && std::isfinite(q.y));
    for (int b = 0; b < g.bond_count(); ++b) {
      if (g.is_ring_bond(b))
        continue;
      const double d = dist(p[g.bond(b).begin], p[g.bond(b).end]);
      ASSERT_GE(d, 0.5) << write_smiles(g);
      ASSERT_LE(d, 1.5) << write_smiles(g);
    }
  }
}

TEST(Layout, DocumentOverload) {
  ESmilesDoc d = parse_esmiles("*c1ccccc1<sep><a>0:R[1]</a>");
  EXPECT_EQ(layout2d(d).size(), 7u);
}

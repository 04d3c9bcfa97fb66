//
// Project ocsrkit - Copyright 2026 ocsrkit authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "molgen.h"
#include "ocsrkit/errors.h"
#include "ocsrkit/fingerprint.h"

using namespace ocsrkit;

namespace {

// Reference implementation of the documented byte layout, using textbook
// FNV-1a constants.
struct Reference {
  static std::uint64_t fnv(const std::vector<std::uint8_t> &b) {
    std::uint64_t h = 14695981039346656037ULL;
    for (std::uint8_t x: b)
      h = (h ^ x) * 1099511628211ULL;
    return h;
  }
  static void put(std::vector<std::uint8_t> &b, std::int64_t v) {
    std::uint32_t u = static_cast<std::uint32_t>(v);
    for (int i = 0; i < 4; ++i)
      b.push_back(static_cast<std::uint8_t>((u >> (8 * i)) & 0xff));
  }
  static std::set<int> bits(const MolGraph &g, int radius, int width) {
    const int n = g.atom_count();
    std::vector<std::uint64_t> ids(n);
    std::set<int> out;
    for (int a = 0; a < n; ++a) {
      std::vector<std::uint8_t> b;
      const Atom &x = g.atom(a);
      for (std::int64_t v: { std::int64_t { 0 },
                             std::int64_t { x.atomic_number },
                             std::int64_t { x.charge },
                             std::int64_t { g.degree(a) },
                             std::int64_t { x.aromatic },
                             std::int64_t { x.atomic_number == 0 },
                             std::int64_t { g.hydrogen_count(a) },
                             std::int64_t { x.isotope.value_or(0) } })
        put(b, v);
      ids[a] = fnv(b);
      out.insert(static_cast<int>(ids[a] % width));
    }
    for (int r = 1; r <= radius; ++r) {
      std::vector<std::uint64_t> next(n);
      for (int a = 0; a < n; ++a) {
        std::vector<std::pair<int, std::uint64_t>> env;
        for (const Neighbor &nb: g.neighbors(a))
          env.emplace_back(static_cast<int>(g.bond(nb.bond).order),
                           ids[nb.atom]);
        std::sort(env.begin(), env.end());
        std::vector<std::uint8_t> b;
        put(b, r);
        put(b, static_cast<std::int64_t>(ids[a] & 0xffffffffu));
        put(b, static_cast<std::int64_t>(ids[a] >> 32));
        for (auto [order, id]: env) {
          put(b, order);
          put(b, static_cast<std::int64_t>(id & 0xffffffffu));
          put(b, static_cast<std::int64_t>(id >> 32));
        }
        next[a] = fnv(b);
      }
      ids = next;
      for (auto id: ids)
        out.insert(static_cast<int>(id % width));
    }
    return out;
  }
};

Fingerprint from_bits(std::initializer_list<int> bits) {
  Fingerprint fp;
  for (int b: bits)
    fp.set(b);
  return fp;
}

}  // namespace

TEST(Fnv1a, KnownVectors) {
  EXPECT_EQ(fnv1a64({}), 0xcbf29ce484222325ULL);
  const std::uint8_t a[] = { 'a' };
  EXPECT_EQ(fnv1a64(a), 0xaf63dc4c8601ec8cULL);
  const std::uint8_t foobar[] = { 'f', 'o', 'o', 'b', 'a', 'r' };
  EXPECT_EQ(fnv1a64(foobar), 0x85944171f73967e8ULL);
}

TEST(CircularFp, SingleAtomHasAtMostThreeBits) {
  Fingerprint fp = circular_fp(parse_smiles("C"));
  EXPECT_GE(fp.popcount(), 1);
  EXPECT_LE(fp.popcount(), 3);
}

TEST(CircularFp, MatchesReferenceLayout) {
  std::mt19937_64 rng(21);
  testsupport::MolGenOptions opts;
  opts.star_rate = 0.1;
  for (int i = 0; i < 300; ++i) {
    MolGraph g = testsupport::random_molecule(rng, opts);
    for (FingerprintParams p: { FingerprintParams {},
                                FingerprintParams { 0, 64 },
                                FingerprintParams { 3, 1024 } }) {
      auto on = circular_fp(g, p).on_bits();
      auto ref = Reference::bits(g, p.radius, p.width);
      ASSERT_EQ(std::set<int>(on.begin(), on.end()), ref) << write_smiles(g);
    }
  }
}

TEST(CircularFp, RootAndPermutationInvariant) {
  MolGraph cco = parse_smiles("CCO");
  EXPECT_EQ(circular_fp(cco), circular_fp(parse_smiles(write_smiles(cco, 2))));

  std::mt19937_64 rng(4);
  for (int i = 0; i < 300; ++i) {
    MolGraph g = testsupport::random_molecule(rng);
    const Fingerprint fp = circular_fp(g);
    ASSERT_GE(fp.popcount(), 1);
    const int root = static_cast<int>(rng() % g.atom_count());
    ASSERT_EQ(circular_fp(parse_smiles(write_smiles(g, root))), fp);
    ESmilesDoc d { g, {}, {} };
    auto perm = testsupport::random_permutation(rng, g.atom_count());
    ASSERT_EQ(circular_fp(testsupport::permute_document(d, perm).graph), fp);
  }
}

TEST(CircularFp, DistinguishesSimpleMolecules) {
  EXPECT_NE(circular_fp(parse_smiles("CCO")), circular_fp(parse_smiles("CCN")));
  EXPECT_LT(tanimoto(circular_fp(parse_smiles("CCO")),
                     circular_fp(parse_smiles("CCN"))), 1.0);
  // Stars carry their own environment.
  EXPECT_NE(circular_fp(parse_smiles("*c1ccccc1")),
            circular_fp(parse_smiles("c1ccccc1")));
}

TEST(CircularFp, HexIsWidthOverFour) {
  Fingerprint fp = circular_fp(parse_smiles("CC"), { 2, 256 });
  EXPECT_EQ(fp.hex().size(), 64u);
  Fingerprint one({ 2, 64 });
  one.set(0);
  EXPECT_EQ(one.hex(), "0000000000000001");
}

TEST(Tanimoto, DefinitionExamples) {
  EXPECT_DOUBLE_EQ(tanimoto(from_bits({ 1, 2, 3 }), from_bits({ 2, 3, 4 })), 0.5);
  EXPECT_EQ(tanimoto(from_bits({ 1 }), from_bits({ 2 })), 0.0);
  EXPECT_EQ(tanimoto(from_bits({}), from_bits({})), 0.0);
  Fingerprint x = circular_fp(parse_smiles("c1ccccc1O"));
  EXPECT_EQ(tanimoto(x, x), 1.0);
}

TEST(Tanimoto, SymmetricAndBounded) {
  std::mt19937_64 rng(6);
  for (int i = 0; i < 200; ++i) {
    Fingerprint a = circular_fp(testsupport::random_molecule(rng));
    Fingerprint b = circular_fp(testsupport::random_molecule(rng));
    const double t = tanimoto(a, b);
    ASSERT_EQ(t, tanimoto(b, a));
    ASSERT_GE(t, 0.0);
    ASSERT_LE(t, 1.0);
  }
}

TEST(Tanimoto, ParamMismatch) {
  EXPECT_THROW(tanimoto(Fingerprint({ 2, 1024 }), Fingerprint({ 2, 2048 })),
               ParamMismatch);
  EXPECT_THROW(tanimoto(Fingerprint({ 1, 2048 }), Fingerprint({ 2, 2048 })),
               ParamMismatch);
}

TEST(FingerprintParams, Validation) {
  EXPECT_THROW(Fingerprint({ 2, 100 }), std::invalid_argument);
  EXPECT_THROW(Fingerprint({ 2, 32 }), std::invalid_argument);
  EXPECT_THROW(Fingerprint({ 9, 2048 }), std::invalid_argument);
  EXPECT_THROW(Fingerprint({ -1, 2048 }), std::invalid_argument);
  EXPECT_NO_THROW(Fingerprint({ 8, 64 }));
}

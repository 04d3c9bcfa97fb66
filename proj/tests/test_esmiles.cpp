//
// Project ocsrkit - Copyright 2026 ocsrkit authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>
#include <tuple>

#include "molgen.h"
#include "oracle.h"
#include "ocsrkit/errors.h"
#include "ocsrkit/esmiles.h"

using namespace ocsrkit;

namespace {

const char *const kGolden[] = {
  "*c1ccccc1<sep><a>0:R[1]</a>",
  "*C(O)=O<sep><a>0:<dum></a>",
  "c1ccccc1<sep><r>0:R[1]</r><r>0:R[2]</r>",
  "**C1*C(*)=C(C(*)(*)C2=CC=NC=C2)N=1<sep><a>0:R[4]</a><a>1:X</a>"
  "<r>1:R[5]?n</r><a>3:Z</a><a>5:R[3]</a><a>8:R[2]</a><a>9:R[1]</a>",
  "*C(NC(*)(*)C(*)(*)*)C(=O)N(*)*<sep><a>0:R[1]</a><a>4:R[3]</a>"
  "<a>5:R[2]</a><a>7:R[5]</a><a>8:R[4]</a><c>0:B</c><a>13:R[7]</a>"
  "<a>14:R[6]</a>",
  "*OC(=O)C1=CC=CC=C1C#C*<sep><a>0:R</a><a>12:Ph</a>",
  "O=c1c2c(cccc2)c(*)c(*)o1<sep><a>9:B</a><a>11:Ph</a>",
  "O=c1oc(*)c(*)c2ccccc12<sep><a>4:Ph</a><a>6:Bpin</a>",
};

using AnnKey = std::tuple<AnnotationKind, int, std::string, std::string>;

std::multiset<AnnKey> annotation_set(const ESmilesDoc &d) {
  std::multiset<AnnKey> s;
  for (const Annotation &a: d.annotations)
    s.emplace(a.kind, a.index, a.group_name, a.repeat.value_or(""));
  return s;
}

// Substituents and abstract-ring bindings expressed as (atom, name), with
// atoms passed through `map`.
std::multiset<std::pair<int, std::string>>
atom_bindings(const ESmilesDoc &d, const std::vector<int> &map) {
  std::multiset<std::pair<int, std::string>> s;
  for (const Annotation &a: d.annotations) {
    if (a.kind == AnnotationKind::kSubstituent)
      s.emplace(map[a.index], "a:" + a.group_name);
    else if (a.kind == AnnotationKind::kAbstractRing && a.bound_atom)
      s.emplace(map[*a.bound_atom], "c:" + a.group_name);
  }
  return s;
}

std::vector<int> identity_map(int n) {
  std::vector<int> m(n);
  for (int i = 0; i < n; ++i)
    m[i] = i;
  return m;
}

}  // namespace

TEST(ParseEsmiles, SubstituentOnStar) {
  ESmilesDoc d = parse_esmiles("*c1ccccc1<sep><a>0:R[1]</a>");
  EXPECT_EQ(d.graph.atom_count(), 7);
  ASSERT_EQ(d.annotations.size(), 1u);
  EXPECT_EQ(d.annotations[0].kind, AnnotationKind::kSubstituent);
  EXPECT_EQ(d.annotations[0].index, 0);
  EXPECT_EQ(d.annotations[0].group_name, "R[1]");
  EXPECT_FALSE(d.annotations[0].repeat);
}

TEST(ParseEsmiles, ConnectionPointToken) {
  ESmilesDoc d = parse_esmiles("*C(O)=O<sep><a>0:<dum></a>");
  ASSERT_EQ(d.annotations.size(), 1u);
  EXPECT_EQ(d.annotations[0].group_name, kDummy);
}

TEST(ParseEsmiles, TwoRingAttachments) {
  ESmilesDoc d = parse_esmiles("c1ccccc1<sep><r>0:R[1]</r><r>0:R[2]</r>");
  ASSERT_EQ(d.annotations.size(), 2u);
  for (const Annotation &a: d.annotations) {
    EXPECT_EQ(a.kind, AnnotationKind::kRingAttachment);
    EXPECT_EQ(a.index, 0);
  }
  EXPECT_EQ(d.annotations[0].group_name, "R[1]");
  EXPECT_EQ(d.annotations[1].group_name, "R[2]");
}

TEST(ParseEsmiles, RepeatSuffixStripped) {
  ESmilesDoc d = parse_esmiles(kGolden[3]);
  auto it = std::find_if(d.annotations.begin(), d.annotations.end(),
                         [](const Annotation &a) {
                           return a.kind == AnnotationKind::kRingAttachment;
                         });
  ASSERT_NE(it, d.annotations.end());
  EXPECT_EQ(it->index, 1);
  EXPECT_EQ(it->group_name, "R[5]");
  EXPECT_EQ(it->repeat, "n");
}

TEST(ParseEsmiles, AbstractRingBindsRemainingStar) {
  ESmilesDoc d = parse_esmiles(kGolden[4]);
  std::vector<int> stars;
  for (int v = 0; v < d.graph.atom_count(); ++v)
    if (d.graph.atom(v).is_star())
      stars.push_back(v);
  EXPECT_EQ(stars, (std::vector<int>{ 0, 4, 5, 7, 8, 9, 13, 14 }));
  auto it = std::find_if(d.annotations.begin(), d.annotations.end(),
                         [](const Annotation &a) {
                           return a.kind == AnnotationKind::kAbstractRing;
                         });
  ASSERT_NE(it, d.annotations.end());
  EXPECT_EQ(it->bound_atom, 9);
  EXPECT_TRUE(validate_esmiles(d).empty());
}

TEST(ParseEsmiles, NoSeparatorIsPlainMolecule) {
  ESmilesDoc d = parse_esmiles("CCO");
  EXPECT_TRUE(d.annotations.empty());
  EXPECT_EQ(d.graph.atom_count(), 3);
  EXPECT_EQ(smiles_part("CCO"), "CCO");
  EXPECT_EQ(smiles_part("C*<sep><a>1:R</a>"), "C*");
}

TEST(ParseEsmiles, Errors) {
  EXPECT_THROW(parse_esmiles(""), Error);
  EXPECT_THROW(parse_esmiles("*C<sep><a>0R</a>"), SyntaxError);
  EXPECT_THROW(parse_esmiles("*C<sep><a>0:R"), SyntaxError);
  EXPECT_THROW(parse_esmiles("*C<sep><q>0:R</q>"), SyntaxError);
  EXPECT_THROW(parse_esmiles("*C<sep><a>x:R</a>"), SyntaxError);
  EXPECT_THROW(parse_esmiles("*C<sep><a>0:</a>"), SyntaxError);
  EXPECT_THROW(parse_esmiles("*C<sep><a>0:R?</a>"), SyntaxError);
  EXPECT_THROW(parse_esmiles("*C<sep><a>5:R</a>"), IndexError);
  EXPECT_NO_THROW(parse_esmiles("*C<sep><a>5:R</a>", ParseMode::kLenient));
  EXPECT_THROW(parse_esmiles("C(C<sep>"), SyntaxError);
}

TEST(ValidateEsmiles, GoldenStringsAreStrictValid) {
  for (const char *s: kGolden) {
    ESmilesDoc d = parse_esmiles(s);
    EXPECT_TRUE(validate_esmiles(d, ParseMode::kStrict).empty()) << s;
    EXPECT_TRUE(check_esmiles(s).empty()) << s;
  }
}

TEST(ValidateEsmiles, UncoveredStar) {
  auto strict = check_esmiles("*C<sep>", ParseMode::kStrict);
  ASSERT_EQ(strict.size(), 1u);
  EXPECT_EQ(strict[0].code, ViolationCode::kStarUncovered);
  EXPECT_EQ(strict[0].atom, 0);
  EXPECT_TRUE(check_esmiles("*C<sep>", ParseMode::kLenient).empty());
}

TEST(ValidateEsmiles, RingIndexOutOfRange) {
  auto v = check_esmiles("c1ccccc1<sep><r>3:R</r>");
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].code, ViolationCode::kRingIndexOutOfRange);
  EXPECT_EQ(v[0].annotation, 0);
}

TEST(ValidateEsmiles, OtherViolations) {
  auto codes = [](std::string_view s) {
    std::vector<ViolationCode> out;
    for (const Violation &v: check_esmiles(s))
      out.push_back(v.code);
    return out;
  };
  using VC = ViolationCode;
  EXPECT_EQ(codes("*CC<sep><a>1:R</a><a>0:R</a>"),
            (std::vector<VC>{ VC::kSubstituentOnNonStar }));
  EXPECT_EQ(codes("*C<sep><a>0:R</a><a>0:X</a>"),
            (std::vector<VC>{ VC::kStarCoveredTwice }));
  EXPECT_EQ(codes("*C<sep><a>7:R</a><a>0:X</a>"),
            (std::vector<VC>{ VC::kAtomIndexOutOfRange }));
  EXPECT_EQ(codes("*C<sep><c>0:B?n</c>"),
            (std::vector<VC>{ VC::kRepeatOnAbstractRing }));
  EXPECT_EQ(codes("C<sep><c>0:B</c>"),
            (std::vector<VC>{ VC::kAbstractRingUnbound }));
  EXPECT_EQ(codes("C(C)(C)(C)(C)C"), (std::vector<VC>{ VC::kValence }));
  EXPECT_EQ(codes("C(("), (std::vector<VC>{ VC::kSyntax }));
  EXPECT_TRUE(codes("*C*<sep><a>0:R</a><a>2:R</a>").empty());
}

TEST(WriteEsmiles, GoldenRoundTrip) {
  for (const char *s: kGolden) {
    ESmilesDoc d = parse_esmiles(s);
    std::string w = write_esmiles(d);
    ESmilesDoc back = parse_esmiles(w);
    EXPECT_TRUE(validate_esmiles(back).empty()) << w;
    EXPECT_EQ(write_esmiles(back), w) << s;
    // Root 0 keeps atom order where the source is in DFS order.
    WrittenSmiles ws = write_smiles_ordered(d.graph, 0);
    std::vector<int> pos(d.graph.atom_count());
    for (int k = 0; k < d.graph.atom_count(); ++k)
      pos[ws.order[k]] = k;
    EXPECT_EQ(atom_bindings(d, pos),
              atom_bindings(back, identity_map(back.graph.atom_count())))
        << s;
    EXPECT_TRUE(testsupport::isomorphic(d.graph, back.graph)) << s;
  }
}

TEST(WriteEsmiles, NoAnnotationsMeansNoSeparator) {
  EXPECT_EQ(write_esmiles(parse_esmiles("OCC<sep>")), "OCC");
  EXPECT_EQ(write_esmiles(parse_esmiles("c1ccccc1")), "c1ccccc1");
}

TEST(WriteEsmiles, SortedEmission) {
  ESmilesDoc d = parse_esmiles(
      "*C1CC1*<sep><r>0:Y</r><a>4:R</a><c>0:B</c><a>0:X</a>",
      ParseMode::kLenient);
  EXPECT_EQ(write_esmiles(d), "*C1CC1*<sep><a>0:X</a><r>0:Y</r><c>0:B</c>"
                              "<a>4:R</a>");
}

TEST(WriteEsmiles, RandomDocumentsAreFixpoints) {
  std::mt19937_64 rng(5);
  testsupport::MolGenOptions opts;
  opts.star_rate = 0.15;
  for (int i = 0; i < 1000; ++i) {
    ESmilesDoc d = testsupport::random_document(rng, opts);
    const int n = d.graph.atom_count();
    std::uniform_int_distribution<int> pick(0, n - 1);
    const int root = pick(rng);
    std::string w = write_esmiles(d, root);
    ESmilesDoc back = parse_esmiles(w);
    ASSERT_EQ(write_esmiles(back), w) << write_esmiles(d);
    ASSERT_TRUE(validate_esmiles(back).empty()) << w;

    WrittenSmiles ws = write_smiles_ordered(d.graph, root);
    std::vector<int> pos(n);
    for (int k = 0; k < n; ++k)
      pos[ws.order[k]] = k;
    ASSERT_EQ(atom_bindings(d, pos), atom_bindings(back, identity_map(n)))
        << w;
    ASSERT_TRUE(testsupport::isomorphic(d.graph, back.graph)) << w;
    ASSERT_EQ(annotation_set(back).size(), d.annotations.size());
  }
}

TEST(CanonicalEsmiles, InvariantAcrossRoots) {
  ESmilesDoc d = parse_esmiles("*c1ccccc1<sep><a>0:R[1]</a>");
  const std::string expected = canonical_esmiles(d);
  for (int root = 0; root < d.graph.atom_count(); ++root) {
    ESmilesDoc r = parse_esmiles(write_esmiles(d, root));
    EXPECT_EQ(canonical_esmiles(r), expected) << root;
  }
  for (const char *s: kGolden) {
    ESmilesDoc g = parse_esmiles(s);
    const std::string c = canonical_esmiles(g);
    EXPECT_TRUE(check_esmiles(c).empty()) << c;
    EXPECT_EQ(canonical_esmiles(parse_esmiles(c)), c);
    for (int root = 0; root < g.graph.atom_count(); ++root)
      EXPECT_EQ(canonical_esmiles(parse_esmiles(write_esmiles(g, root))), c)
          << s << " root " << root;
  }
}

TEST(CanonicalEsmiles, InvariantUnderPermutation) {
  std::mt19937_64 rng(77);
  testsupport::MolGenOptions opts;
  opts.star_rate = 0.2;
  for (int i = 0; i < 300; ++i) {
    ESmilesDoc d = testsupport::random_document(rng, opts);
    const std::string c = canonical_esmiles(d);
    for (int k = 0; k < 4; ++k) {
      auto perm = testsupport::random_permutation(rng, d.graph.atom_count());
      ESmilesDoc p = testsupport::permute_document(d, perm);
      ASSERT_EQ(canonical_esmiles(p), c) << write_esmiles(d);
      ASSERT_TRUE(same_document(p, d));
    }
  }
}

TEST(CanonicalEsmiles, AnnotationOrderIrrelevant) {
  EXPECT_EQ(canonical_esmiles(parse_esmiles("*C*<sep><a>0:X</a><a>2:Y</a>")),
            canonical_esmiles(parse_esmiles("*C*<sep><a>2:Y</a><a>0:X</a>")));
  EXPECT_EQ(canonical_esmiles(parse_esmiles(
                "c1ccccc1<sep><r>0:R[2]</r><r>0:R[1]</r>")),
            canonical_esmiles(parse_esmiles(
                "c1ccccc1<sep><r>0:R[1]</r><r>0:R[2]</r>")));
}

TEST(CanonicalEsmiles, DistinguishesNamesAndPositions) {
  EXPECT_NE(canonical_esmiles(parse_esmiles("*c1ccccc1<sep><a>0:R[1]</a>")),
            canonical_esmiles(parse_esmiles("*c1ccccc1<sep><a>0:R[2]</a>")));
  // Same skeleton, names swapped between non-equivalent stars.
  EXPECT_NE(canonical_esmiles(parse_esmiles("*CC(*)O<sep><a>0:X</a><a>3:Y</a>")),
            canonical_esmiles(parse_esmiles("*CC(*)O<sep><a>0:Y</a><a>3:X</a>")));
  // Swapping names between equivalent stars is the same molecule.
  EXPECT_EQ(canonical_esmiles(parse_esmiles("*CC*<sep><a>0:X</a><a>3:Y</a>")),
            canonical_esmiles(parse_esmiles("*CC*<sep><a>0:Y</a><a>3:X</a>")));
  EXPECT_NE(canonical_esmiles(parse_esmiles("*c1ccccc1<sep><a>0:R</a>")),
            canonical_esmiles(parse_esmiles("*c1ccccc1<sep><a>0:R?n</a>")));
  EXPECT_FALSE(same_document(parse_esmiles("*C<sep><a>0:R</a>"),
                             parse_esmiles("*C<sep><a>0:X</a>")));
}

TEST(CanonicalEsmiles, RingAttachmentFollowsRing) {
  // Ring attachment on the pyridine ring versus on the benzene ring.
  const std::string on_first = canonical_esmiles(
      parse_esmiles("c1ccncc1-c1ccccc1<sep><r>0:R</r>"));
  const std::string on_second = canonical_esmiles(
      parse_esmiles("c1ccncc1-c1ccccc1<sep><r>1:R</r>"));
  EXPECT_NE(on_first, on_second);
  EXPECT_EQ(on_first, canonical_esmiles(
                          parse_esmiles("c1ccccc1-c1cnccc1<sep><r>1:R</r>")));
}

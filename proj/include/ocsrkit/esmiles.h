//
// Project ocsrkit - Copyright 2026 ocsrkit authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef OCSRKIT_ESMILES_H_
#define OCSRKIT_ESMILES_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ocsrkit/molgraph.h"

namespace ocsrkit {

inline constexpr std::string_view kSep = "<sep>";
inline constexpr std::string_view kDummy = "<dum>";

// Declaration order is the canonical emission order for equal indices.
enum class AnnotationKind : std::uint8_t {
  kSubstituent,     // <a>ATOM_INDEX:NAME</a>
  kRingAttachment,  // <r>RING_INDEX:NAME</r>
  kAbstractRing,    // <c>CIRCLE_INDEX:NAME</c>
};

std::string_view tag_name(AnnotationKind kind);  // "a", "r", "c"

struct Annotation {
  AnnotationKind kind = AnnotationKind::kSubstituent;
  int index = 0;
  std::string group_name;
  // Text after '?', e.g. "n" for "R[5]?n".
  std::optional<std::string> repeat;
  // Star atom an abstract ring is attached to; resolved by the parser.
  std::optional<int> bound_atom;

  friend bool operator==(const Annotation &, const Annotation &) = default;
};

struct ESmilesDoc {
  MolGraph graph;
  std::vector<Annotation> annotations;
  std::string raw;
};

// Splits `text` at the first <sep>. The SMILES part is always everything
// before it.
std::string_view smiles_part(std::string_view text);

// Binds <c> annotations to star atoms not covered by <a>, in ascending atom
// order, taking abstract rings in ascending circle index.
void bind_abstract_rings(const MolGraph &g,
                         std::vector<Annotation> &annotations);

// Strict mode also rejects valence violations in the SMILES part and
// substituent or ring indices that do not resolve (IndexError).
ESmilesDoc parse_esmiles(std::string_view text,
                         ParseMode mode = ParseMode::kStrict);

enum class ViolationCode : std::uint8_t {
  kSyntax,
  kValence,
  kAtomIndexOutOfRange,
  kSubstituentOnNonStar,
  kStarUncovered,
  kStarCoveredTwice,
  kRingIndexOutOfRange,
  kRepeatOnAbstractRing,
  kAbstractRingUnbound,
  kDuplicateCircleIndex,
};

std::string_view violation_name(ViolationCode code);

struct Violation {
  ViolationCode code;
  std::string message;
  std::optional<int> annotation;  // position in doc.annotations
  std::optional<int> atom;
};

std::vector<Violation> validate_esmiles(const ESmilesDoc &doc,
                                        ParseMode mode = ParseMode::kStrict);

// Parses leniently and validates; syntax and valence errors are reported as
// violations instead of exceptions.
std::vector<Violation> check_esmiles(std::string_view text,
                                     ParseMode mode = ParseMode::kStrict);

// Serializes from `root` with annotation indices remapped to the written
// atom order. Entries are sorted by (index, kind, name, repeat). No <sep> is
// written when there are no annotations.
std::string write_esmiles(const ESmilesDoc &doc, int root = 0);

struct CanonicalEsmilesOptions {
  bool stereo = false;
};

// Identical for any two documents describing the same annotated molecule.
std::string canonical_esmiles(const ESmilesDoc &doc,
                              const CanonicalEsmilesOptions &opts = {});

// Graph-isomorphism plus annotation-set equality.
bool same_document(const ESmilesDoc &a, const ESmilesDoc &b);

}  // namespace ocsrkit

#endif  // OCSRKIT_ESMILES_H_

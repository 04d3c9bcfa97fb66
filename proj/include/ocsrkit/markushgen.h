//
// Project ocsrkit - Copyright 2026 ocsrkit authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef OCSRKIT_MARKUSHGEN_H_
#define OCSRKIT_MARKUSHGEN_H_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "ocsrkit/esmiles.h"
#include "ocsrkit/molgraph.h"
#include "ocsrkit/rng.h"

namespace ocsrkit {

struct GenConfig {
  std::uint64_t seed = 20240101;
  int min_substitutions = 1;
  int max_substitutions = 3;
  std::vector<std::string> group_name_pool = {
    "R", "R[1]", "R[2]", "R[3]", "X", "Y", "Z", "Ar", "Ph", "Me", "OMe", "CF3",
  };
  std::vector<std::string> polymer_repeat_labels = { "n", "m" };
  int min_rings = 1;
  int max_rings = 4;

  // Throws std::invalid_argument.
  void check() const;
};

// Flat key=value lines; '#' starts a comment. Keys: seed,
// min_substitutions, max_substitutions, group_names (comma list),
// repeat_labels (comma list), min_rings, max_rings. Unknown keys throw.
GenConfig read_gen_config(std::istream &in, GenConfig base = {});

// One name per line; blank lines and '#' comments are skipped.
std::vector<std::string> read_lexicon(std::istream &in);

enum class SiteKind : std::uint8_t {
  kTerminal,     // terminal heavy atom on a single bond; replaced by '*'
  kRingHydrogen, // ring atom carrying hydrogen; gains a new '*' neighbor
};

struct SubstitutionSite {
  SiteKind kind;
  int atom;

  friend bool operator==(const SubstitutionSite &,
                         const SubstitutionSite &) = default;
};

std::vector<SubstitutionSite> substitution_sites(const MolGraph &g);

// Replaces k random sites (k drawn from the configured range, capped at the
// site count) by named substituents. Throws NoSubstitutableSite when the
// graph has no site and std::invalid_argument when it already has stars.
ESmilesDoc randomize_to_markush(const MolGraph &g, const GenConfig &cfg,
                                Rng &rng);

// A repeating unit carrying exactly one '?' repeat annotation.
ESmilesDoc gen_polymer(const GenConfig &cfg, Rng &rng);

// Catacondensed ring system grown from a 6-ring by fusing 5- and 6-rings on
// bonds whose ends both have degree 2. All-6 systems are aromatic.
MolGraph gen_fused_rings(const GenConfig &cfg, Rng &rng);
MolGraph gen_fused_rings(int ring_count, Rng &rng);

}  // namespace ocsrkit

#endif  // OCSRKIT_MARKUSHGEN_H_

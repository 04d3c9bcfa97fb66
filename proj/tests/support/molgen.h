//
// Project ocsrkit - Copyright 2026 ocsrkit authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef OCSRKIT_TESTS_MOLGEN_H_
#define OCSRKIT_TESTS_MOLGEN_H_

#include <random>
#include <string>
#include <vector>

#include "ocsrkit/esmiles.h"
#include "ocsrkit/molgraph.h"

namespace testsupport {

struct MolGenOptions {
  int min_atoms = 1;
  int max_atoms = 30;
  double ring_closure_rate = 0.15;
  double aromatic_ring_rate = 0.3;
  double star_rate = 0.0;
  bool charges = true;
  bool isotopes = true;
  bool stereo = false;
  bool fragments = false;
};

// Valence-valid random molecule built directly as a graph.
ocsrkit::MolGraph random_molecule(std::mt19937_64 &rng,
                                  const MolGenOptions &opts = {});

// Random strictly valid E-SMILES document: stars covered by <a> or <c>,
// plus <r> entries on existing rings, some with repeat suffixes.
ocsrkit::ESmilesDoc random_document(std::mt19937_64 &rng,
                                    const MolGenOptions &opts = {});

std::vector<int> random_permutation(std::mt19937_64 &rng, int n);

// Document with atoms renumbered by `perm` (atom i -> perm[i]); annotations
// follow their atoms, <r> indices follow their rings.
ocsrkit::ESmilesDoc permute_document(const ocsrkit::ESmilesDoc &doc,
                                     const std::vector<int> &perm);

}  // namespace testsupport

#endif  // OCSRKIT_TESTS_MOLGEN_H_

//
// Project ocsrkit - Copyright 2026 ocsrkit authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef OCSRKIT_SRC_RINGS_H_
#define OCSRKIT_SRC_RINGS_H_

#include <vector>

#include "ocsrkit/molgraph.h"

namespace ocsrkit::internal {

struct RingSet {
  std::vector<std::vector<int>> rings;  // sorted members
  std::vector<std::vector<int>> paths;  // cyclic order
  std::vector<char> ring_bond;
};

// Minimum cycle basis from Horton candidates over ring bonds only.
RingSet find_sssr(const MolGraph &g);

}  // namespace ocsrkit::internal

#endif  // OCSRKIT_SRC_RINGS_H_

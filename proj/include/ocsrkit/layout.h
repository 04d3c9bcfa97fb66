//
// Project ocsrkit - Copyright 2026 ocsrkit authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef OCSRKIT_LAYOUT_H_
#define OCSRKIT_LAYOUT_H_

#include <vector>

#include "ocsrkit/esmiles.h"
#include "ocsrkit/molgraph.h"

namespace ocsrkit {

struct Point {
  double x = 0;
  double y = 0;
};

// Schematic 2D depiction coordinates with unit bond length. Rings are regular
// polygons (fused rings share an edge), chains zigzag at 120 degrees and
// fragments are laid out left to right. The first fragment's root atom sits
// at the origin. Always returns finite coordinates, one per atom.
std::vector<Point> layout2d(const MolGraph &g);
std::vector<Point> layout2d(const ESmilesDoc &doc);

}  // namespace ocsrkit

#endif  // OCSRKIT_LAYOUT_H_

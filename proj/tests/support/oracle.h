//
// Project ocsrkit - Copyright 2026 ocsrkit authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef OCSRKIT_TESTS_ORACLE_H_
#define OCSRKIT_TESTS_ORACLE_H_

#include <algorithm>
#include <functional>
#include <tuple>
#include <vector>

#include "ocsrkit/molgraph.h"

namespace testsupport {

// Backtracking attributed-graph isomorphism. Independent of the library's
// canonicalizer; only used on small graphs.
inline bool isomorphic(const ocsrkit::MolGraph &a, const ocsrkit::MolGraph &b) {
  using namespace ocsrkit;
  const int n = a.atom_count();
  if (n != b.atom_count() || a.bond_count() != b.bond_count())
    return false;
  auto key = [](const MolGraph &g, int v) {
    const Atom &x = g.atom(v);
    return std::make_tuple(x.atomic_number, x.charge, x.aromatic,
                           x.isotope.value_or(0), g.hydrogen_count(v),
                           g.degree(v));
  };
  auto order = [](const MolGraph &g, int u, int v) {
    auto bd = g.find_bond(u, v);
    return bd ? static_cast<int>(g.bond(*bd).order) : 0;
  };
  std::vector<int> map(n, -1), used(n, 0);
  // Visit atoms in BFS order so that every atom after the first in a
  // component has an already-mapped neighbour.
  std::vector<int> seq;
  std::vector<char> seen(n, 0);
  for (int s = 0; s < n; ++s) {
    if (seen[s])
      continue;
    seen[s] = 1;
    std::size_t head = seq.size();
    seq.push_back(s);
    while (head < seq.size()) {
      int u = seq[head++];
      for (const Neighbor &nb: a.neighbors(u))
        if (!seen[nb.atom]) {
          seen[nb.atom] = 1;
          seq.push_back(nb.atom);
        }
    }
  }
  std::function<bool(std::size_t)> go = [&](std::size_t i) {
    if (i == seq.size())
      return true;
    const int u = seq[i];
    for (int c = 0; c < n; ++c) {
      if (used[c] || key(a, u) != key(b, c))
        continue;
      bool ok = true;
      for (const Neighbor &nb: a.neighbors(u)) {
        if (map[nb.atom] < 0)
          continue;
        if (order(a, u, nb.atom) != order(b, c, map[nb.atom])) {
          ok = false;
          break;
        }
      }
      if (!ok)
        continue;
      // Mapped non-neighbours must stay non-adjacent.
      int mapped_nbrs_a = 0, mapped_nbrs_b = 0;
      for (const Neighbor &nb: a.neighbors(u))
        mapped_nbrs_a += map[nb.atom] >= 0;
      for (const Neighbor &nb: b.neighbors(c))
        for (int x = 0; x < n; ++x)
          if (map[x] == nb.atom) {
            ++mapped_nbrs_b;
            break;
          }
      if (mapped_nbrs_a != mapped_nbrs_b)
        continue;
      map[u] = c;
      used[c] = 1;
      if (go(i + 1))
        return true;
      map[u] = -1;
      used[c] = 0;
    }
    return false;
  };
  return go(0);
}

}  // namespace testsupport

#endif  // OCSRKIT_TESTS_ORACLE_H_

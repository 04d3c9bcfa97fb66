//
// Project ocsrkit - Copyright 2026 ocsrkit authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "rings.h"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <set>
#include <tuple>

namespace ocsrkit::internal {
namespace {

// Bonds that lie on at least one cycle (non-bridges), via lowlink DFS.
std::vector<char> find_ring_bonds(const MolGraph &g) {
  const int n = g.atom_count();
  std::vector<char> ring(g.bond_count(), 1);
  std::vector<int> disc(n, -1), low(n, 0);
  int timer = 0;

  struct Frame {
    int atom;
    int parent_bond;
    std::size_t next;
  };
  std::vector<Frame> stack;
  for (int s = 0; s < n; ++s) {
    if (disc[s] >= 0)
      continue;
    disc[s] = low[s] = timer++;
    stack.push_back({ s, -1, 0 });
    while (!stack.empty()) {
      Frame &f = stack.back();
      auto nbrs = g.neighbors(f.atom);
      if (f.next < nbrs.size()) {
        const Neighbor nb = nbrs[f.next++];
        if (nb.bond == f.parent_bond)
          continue;
        if (disc[nb.atom] < 0) {
          disc[nb.atom] = low[nb.atom] = timer++;
          stack.push_back({ nb.atom, nb.bond, 0 });
        } else {
          low[f.atom] = std::min(low[f.atom], disc[nb.atom]);
        }
        continue;
      }
      const Frame done = f;
      stack.pop_back();
      if (!stack.empty()) {
        int parent = stack.back().atom;
        low[parent] = std::min(low[parent], low[done.atom]);
        if (low[done.atom] > disc[parent])
          ring[done.parent_bond] = 0;
      }
    }
  }
  return ring;
}

using Bits = std::vector<std::uint64_t>;

struct Candidate {
  std::vector<int> members;  // sorted
  std::vector<int> path;     // cyclic order
  Bits edges;
};

}  // namespace

RingSet find_sssr(const MolGraph &g) {
  RingSet out;
  const int n = g.atom_count();
  const int m = g.bond_count();
  const int cyclomatic = m - n + g.component_count();
  if (cyclomatic <= 0) {
    out.ring_bond.assign(m, 0);
    return out;
  }

  out.ring_bond = find_ring_bonds(g);

  // Dense numbering of ring bonds and ring atoms.
  std::vector<int> edge_index(m, -1);
  int ring_edges = 0;
  for (int b = 0; b < m; ++b)
    if (out.ring_bond[b])
      edge_index[b] = ring_edges++;
  const std::size_t words = (ring_edges + 63) / 64;

  std::vector<std::vector<Neighbor>> adj(n);
  std::vector<int> ring_atoms;
  for (int a = 0; a < n; ++a) {
    for (const Neighbor &nb: g.neighbors(a))
      if (out.ring_bond[nb.bond])
        adj[a].push_back(nb);
    if (!adj[a].empty())
      ring_atoms.push_back(a);
  }

  std::vector<Candidate> candidates;
  std::set<Bits> seen;
  std::vector<int> dist(n), parent(n), parent_bond(n);
  std::vector<int> queue;
  std::vector<int> mark(n, -1);

  for (int root: ring_atoms) {
    std::fill(dist.begin(), dist.end(), -1);
    dist[root] = 0;
    parent[root] = -1;
    parent_bond[root] = -1;
    queue.assign(1, root);
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      int u = queue[qi];
      for (const Neighbor &nb: adj[u]) {
        if (dist[nb.atom] < 0) {
          dist[nb.atom] = dist[u] + 1;
          parent[nb.atom] = u;
          parent_bond[nb.atom] = nb.bond;
          queue.push_back(nb.atom);
        }
      }
    }

    for (int b = 0; b < m; ++b) {
      if (!out.ring_bond[b])
        continue;
      int x = g.bond(b).begin, y = g.bond(b).end;
      if (dist[x] < 0 || dist[y] < 0)
        continue;
      if (parent_bond[x] == b || parent_bond[y] == b)
        continue;
      // Reject if the two shortest paths share anything besides root.
      std::vector<int> px, py;
      for (int v = x; v != -1; v = parent[v])
        px.push_back(v);
      for (int v = y; v != -1; v = parent[v])
        py.push_back(v);
      for (int v: px)
        mark[v] = b;
      bool simple = true;
      for (int v: py) {
        if (v != root && mark[v] == b) {
          simple = false;
          break;
        }
      }
      for (int v: px)
        mark[v] = -1;
      if (!simple)
        continue;

      Candidate c;
      c.edges.assign(words, 0);
      auto set_edge = [&](int bond) {
        int e = edge_index[bond];
        c.edges[e / 64] |= std::uint64_t { 1 } << (e % 64);
      };
      set_edge(b);
      for (std::size_t i = 0; i + 1 < px.size(); ++i)
        set_edge(parent_bond[px[i]]);
      for (std::size_t i = 0; i + 1 < py.size(); ++i)
        set_edge(parent_bond[py[i]]);
      if (!seen.insert(c.edges).second)
        continue;
      // Cycle: root ... x (reverse of px), then y ... up to before root.
      c.path.assign(px.rbegin(), px.rend());
      for (std::size_t i = 0; i + 1 < py.size(); ++i)
        c.path.push_back(py[i]);
      c.members = c.path;
      std::sort(c.members.begin(), c.members.end());
      candidates.push_back(std::move(c));
    }
  }

  std::sort(candidates.begin(), candidates.end(),
            [](const Candidate &a, const Candidate &b) {
              return std::make_tuple(a.members.size(), std::cref(a.members))
                     < std::make_tuple(b.members.size(),
                                       std::cref(b.members));
            });

  // Greedy GF(2) independence test; basis kept with distinct pivots.
  std::vector<Bits> basis;
  std::vector<int> pivots;
  std::vector<const Candidate *> chosen;
  auto lowest_bit = [&](const Bits &v) {
    for (std::size_t w = 0; w < v.size(); ++w)
      if (v[w])
        return static_cast<int>(w * 64 + __builtin_ctzll(v[w]));
    return -1;
  };
  for (const Candidate &c: candidates) {
    if (static_cast<int>(chosen.size()) == cyclomatic)
      break;
    Bits v = c.edges;
    for (std::size_t i = 0; i < basis.size(); ++i) {
      int p = pivots[i];
      if (v[p / 64] >> (p % 64) & 1)
        for (std::size_t w = 0; w < words; ++w)
          v[w] ^= basis[i][w];
    }
    int p = lowest_bit(v);
    if (p < 0)
      continue;
    // Keep the basis reduced so later reductions stay single-pass.
    for (std::size_t i = 0; i < basis.size(); ++i)
      if (basis[i][p / 64] >> (p % 64) & 1)
        for (std::size_t w = 0; w < words; ++w)
          basis[i][w] ^= v[w];
    basis.push_back(std::move(v));
    pivots.push_back(p);
    chosen.push_back(&c);
  }

  std::sort(chosen.begin(), chosen.end(),
            [](const Candidate *a, const Candidate *b) {
              return std::make_tuple(a->members.front(), a->members.size(),
                                     std::cref(a->members))
                     < std::make_tuple(b->members.front(), b->members.size(),
                                       std::cref(b->members));
            });
  for (const Candidate *c: chosen) {
    out.rings.push_back(c->members);
    // Start the cyclic path at the smallest member, walking towards the
    // smaller of its two ring neighbours.
    std::vector<int> p = c->path;
    auto it = std::min_element(p.begin(), p.end());
    std::rotate(p.begin(), it, p.end());
    if (p.size() > 2 && p.back() < p[1])
      std::reverse(p.begin() + 1, p.end());
    out.paths.push_back(std::move(p));
  }
  return out;
}

}  // namespace ocsrkit::internal

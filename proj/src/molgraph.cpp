//
// Project ocsrkit - Copyright 2026 ocsrkit authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "ocsrkit/molgraph.h"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

#include "rings.h"

namespace ocsrkit {

int valence_contribution(BondOrder order) {
  switch (order) {
  case BondOrder::kDouble:
    return 2;
  case BondOrder::kTriple:
    return 3;
  case BondOrder::kSingle:
  case BondOrder::kAromatic:
  default:
    return 1;
  }
}

MolGraph::MolGraph(std::vector<Atom> atoms, std::vector<Bond> bonds)
    : atoms_(std::move(atoms)), bonds_(std::move(bonds)) {
  const int n = atom_count();
  for (int i = 0; i < n; ++i) {
    const Atom &a = atoms_[i];
    if (a.atomic_number < 0 || a.atomic_number > kMaxAtomicNumber)
      throw std::invalid_argument("atom " + std::to_string(i)
                                  + ": invalid atomic number");
    if (a.charge < -4 || a.charge > 4)
      throw std::invalid_argument("atom " + std::to_string(i)
                                  + ": charge out of range");
    if (a.aromatic && !can_be_aromatic(a.atomic_number))
      throw std::invalid_argument("atom " + std::to_string(i)
                                  + ": element cannot be aromatic");
    if (a.explicit_h && *a.explicit_h < 0)
      throw std::invalid_argument("atom " + std::to_string(i)
                                  + ": negative hydrogen count");
    if (a.isotope && *a.isotope <= 0)
      throw std::invalid_argument("atom " + std::to_string(i)
                                  + ": non-positive isotope");
  }
  for (const Bond &b: bonds_) {
    if (b.begin < 0 || b.end < 0 || b.begin >= n || b.end >= n)
      throw std::invalid_argument("bond endpoint out of range");
    if (b.begin == b.end)
      throw std::invalid_argument("bond endpoints must be distinct");
  }
  build();
}

void MolGraph::build() {
  const int n = atom_count();
  const int m = bond_count();

  adj_offset_.assign(n + 1, 0);
  for (const Bond &b: bonds_) {
    ++adj_offset_[b.begin + 1];
    ++adj_offset_[b.end + 1];
  }
  std::partial_sum(adj_offset_.begin(), adj_offset_.end(),
                   adj_offset_.begin());
  adjacency_.resize(2 * m);
  std::vector<int> fill(adj_offset_.begin(), adj_offset_.end() - 1);
  for (int i = 0; i < m; ++i) {
    adjacency_[fill[bonds_[i].begin]++] = { bonds_[i].end, i };
    adjacency_[fill[bonds_[i].end]++] = { bonds_[i].begin, i };
  }
  for (int i = 0; i < n; ++i) {
    auto first = adjacency_.begin() + adj_offset_[i];
    auto last = adjacency_.begin() + adj_offset_[i + 1];
    std::sort(first, last, [](const Neighbor &x, const Neighbor &y) {
      return x.atom < y.atom;
    });
    if (std::adjacent_find(first, last,
                           [](const Neighbor &x, const Neighbor &y) {
                             return x.atom == y.atom;
                           })
        != last)
      throw std::invalid_argument("duplicate bond at atom "
                                  + std::to_string(i));
  }

  bond_sum_.assign(n, 0);
  for (const Bond &b: bonds_) {
    bond_sum_[b.begin] += valence_contribution(b.order);
    bond_sum_[b.end] += valence_contribution(b.order);
  }

  implicit_h_.assign(n, 0);
  for (int i = 0; i < n; ++i) {
    const Atom &a = atoms_[i];
    if (a.explicit_h || a.is_star() || !is_organic_subset(a.atomic_number))
      continue;
    auto vals = allowed_valences(a.atomic_number);
    if (vals.empty())
      continue;
    if (a.aromatic) {
      // The aromatic system consumes one valence unit.
      implicit_h_[i] = std::max(0, vals.front() - bond_sum_[i] - 1);
      continue;
    }
    for (int v: vals) {
      if (v >= bond_sum_[i]) {
        implicit_h_[i] = v - bond_sum_[i];
        break;
      }
    }
  }

  component_.assign(n, -1);
  components_ = 0;
  std::vector<int> stack;
  for (int s = 0; s < n; ++s) {
    if (component_[s] >= 0)
      continue;
    component_[s] = components_;
    stack.push_back(s);
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (const Neighbor &nb: neighbors(u)) {
        if (component_[nb.atom] < 0) {
          component_[nb.atom] = components_;
          stack.push_back(nb.atom);
        }
      }
    }
    ++components_;
  }

  internal::RingSet rs = internal::find_sssr(*this);
  rings_ = std::move(rs.rings);
  ring_paths_ = std::move(rs.paths);
  ring_bond_ = std::move(rs.ring_bond);
  ring_atom_.assign(n, 0);
  for (const auto &r: rings_)
    for (int a: r)
      ring_atom_[a] = 1;
}

int MolGraph::hydrogen_count(int atom) const {
  const Atom &a = atoms_[atom];
  return a.explicit_h ? *a.explicit_h : implicit_h_[atom];
}

std::optional<int> MolGraph::find_bond(int a, int b) const {
  auto nbrs = neighbors(a);
  auto it = std::lower_bound(
      nbrs.begin(), nbrs.end(), b,
      [](const Neighbor &x, int target) { return x.atom < target; });
  if (it != nbrs.end() && it->atom == b)
    return it->bond;
  return std::nullopt;
}

MolGraph MolGraph::permuted(std::span<const int> new_index) const {
  const int n = atom_count();
  if (static_cast<int>(new_index.size()) != n)
    throw std::invalid_argument("permutation size mismatch");
  std::vector<Atom> atoms(n);
  std::vector<char> seen(n, 0);
  for (int i = 0; i < n; ++i) {
    int j = new_index[i];
    if (j < 0 || j >= n || seen[j])
      throw std::invalid_argument("not a permutation");
    seen[j] = 1;
    atoms[j] = atoms_[i];
  }
  std::vector<Bond> bonds = bonds_;
  for (Bond &b: bonds) {
    b.begin = new_index[b.begin];
    b.end = new_index[b.end];
  }
  return MolGraph(std::move(atoms), std::move(bonds));
}

MolGraph MolGraph::without_stereo() const {
  std::vector<Atom> atoms = atoms_;
  for (Atom &a: atoms)
    a.chirality.clear();
  std::vector<Bond> bonds = bonds_;
  for (Bond &b: bonds)
    b.direction = 0;
  return MolGraph(std::move(atoms), std::move(bonds));
}

std::vector<ValenceViolation> validate_valence(const MolGraph &g) {
  std::vector<ValenceViolation> out;
  for (int i = 0; i < g.atom_count(); ++i) {
    const Atom &a = g.atom(i);
    if (a.is_star())
      continue;
    auto vals = allowed_valences(a.atomic_number, a.charge);
    if (vals.empty())
      continue;
    int used = g.bond_order_sum(i) + g.hydrogen_count(i);
    if (used > vals.back())
      out.push_back({ i, used, vals.back() });
  }
  return out;
}

}  // namespace ocsrkit

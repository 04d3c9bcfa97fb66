//
// Project ocsrkit - Copyright 2026 ocsrkit authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "ocsrkit/errors.h"
#include "ocsrkit/molgraph.h"

namespace ocsrkit {
namespace {

struct Closure {
  int bond;
  int partner;
  int digit = -1;
};

// Hydrogens the parser would infer for an unbracketed atom with this bond
// sum. Mirrors MolGraph::build.
int inferred_h(const Atom &a, int bond_sum) {
  if (a.is_star())
    return 0;
  auto vals = allowed_valences(a.atomic_number);
  if (a.aromatic)
    return std::max(0, vals.front() - bond_sum - 1);
  for (int v: vals)
    if (v >= bond_sum)
      return v - bond_sum;
  return 0;
}

bool bare_aromatic_symbol(int z) {
  switch (z) {
  case 5: case 6: case 7: case 8: case 15: case 16:
    return true;
  default:
    return false;
  }
}

class Writer {
public:
  Writer(const MolGraph &g, std::span<const int> priority,
         const WriteOptions &opts)
      : g_(g), priority_(priority), opts_(opts), visited_(g.atom_count(), 0),
        bond_used_(g.bond_count(), 0), children_(g.atom_count()),
        opening_(g.atom_count()), closing_(g.atom_count()),
        sorted_(g.atom_count()), discovered_(g.atom_count(), 0) {
    for (int a = 0; a < g.atom_count(); ++a) {
      auto nbrs = g.neighbors(a);
      sorted_[a].assign(nbrs.begin(), nbrs.end());
      std::sort(sorted_[a].begin(), sorted_[a].end(),
                [&](const Neighbor &x, const Neighbor &y) {
                  return priority_[x.atom] < priority_[y.atom];
                });
    }
  }

  void fragment(int root) {
    if (!out_.smiles.empty())
      out_.smiles += '.';
    discover(root, -1);
    emit(root);
  }

  bool visited(int atom) const { return visited_[atom] != 0; }

  WrittenSmiles take() { return std::move(out_); }

private:
  void discover(int u, int parent_bond) {
    visited_[u] = 1;
    discovered_[u] = next_discovery_++;
    for (const Neighbor &nb: sorted_[u]) {
      if (nb.bond == parent_bond || bond_used_[nb.bond])
        continue;
      bond_used_[nb.bond] = 1;
      if (visited_[nb.atom]) {
        opening_[nb.atom].push_back({ nb.bond, u });
        closing_[u].push_back({ nb.bond, nb.atom });
      } else {
        children_[u].push_back(nb);
        discover(nb.atom, nb.bond);
      }
    }
    // Close rings in the order their partners were written so the output
    // does not depend on source numbering.
    std::sort(closing_[u].begin(), closing_[u].end(),
              [&](const Closure &x, const Closure &y) {
                return discovered_[x.partner] < discovered_[y.partner];
              });
  }

  void emit(int u) {
    out_.order.push_back(u);
    write_atom(u);

    std::vector<int> release;
    for (Closure &c: closing_[u]) {
      int digit = -1;
      for (Closure &o: opening_[c.partner]) {
        if (o.bond == c.bond) {
          digit = o.digit;
          break;
        }
      }
      write_bond(c.bond, u, c.partner);
      write_digit(digit);
      release.push_back(digit);
    }
    std::sort(opening_[u].begin(), opening_[u].end(),
              [&](const Closure &x, const Closure &y) {
                return discovered_[x.partner] < discovered_[y.partner];
              });
    for (Closure &o: opening_[u]) {
      o.digit = allocate_digit();
      write_digit(o.digit);
    }
    for (int d: release)
      in_use_[d] = 0;

    const auto &kids = children_[u];
    for (std::size_t i = 0; i < kids.size(); ++i) {
      const bool last = i + 1 == kids.size();
      if (!last)
        out_.smiles += '(';
      write_bond(kids[i].bond, u, kids[i].atom);
      emit(kids[i].atom);
      if (!last)
        out_.smiles += ')';
    }
  }

  int allocate_digit() {
    for (int d = 1; d < 100; ++d) {
      if (!in_use_[d]) {
        in_use_[d] = 1;
        return d;
      }
    }
    throw Error("more than 99 simultaneously open rings");
  }

  void write_digit(int d) {
    if (d < 10) {
      out_.smiles += static_cast<char>('0' + d);
    } else {
      out_.smiles += '%';
      out_.smiles += std::to_string(d);
    }
  }

  void write_bond(int bond_index, int from, int to) {
    const Bond &b = g_.bond(bond_index);
    const bool both_aromatic = g_.atom(from).aromatic && g_.atom(to).aromatic;
    switch (b.order) {
    case BondOrder::kDouble:
      out_.smiles += '=';
      return;
    case BondOrder::kTriple:
      out_.smiles += '#';
      return;
    case BondOrder::kAromatic:
      if (!both_aromatic || !g_.is_ring_bond(bond_index))
        out_.smiles += ':';
      return;
    case BondOrder::kSingle:
      if (opts_.stereo && b.direction != 0) {
        char d = b.direction;
        if (from != b.begin)
          d = d == '/' ? '\\' : '/';
        out_.smiles += d;
      } else if (both_aromatic) {
        out_.smiles += '-';
      }
      return;
    }
  }

  void write_atom(int u) {
    const Atom &a = g_.atom(u);
    const int hcount = g_.hydrogen_count(u);
    const bool organic = a.is_star() || is_organic_subset(a.atomic_number);
    bool bare = organic && a.charge == 0 && !a.isotope && a.atom_class == 0
                && (!opts_.stereo || a.chirality.empty())
                && (!a.aromatic || bare_aromatic_symbol(a.atomic_number))
                && hcount == inferred_h(a, g_.bond_order_sum(u));

    std::string sym(element_symbol(a.atomic_number));
    if (a.aromatic)
      sym[0] = static_cast<char>(sym[0] - 'A' + 'a');
    if (bare) {
      out_.smiles += sym;
      return;
    }

    std::string &s = out_.smiles;
    s += '[';
    if (a.isotope)
      s += std::to_string(*a.isotope);
    s += sym;
    if (opts_.stereo)
      s += a.chirality;
    if (hcount > 0) {
      s += 'H';
      if (hcount > 1)
        s += std::to_string(hcount);
    }
    if (a.charge != 0) {
      s += a.charge > 0 ? '+' : '-';
      int mag = a.charge > 0 ? a.charge : -a.charge;
      if (mag > 1)
        s += std::to_string(mag);
    }
    if (a.atom_class != 0) {
      s += ':';
      s += std::to_string(a.atom_class);
    }
    s += ']';
  }

  const MolGraph &g_;
  std::span<const int> priority_;
  const WriteOptions &opts_;
  std::vector<char> visited_;
  std::vector<char> bond_used_;
  std::vector<std::vector<Neighbor>> children_;
  std::vector<std::vector<Closure>> opening_;
  std::vector<std::vector<Closure>> closing_;
  std::vector<std::vector<Neighbor>> sorted_;
  std::vector<int> discovered_;
  int next_discovery_ = 0;
  char in_use_[100] = {};
  WrittenSmiles out_;
};

}  // namespace

WrittenSmiles write_smiles_ordered(const MolGraph &g, int root,
                                   const WriteOptions &opts) {
  if (g.empty())
    return {};
  if (root < 0 || root >= g.atom_count())
    throw IndexOutOfRange("root atom " + std::to_string(root)
                          + " out of range");
  std::vector<int> priority(g.atom_count());
  std::iota(priority.begin(), priority.end(), 0);
  Writer w(g, priority, opts);
  w.fragment(root);
  for (int a = 0; a < g.atom_count(); ++a)
    if (!w.visited(a))
      w.fragment(a);
  return w.take();
}

std::string write_smiles(const MolGraph &g, int root,
                         const WriteOptions &opts) {
  return write_smiles_ordered(g, root, opts).smiles;
}

WrittenSmiles write_smiles_ranked(const MolGraph &g,
                                  std::span<const int> priority,
                                  const WriteOptions &opts) {
  if (static_cast<int>(priority.size()) != g.atom_count())
    throw std::invalid_argument("priority size mismatch");
  std::vector<int> by_priority(g.atom_count());
  std::iota(by_priority.begin(), by_priority.end(), 0);
  std::stable_sort(by_priority.begin(), by_priority.end(),
                   [&](int x, int y) { return priority[x] < priority[y]; });
  Writer w(g, priority, opts);
  for (int a: by_priority)
    if (!w.visited(a))
      w.fragment(a);
  return w.take();
}

}  // namespace ocsrkit

//
// Project ocsrkit - Copyright 2026 ocsrkit authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef OCSRKIT_MOLGRAPH_H_
#define OCSRKIT_MOLGRAPH_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ocsrkit/element.h"

namespace ocsrkit {

enum class BondOrder : std::uint8_t {
  kSingle = 1,
  kDouble = 2,
  kTriple = 3,
  kAromatic = 4,
};

// Contribution of a bond to its endpoints' valence. Aromatic bonds count as
// one; the extra pi electron of an aromatic atom is accounted for separately.
int valence_contribution(BondOrder order);

struct Atom {
  int atomic_number = 6;
  int charge = 0;
  // Hydrogen count written inside brackets. Unset for organic-subset atoms,
  // whose hydrogens are implied by the valence table.
  std::optional<int> explicit_h;
  bool aromatic = false;
  std::optional<int> isotope;
  // Chirality marker exactly as written ("@", "@@", "@TH1", ...). Not used by
  // any perception or canonical invariant.
  std::string chirality;
  // Atom-class number from "[CH3:1]"; 0 means none.
  int atom_class = 0;

  bool is_star() const noexcept { return atomic_number == kStar; }

  static Atom star() {
    Atom a;
    a.atomic_number = kStar;
    return a;
  }

  friend bool operator==(const Atom &, const Atom &) = default;
};

struct Bond {
  int begin = 0;
  int end = 0;
  BondOrder order = BondOrder::kSingle;
  // '/' or '\\' as written when travelling from begin to end; 0 if none.
  char direction = 0;

  int other(int atom) const noexcept { return atom == begin ? end : begin; }

  friend bool operator==(const Bond &, const Bond &) = default;
};

struct Neighbor {
  int atom;
  int bond;
};

// An attributed molecular graph. Atom indices are stable; for graphs built by
// parse_smiles they follow first appearance in the source string. All derived
// data (adjacency, hydrogen counts, rings, components) is computed once at
// construction and the object is immutable afterwards.
class MolGraph {
public:
  MolGraph() = default;

  // Throws std::invalid_argument on out-of-range endpoints, self loops,
  // duplicate bonds or atoms violating the Atom invariants.
  MolGraph(std::vector<Atom> atoms, std::vector<Bond> bonds);

  int atom_count() const noexcept { return static_cast<int>(atoms_.size()); }
  int bond_count() const noexcept { return static_cast<int>(bonds_.size()); }
  bool empty() const noexcept { return atoms_.empty(); }

  const std::vector<Atom> &atoms() const noexcept { return atoms_; }
  const std::vector<Bond> &bonds() const noexcept { return bonds_; }
  const Atom &atom(int i) const { return atoms_[i]; }
  const Bond &bond(int i) const { return bonds_[i]; }

  // Neighbors sorted by ascending atom index.
  std::span<const Neighbor> neighbors(int atom) const {
    return { adjacency_.data() + adj_offset_[atom],
             adjacency_.data() + adj_offset_[atom + 1] };
  }

  int degree(int atom) const {
    return adj_offset_[atom + 1] - adj_offset_[atom];
  }

  // Sum of valence_contribution over incident bonds.
  int bond_order_sum(int atom) const { return bond_sum_[atom]; }

  // Implicit hydrogens inferred from the valence table (organic subset) or
  // zero for bracket atoms.
  int implicit_h(int atom) const { return implicit_h_[atom]; }

  // explicit_h if set, implicit hydrogens otherwise.
  int hydrogen_count(int atom) const;

  std::optional<int> find_bond(int a, int b) const;

  // Smallest set of smallest rings. Each ring is a sorted atom index list;
  // the list is ordered by (smallest member, ring size, members).
  const std::vector<std::vector<int>> &rings() const noexcept {
    return rings_;
  }

  // Ring member atoms in cyclic traversal order, parallel to rings().
  const std::vector<std::vector<int>> &ring_paths() const noexcept {
    return ring_paths_;
  }

  bool in_ring(int atom) const { return ring_atom_[atom] != 0; }
  bool is_ring_bond(int bond) const { return ring_bond_[bond] != 0; }

  int component_count() const noexcept { return components_; }
  int component_of(int atom) const { return component_[atom]; }

  // Graph with atom i moved to position new_index[i].
  MolGraph permuted(std::span<const int> new_index) const;

  // Same graph with chirality and bond direction markers removed.
  MolGraph without_stereo() const;

private:
  void build();

  std::vector<Atom> atoms_;
  std::vector<Bond> bonds_;

  std::vector<int> adj_offset_;
  std::vector<Neighbor> adjacency_;
  std::vector<int> bond_sum_;
  std::vector<int> implicit_h_;
  std::vector<std::vector<int>> rings_;
  std::vector<std::vector<int>> ring_paths_;
  std::vector<char> ring_atom_;
  std::vector<char> ring_bond_;
  std::vector<int> component_;
  int components_ = 0;
};

enum class ParseMode : std::uint8_t {
  // Reject atoms whose valence exceeds the table.
  kStrict,
  // Record valence problems (see validate_valence) instead of throwing.
  kLenient,
};

// Parses standard SMILES. Throws EmptyInput, SyntaxError and, in strict
// mode, ValenceError.
MolGraph parse_smiles(std::string_view text,
                      ParseMode mode = ParseMode::kStrict);

struct ValenceViolation {
  int atom;
  int used;
  int allowed;

  friend bool operator==(const ValenceViolation &,
                         const ValenceViolation &) = default;
};

// Atoms whose bond-order sum plus hydrogens exceed the largest allowed
// valence. Star atoms and elements without a valence model are exempt.
std::vector<ValenceViolation> validate_valence(const MolGraph &g);

struct WriteOptions {
  bool stereo = true;
};

struct WrittenSmiles {
  std::string smiles;
  // order[k] is the source atom emitted k-th; parsing `smiles` yields a graph
  // whose atom k corresponds to order[k].
  std::vector<int> order;
};

// Depth-first serialization starting at root. Branches are visited in
// ascending neighbor index; remaining fragments follow in ascending order of
// their lowest atom index. Throws IndexOutOfRange for a bad root.
std::string write_smiles(const MolGraph &g, int root = 0,
                         const WriteOptions &opts = {});
WrittenSmiles write_smiles_ordered(const MolGraph &g, int root = 0,
                                   const WriteOptions &opts = {});

// Serialization driven by a per-atom priority (lower first). Each fragment
// is rooted at its lowest-priority atom and fragments are emitted in
// ascending order of that priority.
WrittenSmiles write_smiles_ranked(const MolGraph &g,
                                  std::span<const int> priority,
                                  const WriteOptions &opts = {});

struct CanonicalOptions {
  // Keep chirality/direction markers in the output. They never influence
  // the atom ranking.
  bool stereo = false;
};

struct CanonicalForm {
  std::string smiles;
  // order[k] is the source atom at canonical position k.
  std::vector<int> order;
};

// Canonical SMILES: identical for every atom ordering of isomorphic graphs.
std::string canonical_smiles(const MolGraph &g,
                             const CanonicalOptions &opts = {});

// Canonical form with optional per-atom labels that take part in the atom
// invariant (used to make annotated atoms distinguishable). labels must be
// empty or have one entry per atom.
CanonicalForm canonicalize(const MolGraph &g,
                           std::span<const std::string> labels = {},
                           const CanonicalOptions &opts = {});

}  // namespace ocsrkit

#endif  // OCSRKIT_MOLGRAPH_H_

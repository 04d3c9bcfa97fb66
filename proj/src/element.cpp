//
// Project ocsrkit - Copyright 2026 ocsrkit authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "ocsrkit/element.h"

#include <array>
#include <vector>

namespace ocsrkit {
namespace {

constexpr std::array<std::string_view, kMaxAtomicNumber + 1> kSymbols = {
  "*",  "H",  "He", "Li", "Be", "B",  "C",  "N",  "O",  "F",  "Ne", "Na",
  "Mg", "Al", "Si", "P",  "S",  "Cl", "Ar", "K",  "Ca", "Sc", "Ti", "V",
  "Cr", "Mn", "Fe", "Co", "Ni", "Cu", "Zn", "Ga", "Ge", "As", "Se", "Br",
  "Kr", "Rb", "Sr", "Y",  "Zr", "Nb", "Mo", "Tc", "Ru", "Rh", "Pd", "Ag",
  "Cd", "In", "Sn", "Sb", "Te", "I",  "Xe", "Cs", "Ba", "La", "Ce", "Pr",
  "Nd", "Pm", "Sm", "Eu", "Gd", "Tb", "Dy", "Ho", "Er", "Tm", "Yb", "Lu",
  "Hf", "Ta", "W",  "Re", "Os", "Ir", "Pt", "Au", "Hg", "Tl", "Pb", "Bi",
  "Po", "At", "Rn", "Fr", "Ra", "Ac", "Th", "Pa", "U",  "Np", "Pu", "Am",
  "Cm", "Bk", "Cf", "Es", "Fm", "Md", "No", "Lr", "Rf", "Db", "Sg", "Bh",
  "Hs", "Mt", "Ds", "Rg", "Cn", "Nh", "Fl", "Mc", "Lv", "Ts", "Og",
};

struct ValenceEntry {
  int atomic_number;
  std::vector<int> valences;
};

const std::vector<ValenceEntry> &valence_table() {
  static const std::vector<ValenceEntry> table = {
    { 1, { 1 } },         // H
    { 5, { 3 } },         // B
    { 6, { 4 } },         // C
    { 7, { 3, 5 } },      // N
    { 8, { 2 } },         // O
    { 9, { 1 } },         // F
    { 13, { 3 } },        // Al
    { 14, { 4 } },        // Si
    { 15, { 3, 5 } },     // P
    { 16, { 2, 4, 6 } },  // S
    { 17, { 1 } },        // Cl
    { 32, { 4 } },        // Ge
    { 33, { 3, 5 } },     // As
    { 34, { 2, 4, 6 } },  // Se
    { 35, { 1 } },        // Br
    { 52, { 2, 4, 6 } },  // Te
    { 53, { 1 } },        // I
  };
  return table;
}

std::span<const int> lookup(int atomic_number) {
  for (const auto &e: valence_table()) {
    if (e.atomic_number == atomic_number)
      return e.valences;
  }
  return {};
}

}  // namespace

std::string_view element_symbol(int atomic_number) {
  if (atomic_number < 0 || atomic_number > kMaxAtomicNumber)
    return "?";
  return kSymbols[atomic_number];
}

int element_from_symbol(std::string_view symbol) {
  for (int z = 0; z <= kMaxAtomicNumber; ++z) {
    if (kSymbols[z] == symbol)
      return z;
  }
  return -1;
}

bool is_organic_subset(int atomic_number) {
  switch (atomic_number) {
  case 5: case 6: case 7: case 8: case 9: case 15: case 16: case 17: case 35:
  case 53:
    return true;
  default:
    return false;
  }
}

bool can_be_aromatic(int atomic_number) {
  switch (atomic_number) {
  case kStar: case 5: case 6: case 7: case 8: case 15: case 16: case 33:
  case 34:
    return true;
  default:
    return false;
  }
}

std::span<const int> allowed_valences(int atomic_number) {
  return lookup(atomic_number);
}

std::span<const int> allowed_valences(int atomic_number, int charge) {
  if (charge == 0)
    return lookup(atomic_number);
  auto shifted = lookup(atomic_number - charge);
  if (!shifted.empty() && atomic_number - charge > 0)
    return shifted;
  return lookup(atomic_number);
}

}  // namespace ocsrkit

//
// Project ocsrkit - Copyright 2026 ocsrkit authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef OCSRKIT_ELEMENT_H_
#define OCSRKIT_ELEMENT_H_

#include <span>
#include <string_view>

namespace ocsrkit {

// Atomic number 0 is reserved for the `*` pseudo-atom.
inline constexpr int kStar = 0;
inline constexpr int kMaxAtomicNumber = 118;

std::string_view element_symbol(int atomic_number);

// Exact, case-sensitive symbol lookup ("Cl", not "CL"). Returns -1 if the
// symbol is not a periodic-table element. "*" maps to kStar.
int element_from_symbol(std::string_view symbol);

bool is_organic_subset(int atomic_number);

// Elements that may be written in lowercase aromatic form.
bool can_be_aromatic(int atomic_number);

// Allowed valences in ascending order. Empty for elements without a valence
// model (metals, noble gases); such atoms are never flagged.
std::span<const int> allowed_valences(int atomic_number);

// Valences after the isoelectronic shift for a formal charge, e.g. N+ takes
// the valences of C and O- the valences of F. Falls back to the neutral
// table when the shifted element has no model.
std::span<const int> allowed_valences(int atomic_number, int charge);

}  // namespace ocsrkit

#endif  // OCSRKIT_ELEMENT_H_

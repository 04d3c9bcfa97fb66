//
// Project ocsrkit - Copyright 2026 ocsrkit authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef OCSRKIT_FINGERPRINT_H_
#define OCSRKIT_FINGERPRINT_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ocsrkit/molgraph.h"

namespace ocsrkit {

struct FingerprintParams {
  int radius = 2;
  int width = 2048;  // power of two, >= 64

  // Throws std::invalid_argument if out of range.
  void check() const;

  friend bool operator==(const FingerprintParams &,
                         const FingerprintParams &) = default;
};

// 64-bit FNV-1a.
std::uint64_t fnv1a64(std::span<const std::uint8_t> bytes,
                      std::uint64_t seed = 0xcbf29ce484222325ULL);

class Fingerprint {
public:
  Fingerprint(): Fingerprint(FingerprintParams {}) { }
  explicit Fingerprint(FingerprintParams params);

  const FingerprintParams &params() const noexcept { return params_; }
  std::span<const std::uint64_t> words() const noexcept { return words_; }

  bool test(int bit) const;
  void set(int bit);
  int popcount() const;
  std::vector<int> on_bits() const;
  // Lowercase hex, most significant word first; width/4 characters.
  std::string hex() const;

  friend bool operator==(const Fingerprint &, const Fingerprint &) = default;

private:
  FingerprintParams params_;
  std::vector<std::uint64_t> words_;
};

// Circular (ECFP-style) hashed fingerprint. Every atom contributes its
// environment identifier at each radius 0..params.radius; the bit index is
// the identifier modulo the width.
//
// Byte layout hashed (all integers int32 little-endian):
//   radius 0: [0, atomic_number, charge, degree, aromatic, star,
//              hydrogen_count, isotope]
//   radius r: [r, id_{r-1}(atom) as two int32 (low, high), then for each
//              neighbour sorted by (bond order, id_{r-1}): bond order,
//              id_{r-1}(neighbour) low, high]
std::vector<std::uint64_t> atom_environment_ids(const MolGraph &g,
                                                int radius);

Fingerprint circular_fp(const MolGraph &g, const FingerprintParams &params = {});

// |a & b| / |a | b|, and 0 when both are empty. Throws ParamMismatch.
double tanimoto(const Fingerprint &a, const Fingerprint &b);

}  // namespace ocsrkit

#endif  // OCSRKIT_FINGERPRINT_H_

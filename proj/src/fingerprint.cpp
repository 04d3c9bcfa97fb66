//
// Project ocsrkit - Copyright 2026 ocsrkit authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "ocsrkit/fingerprint.h"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <utility>

#include "ocsrkit/errors.h"

namespace ocsrkit {
namespace {

class ByteWriter {
public:
  void i32(std::int32_t v) {
    auto u = static_cast<std::uint32_t>(v);
    for (int i = 0; i < 4; ++i)
      bytes_.push_back(static_cast<std::uint8_t>(u >> (8 * i)));
  }
  void u64(std::uint64_t v) {
    i32(static_cast<std::int32_t>(static_cast<std::uint32_t>(v)));
    i32(static_cast<std::int32_t>(static_cast<std::uint32_t>(v >> 32)));
  }
  void clear() { bytes_.clear(); }
  std::uint64_t hash() const { return fnv1a64(bytes_); }

private:
  std::vector<std::uint8_t> bytes_;
};

}  // namespace

void FingerprintParams::check() const {
  if (radius < 0 || radius > 8)
    throw std::invalid_argument("fingerprint radius must be in [0, 8]");
  if (width < 64 || !std::has_single_bit(static_cast<unsigned>(width)))
    throw std::invalid_argument("fingerprint width must be a power of two >= 64");
}

std::uint64_t fnv1a64(std::span<const std::uint8_t> bytes,
                      std::uint64_t seed) {
  std::uint64_t h = seed;
  for (std::uint8_t b: bytes) {
    h ^= b;
    h *= 0x100000001b3ULL;
  }
  return h;
}

Fingerprint::Fingerprint(FingerprintParams params)
    : params_(params), words_(params.width / 64, 0) {
  params.check();
}

bool Fingerprint::test(int bit) const {
  return (words_[bit / 64] >> (bit % 64)) & 1;
}

void Fingerprint::set(int bit) {
  words_[bit / 64] |= std::uint64_t { 1 } << (bit % 64);
}

int Fingerprint::popcount() const {
  int c = 0;
  for (auto w: words_)
    c += std::popcount(w);
  return c;
}

std::vector<int> Fingerprint::on_bits() const {
  std::vector<int> out;
  for (int i = 0; i < params_.width; ++i)
    if (test(i))
      out.push_back(i);
  return out;
}

std::string Fingerprint::hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  for (auto it = words_.rbegin(); it != words_.rend(); ++it)
    for (int shift = 60; shift >= 0; shift -= 4)
      out += kDigits[(*it >> shift) & 0xf];
  return out;
}

std::vector<std::uint64_t> atom_environment_ids(const MolGraph &g,
                                                int radius) {
  const int n = g.atom_count();
  std::vector<std::uint64_t> all;
  all.reserve(static_cast<std::size_t>(n) * (radius + 1));
  std::vector<std::uint64_t> ids(n), next(n);
  ByteWriter w;
  for (int a = 0; a < n; ++a) {
    const Atom &atom = g.atom(a);
    w.clear();
    w.i32(0);
    w.i32(atom.atomic_number);
    w.i32(atom.charge);
    w.i32(g.degree(a));
    w.i32(atom.aromatic ? 1 : 0);
    w.i32(atom.is_star() ? 1 : 0);
    w.i32(g.hydrogen_count(a));
    w.i32(atom.isotope.value_or(0));
    ids[a] = w.hash();
  }
  all.insert(all.end(), ids.begin(), ids.end());

  std::vector<std::pair<int, std::uint64_t>> env;
  for (int r = 1; r <= radius; ++r) {
    for (int a = 0; a < n; ++a) {
      env.clear();
      for (const Neighbor &nb: g.neighbors(a))
        env.emplace_back(static_cast<int>(g.bond(nb.bond).order),
                         ids[nb.atom]);
      std::sort(env.begin(), env.end());
      w.clear();
      w.i32(r);
      w.u64(ids[a]);
      for (const auto &[order, id]: env) {
        w.i32(order);
        w.u64(id);
      }
      next[a] = w.hash();
    }
    std::swap(ids, next);
    all.insert(all.end(), ids.begin(), ids.end());
  }
  return all;
}

Fingerprint circular_fp(const MolGraph &g, const FingerprintParams &params) {
  Fingerprint fp(params);
  for (std::uint64_t id: atom_environment_ids(g, params.radius))
    fp.set(static_cast<int>(id % static_cast<std::uint64_t>(params.width)));
  return fp;
}

double tanimoto(const Fingerprint &a, const Fingerprint &b) {
  if (!(a.params() == b.params()))
    throw ParamMismatch("fingerprint parameters differ");
  auto wa = a.words(), wb = b.words();
  int both = 0, either = 0;
  for (std::size_t i = 0; i < wa.size(); ++i) {
    both += std::popcount(wa[i] & wb[i]);
    either += std::popcount(wa[i] | wb[i]);
  }
  if (either == 0)
    return 0.0;
  return static_cast<double>(both) / static_cast<double>(either);
}

}  // namespace ocsrkit

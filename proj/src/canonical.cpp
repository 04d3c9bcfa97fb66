//
// Project ocsrkit - Copyright 2026 ocsrkit authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <algorithm>
#include <climits>
#include <map>
#include <numeric>
#include <string>
#include <tuple>
#include <vector>

#include "ocsrkit/molgraph.h"

namespace ocsrkit {
namespace {

// Cells are identified by their start position: cls[v] is the number of
// atoms in strictly smaller cells. Individualizing keeps v at the start and
// pushes the rest of its cell one position up.
class Canonicalizer {
public:
  Canonicalizer(const MolGraph &g, std::span<const std::string> labels,
                const CanonicalOptions &opts)
      : g_(g), labels_(labels), n_(g.atom_count()) {
    write_opts_.stereo = opts.stereo;
  }

  CanonicalForm run() {
    if (n_ == 0)
      return {};
    std::vector<int> cls = initial_partition();
    search(std::move(cls), 0);
    return { best_smiles_, best_order_ };
  }

private:
  std::vector<int> initial_partition() const {
    std::map<std::string, int> label_ids;
    if (!labels_.empty()) {
      for (const auto &l: labels_)
        label_ids.emplace(l, 0);
      int next = 0;
      for (auto &[_, id]: label_ids)
        id = next++;
    }

    using Key = std::tuple<int, int, int, int, int, int, int>;
    std::vector<Key> keys(n_);
    for (int v = 0; v < n_; ++v) {
      const Atom &a = g_.atom(v);
      keys[v] = { a.atomic_number,
                  a.isotope.value_or(0),
                  a.charge,
                  g_.degree(v),
                  a.aromatic ? 1 : 0,
                  g_.hydrogen_count(v),
                  labels_.empty() ? 0 : label_ids.at(labels_[v]) };
    }
    std::vector<int> idx(n_);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(),
              [&](int x, int y) { return keys[x] < keys[y]; });
    std::vector<int> cls(n_);
    for (int i = 0; i < n_; ++i) {
      if (i > 0 && keys[idx[i]] == keys[idx[i - 1]])
        cls[idx[i]] = cls[idx[i - 1]];
      else
        cls[idx[i]] = i;
    }
    return cls;
  }

  static int count_cells(const std::vector<int> &cls) {
    std::vector<char> seen(cls.size(), 0);
    int cells = 0;
    for (int c: cls)
      if (!seen[c]++)
        ++cells;
    return cells;
  }

  void refine(std::vector<int> &cls) {
    int cells = count_cells(cls);
    std::vector<int> sig_offset(n_ + 1, 0);
    std::vector<int> sig;
    std::vector<int> idx(n_);
    while (cells < n_) {
      sig.clear();
      for (int v = 0; v < n_; ++v) {
        sig_offset[v] = static_cast<int>(sig.size());
        for (const Neighbor &nb: g_.neighbors(v))
          sig.push_back(cls[nb.atom] * 5
                        + static_cast<int>(g_.bond(nb.bond).order));
        std::sort(sig.begin() + sig_offset[v], sig.end());
      }
      sig_offset[n_] = static_cast<int>(sig.size());

      auto less = [&](int x, int y) {
        if (cls[x] != cls[y])
          return cls[x] < cls[y];
        return std::lexicographical_compare(
            sig.begin() + sig_offset[x], sig.begin() + sig_offset[x + 1],
            sig.begin() + sig_offset[y], sig.begin() + sig_offset[y + 1]);
      };
      std::iota(idx.begin(), idx.end(), 0);
      std::sort(idx.begin(), idx.end(), less);

      std::vector<int> next(n_);
      int new_cells = 0;
      for (int i = 0; i < n_; ++i) {
        if (i > 0 && !less(idx[i - 1], idx[i])) {
          next[idx[i]] = next[idx[i - 1]];
        } else {
          next[idx[i]] = i;
          ++new_cells;
        }
      }
      cls = std::move(next);
      if (new_cells == cells)
        break;
      cells = new_cells;
    }
  }

  int search(std::vector<int> cls, int depth) {
    refine(cls);

    // Lowest ambiguous cell.
    std::vector<int> size(n_, 0);
    for (int c: cls)
      ++size[c];
    int target = -1;
    for (int c = 0; c < n_; ++c) {
      if (size[c] > 1) {
        target = c;
        break;
      }
    }
    if (target < 0)
      return leaf(cls, depth);

    if (static_cast<int>(explored_.size()) <= depth)
      explored_.resize(depth + 1);
    explored_[depth].clear();

    for (int v = 0; v < n_; ++v) {
      if (cls[v] != target)
        continue;
      if (equivalent_to_explored(v, depth)) {
        explored_[depth].push_back(v);
        continue;
      }
      path_.resize(depth);
      path_.push_back(v);

      std::vector<int> child = cls;
      for (int u = 0; u < n_; ++u)
        if (u != v && cls[u] == target)
          child[u] = target + 1;
      int abort_level = search(std::move(child), depth + 1);
      explored_[depth].push_back(v);
      if (abort_level < depth)
        return abort_level;
    }
    return INT_MAX;
  }

  // v lies in the orbit of an explored sibling under the automorphisms found
  // so far that fix the current path pointwise.
  bool equivalent_to_explored(int v, int depth) {
    if (explored_[depth].empty() || automorphisms_.empty())
      return false;
    std::vector<int> parent(n_);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[x] != x)
        x = parent[x] = parent[parent[x]];
      return x;
    };
    for (const auto &gamma: automorphisms_) {
      bool fixes = true;
      for (int i = 0; i < depth && fixes; ++i)
        fixes = gamma[path_[i]] == path_[i];
      if (!fixes)
        continue;
      for (int x = 0; x < n_; ++x)
        parent[find(x)] = find(gamma[x]);
    }
    int rv = find(v);
    for (int u: explored_[depth])
      if (find(u) == rv)
        return true;
    return false;
  }

  int leaf(const std::vector<int> &ranks, int depth) {
    WrittenSmiles w = write_smiles_ranked(g_, ranks, write_opts_);
    std::string cert = w.smiles;
    if (!labels_.empty()) {
      for (int a: w.order) {
        cert += '\x1f';
        cert += labels_[a];
      }
    }

    if (best_cert_.empty() || cert < best_cert_) {
      best_cert_ = std::move(cert);
      best_smiles_ = std::move(w.smiles);
      best_order_ = std::move(w.order);
      return INT_MAX;
    }
    if (cert != best_cert_)
      return INT_MAX;

    std::vector<int> gamma(n_);
    bool identity = true;
    for (int k = 0; k < n_; ++k) {
      gamma[w.order[k]] = best_order_[k];
      identity = identity && w.order[k] == best_order_[k];
    }
    if (identity)
      return INT_MAX;
    automorphisms_.push_back(gamma);

    // If gamma fixes path[0..L) and maps path[L] onto an explored sibling,
    // the subtree below path[L] mirrors one already searched.
    for (int level = 0; level < depth; ++level) {
      int image = gamma[path_[level]];
      if (image == path_[level])
        continue;
      const auto &done = explored_[level];
      if (std::find(done.begin(), done.end(), image) != done.end())
        return level;
      break;
    }
    return INT_MAX;
  }

  const MolGraph &g_;
  std::span<const std::string> labels_;
  int n_;
  WriteOptions write_opts_;

  std::vector<int> path_;
  std::vector<std::vector<int>> explored_;
  std::vector<std::vector<int>> automorphisms_;

  std::string best_cert_;
  std::string best_smiles_;
  std::vector<int> best_order_;
};

}  // namespace

CanonicalForm canonicalize(const MolGraph &g,
                           std::span<const std::string> labels,
                           const CanonicalOptions &opts) {
  if (!labels.empty() && static_cast<int>(labels.size()) != g.atom_count())
    throw std::invalid_argument("one label per atom required");
  return Canonicalizer(g, labels, opts).run();
}

std::string canonical_smiles(const MolGraph &g,
                             const CanonicalOptions &opts) {
  return canonicalize(g, {}, opts).smiles;
}

}  // namespace ocsrkit

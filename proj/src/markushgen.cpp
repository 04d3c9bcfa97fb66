//
// Project ocsrkit - Copyright 2026 ocsrkit authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "ocsrkit/markushgen.h"

#include <algorithm>
#include <array>
#include <istream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "ocsrkit/errors.h"

namespace ocsrkit {
namespace {

std::string trim(std::string_view s) {
  const char *ws = " \t\r\n";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos)
    return {};
  auto e = s.find_last_not_of(ws);
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(std::string_view s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    auto comma = s.find(',', start);
    if (comma == std::string_view::npos)
      comma = s.size();
    std::string item = trim(s.substr(start, comma - start));
    if (!item.empty())
      out.push_back(std::move(item));
    start = comma + 1;
  }
  return out;
}

int parse_int(const std::string &key, const std::string &value) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(value, &used);
  } catch (const std::exception &) {
    used = 0;
  }
  if (used != value.size() || value.empty())
    throw std::invalid_argument("config: '" + key + "' expects an integer");
  return v;
}

template <class T>
const T &pick(Rng &rng, const std::vector<T> &v) {
  return v[rng.below(v.size())];
}

ESmilesDoc finish(MolGraph g, std::vector<Annotation> annotations) {
  ESmilesDoc doc{ std::move(g), std::move(annotations), {} };
  doc.raw = write_esmiles(doc);
  return doc;
}

bool has_perfect_matching(const MolGraph &g, std::vector<int> &mate, int from) {
  int v = from;
  while (v < g.atom_count() && mate[v] >= 0)
    ++v;
  if (v == g.atom_count())
    return true;
  for (const Neighbor &nb: g.neighbors(v)) {
    if (mate[nb.atom] >= 0)
      continue;
    mate[v] = nb.atom;
    mate[nb.atom] = v;
    if (has_perfect_matching(g, mate, v + 1))
      return true;
    mate[v] = mate[nb.atom] = -1;
  }
  return false;
}

}  // namespace

void GenConfig::check() const {
  if (min_substitutions < 0 || min_substitutions > max_substitutions)
    throw std::invalid_argument("substitution range must satisfy 0 <= min <= max");
  if (group_name_pool.empty())
    throw std::invalid_argument("group name pool is empty");
  if (polymer_repeat_labels.empty())
    throw std::invalid_argument("polymer repeat label pool is empty");
  for (const auto &l: polymer_repeat_labels)
    if (l.empty() || l.find('?') != std::string::npos
        || l.find('<') != std::string::npos)
      throw std::invalid_argument("invalid repeat label '" + l + "'");
  for (const auto &n: group_name_pool)
    if (n.empty() || n.find('?') != std::string::npos
        || n.find('<') != std::string::npos)
      throw std::invalid_argument("invalid group name '" + n + "'");
  if (min_rings < 1 || min_rings > max_rings || max_rings > 12)
    throw std::invalid_argument("ring range must satisfy 1 <= min <= max <= 12");
}

GenConfig read_gen_config(std::istream &in, GenConfig cfg) {
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos)
      line.resize(hash);
    line = trim(line);
    if (line.empty())
      continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config: expected key=value, got '" + line + "'");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key == "seed") {
      try {
        std::size_t used = 0;
        cfg.seed = std::stoull(value, &used);
        if (used != value.size())
          throw std::invalid_argument("");
      } catch (const std::exception &) {
        throw std::invalid_argument("config: 'seed' expects an unsigned integer");
      }
    } else if (key == "min_substitutions") {
      cfg.min_substitutions = parse_int(key, value);
    } else if (key == "max_substitutions") {
      cfg.max_substitutions = parse_int(key, value);
    } else if (key == "min_rings") {
      cfg.min_rings = parse_int(key, value);
    } else if (key == "max_rings") {
      cfg.max_rings = parse_int(key, value);
    } else if (key == "group_names") {
      cfg.group_name_pool = split_list(value);
    } else if (key == "repeat_labels") {
      cfg.polymer_repeat_labels = split_list(value);
    } else {
      throw std::invalid_argument("config: unknown key '" + key + "'");
    }
  }
  cfg.check();
  return cfg;
}

std::vector<std::string> read_lexicon(std::istream &in) {
  std::vector<std::string> names;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos)
      line.resize(hash);
    line = trim(line);
    if (!line.empty())
      names.push_back(line);
  }
  return names;
}

std::vector<SubstitutionSite> substitution_sites(const MolGraph &g) {
  std::vector<SubstitutionSite> sites;
  for (int a = 0; a < g.atom_count(); ++a) {
    const Atom &atom = g.atom(a);
    if (atom.is_star() || atom.atomic_number == 1)
      continue;
    if (g.degree(a) == 1) {
      const Neighbor &nb = g.neighbors(a)[0];
      if (g.bond(nb.bond).order == BondOrder::kSingle
          && !g.atom(nb.atom).is_star()) {
        sites.push_back({ SiteKind::kTerminal, a });
        continue;
      }
    }
    if (g.in_ring(a) && g.hydrogen_count(a) > 0)
      sites.push_back({ SiteKind::kRingHydrogen, a });
  }
  return sites;
}

ESmilesDoc randomize_to_markush(const MolGraph &g, const GenConfig &cfg,
                                Rng &rng) {
  cfg.check();
  for (const Atom &a: g.atoms())
    if (a.is_star())
      throw std::invalid_argument("input molecule already contains '*' atoms");
  std::vector<SubstitutionSite> sites = substitution_sites(g);
  if (sites.empty())
    throw NoSubstitutableSite("molecule has no terminal atom or ring hydrogen");

  const int k = std::min(
      rng.uniform_int(cfg.min_substitutions, cfg.max_substitutions),
      static_cast<int>(sites.size()));
  rng.shuffle(std::span<SubstitutionSite>(sites));
  sites.resize(k);
  std::sort(sites.begin(), sites.end(),
            [](const SubstitutionSite &x, const SubstitutionSite &y) {
              return x.atom < y.atom;
            });

  std::vector<Atom> atoms = g.atoms();
  std::vector<Bond> bonds = g.bonds();
  std::vector<Annotation> annotations;
  for (const SubstitutionSite &s: sites) {
    int star = s.atom;
    if (s.kind == SiteKind::kTerminal) {
      atoms[s.atom] = Atom::star();
    } else {
      Atom &host = atoms[s.atom];
      if (host.explicit_h)
        --*host.explicit_h;
      atoms.push_back(Atom::star());
      star = static_cast<int>(atoms.size()) - 1;
      bonds.push_back({ s.atom, star, BondOrder::kSingle, 0 });
    }
    Annotation a;
    a.kind = AnnotationKind::kSubstituent;
    a.index = star;
    a.group_name = pick(rng, cfg.group_name_pool);
    annotations.push_back(std::move(a));
  }
  return finish(MolGraph(std::move(atoms), std::move(bonds)),
                std::move(annotations));
}

ESmilesDoc gen_polymer(const GenConfig &cfg, Rng &rng) {
  cfg.check();
  static const std::array<std::string_view, 6> kSideGroups = {
    "", "C", "Cl", "O", "C(=O)OC", "C#N",
  };
  static const std::array<std::string_view, 4> kRings = {
    "c1ccccc1", "c1ccncc1", "c1ccsc1", "C1CCCCC1",
  };

  std::string smiles = "*";
  std::vector<Annotation> annotations;
  annotations.push_back({ AnnotationKind::kSubstituent, 0,
                          std::string(kDummy), std::nullopt, std::nullopt });
  const std::string &label = pick(rng, cfg.polymer_repeat_labels);
  const std::string &name = pick(rng, cfg.group_name_pool);

  const int units = rng.uniform_int(1, 4);
  for (int i = 0; i < units; ++i) {
    smiles += 'C';
    std::string_view side = kSideGroups[rng.below(kSideGroups.size())];
    if (!side.empty()) {
      smiles += '(';
      smiles += side;
      smiles += ')';
    }
  }

  if (rng.chance(0.5)) {
    // Ring unit: an attachment with uncertain position on the only ring.
    smiles += kRings[rng.below(kRings.size())];
    annotations.push_back({ AnnotationKind::kRingAttachment, 0, name, label,
                            std::nullopt });
  } else {
    // Chain unit closed by a second star carrying the repeat label.
    MolGraph head = parse_smiles(smiles);
    smiles += '*';
    annotations.push_back({ AnnotationKind::kSubstituent, head.atom_count(),
                            name, label, std::nullopt });
  }
  return finish(parse_smiles(smiles), std::move(annotations));
}

MolGraph gen_fused_rings(const GenConfig &cfg, Rng &rng) {
  cfg.check();
  return gen_fused_rings(rng.uniform_int(cfg.min_rings, cfg.max_rings), rng);
}

MolGraph gen_fused_rings(int ring_count, Rng &rng) {
  if (ring_count < 1)
    throw std::invalid_argument("ring count must be at least 1");
  int n = 6;
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < 6; ++i)
    edges.emplace_back(i, (i + 1) % 6);
  std::vector<int> degree(6, 2);
  bool all_six = true;

  for (int r = 1; r < ring_count; ++r) {
    std::vector<int> candidates;
    for (std::size_t e = 0; e < edges.size(); ++e)
      if (degree[edges[e].first] == 2 && degree[edges[e].second] == 2)
        candidates.push_back(static_cast<int>(e));
    if (candidates.empty())
      break;
    auto [u, v] = edges[candidates[rng.below(candidates.size())]];
    const int size = rng.chance(0.5) ? 6 : 5;
    all_six = all_six && size == 6;
    int prev = u;
    for (int i = 0; i < size - 2; ++i) {
      edges.emplace_back(prev, n);
      degree.push_back(0);
      ++degree[prev];
      ++degree[n];
      prev = n++;
    }
    edges.emplace_back(prev, v);
    ++degree[prev];
    ++degree[v];
  }

  std::vector<Atom> atoms(n);
  std::vector<Bond> bonds;
  for (auto [a, b]: edges)
    bonds.push_back({ a, b, BondOrder::kSingle, 0 });
  MolGraph skeleton(atoms, bonds);

  std::vector<int> mate(n, -1);
  if (all_six && has_perfect_matching(skeleton, mate, 0)) {
    for (Atom &a: atoms)
      a.aromatic = true;
    for (Bond &b: bonds)
      b.order = BondOrder::kAromatic;
    return MolGraph(std::move(atoms), std::move(bonds));
  }

  // Aliphatic system with sparse, non-adjacent ring heteroatoms.
  std::vector<char> hetero(n, 0);
  for (int a = 0; a < n; ++a) {
    bool neighbor_hetero = false;
    for (const Neighbor &nb: skeleton.neighbors(a))
      neighbor_hetero = neighbor_hetero || hetero[nb.atom];
    if (neighbor_hetero || !rng.chance(0.12))
      continue;
    hetero[a] = 1;
    if (degree[a] == 2)
      atoms[a].atomic_number = rng.chance(0.5) ? 8 : 7;
    else
      atoms[a].atomic_number = 7;
  }
  return MolGraph(std::move(atoms), std::move(bonds));
}

}  // namespace ocsrkit

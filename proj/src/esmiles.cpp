//
// Project ocsrkit - Copyright 2026 ocsrkit authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "ocsrkit/esmiles.h"

#include <algorithm>
#include <cctype>
#include <climits>
#include <map>
#include <numeric>
#include <tuple>

#include "ocsrkit/errors.h"

namespace ocsrkit {
namespace {

struct ExtensionParser {
  std::string_view ext;
  std::size_t base;  // offset of ext within the full text

  std::vector<Annotation> parse() const {
    std::vector<Annotation> out;
    std::size_t pos = 0;
    while (pos < ext.size()) {
      AnnotationKind kind;
      std::string_view rest = ext.substr(pos);
      if (rest.starts_with("<a>"))
        kind = AnnotationKind::kSubstituent;
      else if (rest.starts_with("<r>"))
        kind = AnnotationKind::kRingAttachment;
      else if (rest.starts_with("<c>"))
        kind = AnnotationKind::kAbstractRing;
      else
        throw SyntaxError("malformed extension tag", base + pos);

      const std::string close = "</" + std::string(tag_name(kind)) + ">";
      const std::size_t body = pos + 3;
      const std::size_t end = ext.find(close, body);
      if (end == std::string_view::npos)
        throw SyntaxError("missing " + close, base + pos);
      out.push_back(payload(kind, ext.substr(body, end - body), base + body));
      pos = end + close.size();
    }
    return out;
  }

  static Annotation payload(AnnotationKind kind, std::string_view text,
                            std::size_t offset) {
    const std::size_t colon = text.find(':');
    if (colon == std::string_view::npos)
      throw SyntaxError("missing ':' in annotation", offset);
    std::string_view digits = text.substr(0, colon);
    if (digits.empty() || digits.size() > 9
        || !std::all_of(digits.begin(), digits.end(), [](char c) {
             return std::isdigit(static_cast<unsigned char>(c));
           }))
      throw SyntaxError("annotation index must be a non-negative integer",
                        offset);

    Annotation a;
    a.kind = kind;
    a.index = std::stoi(std::string(digits));
    std::string_view name = text.substr(colon + 1);
    const std::size_t q = name.find('?');
    if (q != std::string_view::npos) {
      std::string_view rep = name.substr(q + 1);
      if (rep.empty() || rep.find('?') != std::string_view::npos)
        throw SyntaxError("malformed repeat suffix", offset + colon + 1 + q);
      a.repeat = std::string(rep);
      name = name.substr(0, q);
    }
    if (name.empty())
      throw SyntaxError("empty group name", offset + colon + 1);
    a.group_name = std::string(name);
    return a;
  }
};

std::string annotation_text(const Annotation &a) {
  std::string out;
  out += '<';
  out += tag_name(a.kind);
  out += '>';
  out += std::to_string(a.index);
  out += ':';
  out += a.group_name;
  if (a.repeat) {
    out += '?';
    out += *a.repeat;
  }
  out += "</";
  out += tag_name(a.kind);
  out += '>';
  return out;
}

std::string emit(std::string smiles, std::vector<Annotation> annotations) {
  if (annotations.empty())
    return smiles;
  std::sort(annotations.begin(), annotations.end(),
            [](const Annotation &x, const Annotation &y) {
              return std::tie(x.index, x.kind, x.group_name, x.repeat)
                     < std::tie(y.index, y.kind, y.group_name, y.repeat);
            });
  smiles += kSep;
  for (const Annotation &a: annotations)
    smiles += annotation_text(a);
  return smiles;
}

// Moves annotations onto a relabelled copy of the graph. new_pos[i] is the new
// index of atom i and `target` is the relabelled graph.
std::vector<Annotation> remap(const ESmilesDoc &doc,
                              std::span<const int> new_pos,
                              const MolGraph &target) {
  const int n = doc.graph.atom_count();
  const int ring_count = static_cast<int>(doc.graph.rings().size());
  std::map<std::vector<int>, int> ring_lookup;
  for (std::size_t i = 0; i < target.rings().size(); ++i)
    ring_lookup.emplace(target.rings()[i], static_cast<int>(i));

  std::vector<Annotation> out;
  std::vector<std::size_t> abstract;
  for (const Annotation &a: doc.annotations) {
    Annotation b = a;
    switch (a.kind) {
    case AnnotationKind::kSubstituent:
      if (a.index < n)
        b.index = new_pos[a.index];
      break;
    case AnnotationKind::kRingAttachment:
      if (a.index < ring_count) {
        std::vector<int> members;
        for (int atom: doc.graph.rings()[a.index])
          members.push_back(new_pos[atom]);
        std::sort(members.begin(), members.end());
        auto it = ring_lookup.find(members);
        if (it != ring_lookup.end())
          b.index = it->second;
      }
      break;
    case AnnotationKind::kAbstractRing:
      if (a.bound_atom)
        b.bound_atom = new_pos[*a.bound_atom];
      abstract.push_back(out.size());
      break;
    }
    out.push_back(std::move(b));
  }

  // Circle indices follow the bound star atoms so that re-binding after a
  // reparse reproduces the same association.
  std::stable_sort(abstract.begin(), abstract.end(),
                   [&](std::size_t x, std::size_t y) {
                     int bx = out[x].bound_atom.value_or(INT_MAX);
                     int by = out[y].bound_atom.value_or(INT_MAX);
                     return std::tie(bx, out[x].index)
                            < std::tie(by, out[y].index);
                   });
  for (std::size_t k = 0; k < abstract.size(); ++k)
    out[abstract[k]].index = static_cast<int>(k);
  return out;
}

std::vector<int> inverse(std::span<const int> order) {
  std::vector<int> pos(order.size());
  for (std::size_t k = 0; k < order.size(); ++k)
    pos[order[k]] = static_cast<int>(k);
  return pos;
}

}  // namespace

std::string_view tag_name(AnnotationKind kind) {
  switch (kind) {
  case AnnotationKind::kSubstituent:
    return "a";
  case AnnotationKind::kRingAttachment:
    return "r";
  case AnnotationKind::kAbstractRing:
    return "c";
  }
  return "?";
}

std::string_view violation_name(ViolationCode code) {
  switch (code) {
  case ViolationCode::kSyntax:
    return "syntax";
  case ViolationCode::kValence:
    return "valence";
  case ViolationCode::kAtomIndexOutOfRange:
    return "atom_index_out_of_range";
  case ViolationCode::kSubstituentOnNonStar:
    return "substituent_on_non_star";
  case ViolationCode::kStarUncovered:
    return "star_uncovered";
  case ViolationCode::kStarCoveredTwice:
    return "star_covered_twice";
  case ViolationCode::kRingIndexOutOfRange:
    return "ring_index_out_of_range";
  case ViolationCode::kRepeatOnAbstractRing:
    return "repeat_on_abstract_ring";
  case ViolationCode::kAbstractRingUnbound:
    return "abstract_ring_unbound";
  case ViolationCode::kDuplicateCircleIndex:
    return "duplicate_circle_index";
  }
  return "unknown";
}

std::string_view smiles_part(std::string_view text) {
  const std::size_t sep = text.find(kSep);
  return sep == std::string_view::npos ? text : text.substr(0, sep);
}

void bind_abstract_rings(const MolGraph &g,
                         std::vector<Annotation> &annotations) {
  const int n = g.atom_count();
  std::vector<char> consumed(n, 0);
  for (const Annotation &a: annotations)
    if (a.kind == AnnotationKind::kSubstituent && a.index < n)
      consumed[a.index] = 1;
  std::vector<int> free_stars;
  for (int i = 0; i < n; ++i)
    if (g.atom(i).is_star() && !consumed[i])
      free_stars.push_back(i);

  std::vector<std::size_t> rings;
  for (std::size_t i = 0; i < annotations.size(); ++i) {
    if (annotations[i].kind == AnnotationKind::kAbstractRing) {
      annotations[i].bound_atom.reset();
      rings.push_back(i);
    }
  }
  std::stable_sort(rings.begin(), rings.end(),
                   [&](std::size_t x, std::size_t y) {
                     return annotations[x].index < annotations[y].index;
                   });
  for (std::size_t k = 0; k < rings.size() && k < free_stars.size(); ++k)
    annotations[rings[k]].bound_atom = free_stars[k];
}

ESmilesDoc parse_esmiles(std::string_view text, ParseMode mode) {
  if (text.empty())
    throw EmptyInput();
  ESmilesDoc doc;
  doc.raw = std::string(text);
  const std::size_t sep = text.find(kSep);
  std::string_view smiles = text.substr(0, sep);
  doc.graph = parse_smiles(smiles, mode);
  if (sep != std::string_view::npos) {
    const std::size_t base = sep + kSep.size();
    doc.annotations = ExtensionParser { text.substr(base), base }.parse();
  }
  bind_abstract_rings(doc.graph, doc.annotations);

  if (mode == ParseMode::kStrict) {
    const int rings = static_cast<int>(doc.graph.rings().size());
    for (const Annotation &a: doc.annotations) {
      if (a.kind == AnnotationKind::kSubstituent
          && a.index >= doc.graph.atom_count())
        throw IndexError("atom index " + std::to_string(a.index)
                         + " out of range");
      if (a.kind == AnnotationKind::kRingAttachment && a.index >= rings)
        throw IndexError("ring index " + std::to_string(a.index)
                         + " out of range");
    }
  }
  return doc;
}

std::vector<Violation> validate_esmiles(const ESmilesDoc &doc,
                                        ParseMode mode) {
  const bool strict = mode == ParseMode::kStrict;
  const MolGraph &g = doc.graph;
  const int n = g.atom_count();
  const int rings = static_cast<int>(g.rings().size());
  std::vector<Violation> out;

  if (strict) {
    for (const auto &v: validate_valence(g))
      out.push_back({ ViolationCode::kValence,
                      "atom " + std::to_string(v.atom) + " has valence "
                          + std::to_string(v.used) + ", allowed "
                          + std::to_string(v.allowed),
                      std::nullopt, v.atom });
  }

  std::vector<int> cover(n, 0);
  std::map<int, int> circle_seen;
  for (std::size_t i = 0; i < doc.annotations.size(); ++i) {
    const Annotation &a = doc.annotations[i];
    const int pos = static_cast<int>(i);
    switch (a.kind) {
    case AnnotationKind::kSubstituent:
      if (a.index >= n) {
        out.push_back({ ViolationCode::kAtomIndexOutOfRange,
                        "<a> index " + std::to_string(a.index)
                            + " out of range (" + std::to_string(n)
                            + " atoms)",
                        pos, std::nullopt });
        break;
      }
      ++cover[a.index];
      if (strict && !g.atom(a.index).is_star())
        out.push_back({ ViolationCode::kSubstituentOnNonStar,
                        "<a> index " + std::to_string(a.index)
                            + " is not a star atom",
                        pos, a.index });
      break;
    case AnnotationKind::kRingAttachment:
      if (a.index >= rings)
        out.push_back({ ViolationCode::kRingIndexOutOfRange,
                        "<r> ring index " + std::to_string(a.index)
                            + " out of range (" + std::to_string(rings)
                            + " rings)",
                        pos, std::nullopt });
      break;
    case AnnotationKind::kAbstractRing:
      if (a.repeat)
        out.push_back({ ViolationCode::kRepeatOnAbstractRing,
                        "repeat suffix is not allowed on <c>", pos,
                        std::nullopt });
      if (a.bound_atom) {
        ++cover[*a.bound_atom];
      } else if (strict) {
        out.push_back({ ViolationCode::kAbstractRingUnbound,
                        "<c> " + std::to_string(a.index)
                            + " has no free star atom to bind",
                        pos, std::nullopt });
      }
      if (strict && circle_seen[a.index]++ > 0)
        out.push_back({ ViolationCode::kDuplicateCircleIndex,
                        "duplicate <c> index " + std::to_string(a.index),
                        pos, std::nullopt });
      break;
    }
  }

  if (strict) {
    for (int i = 0; i < n; ++i) {
      if (!g.atom(i).is_star())
        continue;
      if (cover[i] == 0)
        out.push_back({ ViolationCode::kStarUncovered,
                        "star atom " + std::to_string(i)
                            + " has no annotation",
                        std::nullopt, i });
      else if (cover[i] > 1)
        out.push_back({ ViolationCode::kStarCoveredTwice,
                        "star atom " + std::to_string(i)
                            + " is annotated more than once",
                        std::nullopt, i });
    }
  }
  return out;
}

std::vector<Violation> check_esmiles(std::string_view text, ParseMode mode) {
  try {
    ESmilesDoc doc = parse_esmiles(text, ParseMode::kLenient);
    return validate_esmiles(doc, mode);
  } catch (const Error &e) {
    return { { ViolationCode::kSyntax, e.what(), std::nullopt,
               std::nullopt } };
  } catch (const std::invalid_argument &e) {
    return { { ViolationCode::kSyntax, e.what(), std::nullopt,
               std::nullopt } };
  }
}

std::string write_esmiles(const ESmilesDoc &doc, int root) {
  if (doc.graph.empty())
    return emit("", doc.annotations);
  WrittenSmiles w = write_smiles_ordered(doc.graph, root);
  if (doc.annotations.empty())
    return w.smiles;
  std::vector<int> pos = inverse(w.order);
  MolGraph target = doc.graph.permuted(pos);
  return emit(std::move(w.smiles), remap(doc, pos, target));
}

std::string canonical_esmiles(const ESmilesDoc &doc,
                              const CanonicalEsmilesOptions &opts) {
  const MolGraph &g = doc.graph;
  const int n = g.atom_count();
  if (n == 0)
    return emit("", doc.annotations);
  CanonicalOptions copts;
  copts.stereo = opts.stereo;
  if (doc.annotations.empty())
    return canonicalize(g, {}, copts).smiles;

  std::vector<std::vector<std::string>> per_atom(n);
  auto label = [](char tag, const Annotation &a) {
    std::string s(1, tag);
    s += '\x1d';
    s += a.group_name;
    if (a.repeat) {
      s += '?';
      s += *a.repeat;
    }
    return s;
  };
  const int rings = static_cast<int>(g.rings().size());
  for (const Annotation &a: doc.annotations) {
    switch (a.kind) {
    case AnnotationKind::kSubstituent:
      if (a.index < n)
        per_atom[a.index].push_back(label('a', a));
      break;
    case AnnotationKind::kRingAttachment:
      if (a.index < rings)
        for (int atom: g.rings()[a.index])
          per_atom[atom].push_back(label('r', a));
      break;
    case AnnotationKind::kAbstractRing:
      if (a.bound_atom)
        per_atom[*a.bound_atom].push_back(label('c', a));
      break;
    }
  }
  std::vector<std::string> labels(n);
  for (int i = 0; i < n; ++i) {
    std::sort(per_atom[i].begin(), per_atom[i].end());
    for (const auto &l: per_atom[i]) {
      labels[i] += l;
      labels[i] += '\x1c';
    }
  }

  CanonicalForm cf = canonicalize(g, labels, copts);
  std::vector<int> pos = inverse(cf.order);
  MolGraph target = g.permuted(pos);
  return emit(std::move(cf.smiles), remap(doc, pos, target));
}

bool same_document(const ESmilesDoc &a, const ESmilesDoc &b) {
  return canonical_esmiles(a) == canonical_esmiles(b);
}

}  // namespace ocsrkit

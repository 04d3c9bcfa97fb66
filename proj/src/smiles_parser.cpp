//
// Project ocsrkit - Copyright 2026 ocsrkit authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <cctype>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ocsrkit/errors.h"
#include "ocsrkit/molgraph.h"

namespace ocsrkit {
namespace {

struct PendingBond {
  std::optional<BondOrder> order;  // unset: implicit
  char direction = 0;
  std::size_t offset = 0;
};

struct OpenRing {
  int atom;
  PendingBond bond;
  std::size_t offset;
};

struct RawBond {
  Bond bond;
  bool implicit;  // written without a bond symbol
};

class SmilesParser {
public:
  explicit SmilesParser(std::string_view text): text_(text) { }

  MolGraph parse(ParseMode mode) {
    if (text_.empty())
      throw EmptyInput();
    run();
    MolGraph g = build();
    if (mode == ParseMode::kStrict) {
      auto violations = validate_valence(g);
      if (!violations.empty()) {
        const auto &v = violations.front();
        throw ValenceError("atom " + std::to_string(v.atom) + " has valence "
                               + std::to_string(v.used) + ", allowed "
                               + std::to_string(v.allowed),
                           v.atom);
      }
    }
    return g;
  }

private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }

  [[noreturn]] void fail(const std::string &what) const {
    throw SyntaxError(what, pos_);
  }
  [[noreturn]] void fail(const std::string &what, std::size_t at) const {
    throw SyntaxError(what, at);
  }

  void run() {
    int prev = -1;
    std::vector<int> branches;
    std::vector<std::size_t> branch_offsets;
    std::optional<PendingBond> pending;
    bool after_dot = false;

    while (!at_end()) {
      const char c = peek();
      if (c == '(') {
        if (prev < 0)
          fail("branch without preceding atom");
        if (pending)
          fail("bond before branch");
        branches.push_back(prev);
        branch_offsets.push_back(pos_);
        ++pos_;
        if (peek() == ')')
          fail("empty branch");
        continue;
      }
      if (c == ')') {
        if (branches.empty())
          fail("unbalanced ')'");
        if (pending)
          fail("bond at end of branch");
        prev = branches.back();
        branches.pop_back();
        branch_offsets.pop_back();
        ++pos_;
        continue;
      }
      if (c == '.') {
        if (prev < 0 || pending)
          fail("misplaced '.'");
        if (!branches.empty())
          fail("'.' inside branch");
        prev = -1;
        after_dot = true;
        ++pos_;
        continue;
      }
      if (auto order = bond_symbol(c)) {
        if (prev < 0)
          fail("bond without preceding atom");
        if (pending)
          fail("two consecutive bond symbols");
        PendingBond pb;
        pb.order = *order;
        pb.direction = (c == '/' || c == '\\') ? c : 0;
        pb.offset = pos_;
        pending = pb;
        ++pos_;
        continue;
      }
      if (c == '$')
        fail("quadruple bonds are not supported");
      if (std::isdigit(static_cast<unsigned char>(c)) || c == '%') {
        if (prev < 0)
          fail("ring closure without preceding atom");
        ring_closure(prev, pending);
        pending.reset();
        continue;
      }

      const std::size_t atom_offset = pos_;
      int atom = parse_atom();
      if (prev >= 0) {
        add_bond(prev, atom, pending.value_or(PendingBond {}), atom_offset);
      } else if (pending) {
        fail("bond without preceding atom", pending->offset);
      }
      pending.reset();
      prev = atom;
      after_dot = false;
    }

    if (pending)
      fail("dangling bond symbol", pending->offset);
    if (!branches.empty())
      fail("unbalanced '('", branch_offsets.back());
    if (after_dot)
      fail("trailing '.'");
    if (!open_rings_.empty())
      fail("unclosed ring " + std::to_string(open_rings_.begin()->first),
           open_rings_.begin()->second.offset);
  }

  static std::optional<BondOrder> bond_symbol(char c) {
    switch (c) {
    case '-': case '/': case '\\':
      return BondOrder::kSingle;
    case '=':
      return BondOrder::kDouble;
    case '#':
      return BondOrder::kTriple;
    case ':':
      return BondOrder::kAromatic;
    default:
      return std::nullopt;
    }
  }

  void ring_closure(int atom, const std::optional<PendingBond> &pending) {
    const std::size_t start = pos_;
    int number;
    if (peek() == '%') {
      if (!std::isdigit(static_cast<unsigned char>(peek(1)))
          || !std::isdigit(static_cast<unsigned char>(peek(2))))
        fail("'%' must be followed by two digits");
      number = (peek(1) - '0') * 10 + (peek(2) - '0');
      pos_ += 3;
    } else {
      number = peek() - '0';
      ++pos_;
    }

    auto it = open_rings_.find(number);
    if (it == open_rings_.end()) {
      OpenRing r { atom, pending.value_or(PendingBond {}), start };
      open_rings_.emplace(number, r);
      return;
    }

    OpenRing open = it->second;
    open_rings_.erase(it);
    if (open.atom == atom)
      fail("ring closure to the same atom", start);
    PendingBond pb = pending.value_or(PendingBond {});
    if (open.bond.order && pb.order
        && (*open.bond.order != *pb.order
            || (open.bond.direction != 0 && pb.direction != 0
                && open.bond.direction == pb.direction)))
      fail("conflicting ring closure bonds", start);
    PendingBond merged = pb.order ? pb : open.bond;
    // Direction symbols on the opening side are written from the opening
    // atom; keep the begin atom consistent with that.
    if (!pb.order && open.bond.order)
      add_bond(open.atom, atom, merged, start, true);
    else
      add_bond(atom, open.atom, merged, start, true);
  }

  void add_bond(int from, int to, const PendingBond &pb, std::size_t offset,
                bool check_duplicate = false) {
    if (check_duplicate) {
      for (const RawBond &rb: bonds_) {
        if ((rb.bond.begin == from && rb.bond.end == to)
            || (rb.bond.begin == to && rb.bond.end == from))
          fail("duplicate bond", offset);
      }
    }
    RawBond rb;
    rb.bond.begin = from;
    rb.bond.end = to;
    rb.implicit = !pb.order.has_value();
    if (pb.order) {
      rb.bond.order = *pb.order;
      rb.bond.direction = pb.direction;
    } else {
      rb.bond.order = atoms_[from].aromatic && atoms_[to].aromatic
                          ? BondOrder::kAromatic
                          : BondOrder::kSingle;
    }
    bonds_.push_back(rb);
  }

  int parse_atom() {
    Atom a;
    const char c = peek();
    if (c == '[') {
      parse_bracket_atom(a);
    } else if (c == '*') {
      a = Atom::star();
      ++pos_;
    } else if (c == 'C' && peek(1) == 'l') {
      a.atomic_number = 17;
      pos_ += 2;
    } else if (c == 'B' && peek(1) == 'r') {
      a.atomic_number = 35;
      pos_ += 2;
    } else {
      switch (c) {
      case 'B': a.atomic_number = 5; break;
      case 'C': a.atomic_number = 6; break;
      case 'N': a.atomic_number = 7; break;
      case 'O': a.atomic_number = 8; break;
      case 'P': a.atomic_number = 15; break;
      case 'S': a.atomic_number = 16; break;
      case 'F': a.atomic_number = 9; break;
      case 'I': a.atomic_number = 53; break;
      case 'b': a.atomic_number = 5; a.aromatic = true; break;
      case 'c': a.atomic_number = 6; a.aromatic = true; break;
      case 'n': a.atomic_number = 7; a.aromatic = true; break;
      case 'o': a.atomic_number = 8; a.aromatic = true; break;
      case 'p': a.atomic_number = 15; a.aromatic = true; break;
      case 's': a.atomic_number = 16; a.aromatic = true; break;
      default:
        fail(std::string("unexpected character '") + c + "'");
      }
      ++pos_;
    }
    atoms_.push_back(std::move(a));
    return static_cast<int>(atoms_.size()) - 1;
  }

  int read_number() {
    int v = 0;
    bool any = false;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      v = v * 10 + (peek() - '0');
      if (v > 100000)
        fail("number too large");
      ++pos_;
      any = true;
    }
    return any ? v : -1;
  }

  void parse_bracket_atom(Atom &a) {
    const std::size_t open = pos_;
    ++pos_;
    int iso = read_number();
    if (iso == 0)
      fail("isotope must be positive");
    if (iso > 0)
      a.isotope = iso;

    // Element symbol.
    const char c = peek();
    if (c == '*') {
      a.atomic_number = kStar;
      ++pos_;
    } else if (std::islower(static_cast<unsigned char>(c))) {
      std::string two { c, peek(1) };
      if (two == "se" || two == "as") {
        a.atomic_number = two == "se" ? 34 : 33;
        pos_ += 2;
      } else {
        std::string one(1, static_cast<char>(std::toupper(c)));
        int z = element_from_symbol(one);
        if (z < 0 || !can_be_aromatic(z))
          fail("invalid aromatic element");
        a.atomic_number = z;
        ++pos_;
      }
      a.aromatic = true;
    } else if (std::isupper(static_cast<unsigned char>(c))) {
      int z = -1;
      if (std::islower(static_cast<unsigned char>(peek(1)))) {
        z = element_from_symbol(text_.substr(pos_, 2));
        if (z >= 0)
          pos_ += 2;
      }
      if (z < 0) {
        z = element_from_symbol(text_.substr(pos_, 1));
        if (z < 0)
          fail("unknown element");
        ++pos_;
      }
      a.atomic_number = z;
    } else {
      fail("expected element symbol in bracket atom");
    }

    if (peek() == '@') {
      const std::size_t start = pos_;
      ++pos_;
      if (peek() == '@') {
        ++pos_;
      } else {
        static constexpr std::string_view kClasses[] = { "TH", "AL", "SP",
                                                         "TB", "OH" };
        for (std::string_view cls: kClasses) {
          if (text_.substr(pos_, 2) == cls) {
            pos_ += 2;
            if (read_number() < 0)
              fail("chirality class needs a number");
            break;
          }
        }
      }
      a.chirality = std::string(text_.substr(start, pos_ - start));
    }

    if (peek() == 'H') {
      ++pos_;
      int h = read_number();
      a.explicit_h = h < 0 ? 1 : h;
    } else {
      a.explicit_h = 0;
    }

    if (peek() == '+' || peek() == '-') {
      const char sign = peek();
      const int unit = sign == '+' ? 1 : -1;
      ++pos_;
      int mag = read_number();
      if (mag < 0) {
        mag = 1;
        while (peek() == sign) {
          ++mag;
          ++pos_;
        }
      }
      if (mag > 4)
        fail("charge out of range");
      a.charge = unit * mag;
    }

    if (peek() == ':') {
      ++pos_;
      int cls = read_number();
      if (cls < 0)
        fail("atom class needs a number");
      a.atom_class = cls;
    }

    if (peek() != ']')
      fail(at_end() ? "unclosed '['" : "unexpected character in bracket atom",
           at_end() ? open : pos_);
    ++pos_;
  }

  MolGraph build() {
    std::vector<Bond> bonds;
    bonds.reserve(bonds_.size());
    for (const RawBond &rb: bonds_)
      bonds.push_back(rb.bond);
    MolGraph g(atoms_, bonds);

    // Unmarked bonds between aromatic atoms are aromatic only inside rings
    // (biphenyl's linking bond is single).
    bool changed = false;
    for (std::size_t i = 0; i < bonds_.size(); ++i) {
      if (bonds_[i].implicit && bonds[i].order == BondOrder::kAromatic
          && !g.is_ring_bond(static_cast<int>(i))) {
        bonds[i].order = BondOrder::kSingle;
        changed = true;
      }
    }
    if (changed)
      return MolGraph(atoms_, std::move(bonds));
    return g;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::vector<Atom> atoms_;
  std::vector<RawBond> bonds_;
  std::map<int, OpenRing> open_rings_;
};

}  // namespace

MolGraph parse_smiles(std::string_view text, ParseMode mode) {
  return SmilesParser(text).parse(mode);
}

}  // namespace ocsrkit

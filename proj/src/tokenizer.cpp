//
// Project ocsrkit - Copyright 2026 ocsrkit authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "ocsrkit/tokenizer.h"

#include <cctype>
#include <istream>
#include <ostream>
#include <stdexcept>

#include "ocsrkit/element.h"
#include "ocsrkit/errors.h"

namespace ocsrkit {
namespace {

constexpr std::string_view kSpecials[] = {
  "<sep>", "<a>", "</a>", "<r>", "</r>", "<c>", "</c>", "<dum>",
};

class Lexer {
public:
  Lexer(std::string_view text, const Vocabulary &vocab)
      : text_(text), vocab_(vocab) { }

  TokenSequence run() {
    while (pos_ < text_.size()) {
      if (special())
        continue;
      smiles_token();
    }
    return std::move(out_);
  }

private:
  std::string_view rest() const { return text_.substr(pos_); }

  void push(std::size_t len) {
    std::string_view tok = text_.substr(pos_, len);
    int id = vocab_.id(tok);
    if (id < 0) {
      if (len > 1) {
        single();
        return;
      }
      throw UnknownCharacter(text_[pos_], pos_);
    }
    out_.ids.push_back(id);
    out_.tokens.emplace_back(tok);
    pos_ += len;
  }

  void single() { push(1); }

  bool special() {
    for (std::string_view s: kSpecials) {
      if (rest().starts_with(s)) {
        if (s == "<sep>")
          sep_seen_ = true;
        push(s.size());
        return true;
      }
    }
    return false;
  }

  // Extension characters outside tags are single tokens.
  void smiles_token() {
    if (sep_seen_) {
      single();
      return;
    }
    const char c = text_[pos_];
    std::string_view r = rest();
    if (!in_bracket_) {
      if (r.starts_with("Cl") || r.starts_with("Br")) {
        push(2);
        return;
      }
      if (c == '%' && r.size() >= 3 && std::isdigit(static_cast<unsigned char>(r[1]))
          && std::isdigit(static_cast<unsigned char>(r[2]))) {
        push(3);
        return;
      }
      if (c == '[') {
        in_bracket_ = true;
        element_pending_ = true;
      }
      single();
      return;
    }

    if (c == ']') {
      in_bracket_ = false;
      single();
      return;
    }
    if (element_pending_ && !std::isdigit(static_cast<unsigned char>(c))) {
      element_pending_ = false;
      if (r.size() >= 2) {
        std::string_view two = r.substr(0, 2);
        if (two == "se" || two == "as" || two == "te"
            || (std::isupper(static_cast<unsigned char>(two[0]))
                && std::islower(static_cast<unsigned char>(two[1]))
                && element_from_symbol(two) > 0)) {
          push(2);
          return;
        }
      }
      single();
      return;
    }
    if (r.starts_with("@@")) {
      push(2);
      return;
    }
    single();
  }

  std::string_view text_;
  const Vocabulary &vocab_;
  std::size_t pos_ = 0;
  bool in_bracket_ = false;
  bool element_pending_ = false;
  bool sep_seen_ = false;
  TokenSequence out_;
};

}  // namespace

Vocabulary::Vocabulary(std::vector<std::string> tokens)
    : tokens_(std::move(tokens)) {
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    if (tokens_[i].empty())
      throw std::invalid_argument("empty token at line "
                                  + std::to_string(i + 1));
    if (!ids_.emplace(tokens_[i], static_cast<int>(i)).second)
      throw std::invalid_argument("duplicate token '" + tokens_[i] + "'");
  }
}

const Vocabulary &Vocabulary::standard() {
  static const Vocabulary vocab = [] {
    std::vector<std::string> t;
    for (std::string_view s: kSpecials)
      t.emplace_back(s);
    t.emplace_back("@@");
    for (int z = 1; z <= kMaxAtomicNumber; ++z) {
      std::string_view sym = element_symbol(z);
      if (sym.size() == 2)
        t.emplace_back(sym);
    }
    t.emplace_back("se");
    t.emplace_back("as");
    t.emplace_back("te");
    for (int d = 10; d <= 99; ++d)
      t.push_back("%" + std::to_string(d));
    for (int c = 0x21; c <= 0x7e; ++c)
      t.emplace_back(1, static_cast<char>(c));
    return Vocabulary(std::move(t));
  }();
  return vocab;
}

Vocabulary Vocabulary::load(std::istream &in) {
  std::vector<std::string> tokens;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r')
      line.pop_back();
    tokens.push_back(line);
  }
  return Vocabulary(std::move(tokens));
}

void Vocabulary::save(std::ostream &out) const {
  for (const auto &t: tokens_)
    out << t << '\n';
}

const std::string &Vocabulary::token(int id) const {
  if (id < 0 || id >= size())
    throw IndexOutOfRange("token id " + std::to_string(id) + " out of range");
  return tokens_[id];
}

int Vocabulary::id(std::string_view token) const {
  auto it = ids_.find(std::string(token));
  return it == ids_.end() ? -1 : it->second;
}

TokenSequence tokenize(std::string_view text, const Vocabulary &vocab) {
  return Lexer(text, vocab).run();
}

std::string detokenize(std::span<const int> ids, const Vocabulary &vocab) {
  std::string out;
  for (int id: ids)
    out += vocab.token(id);
  return out;
}

std::size_t smiles_token_count(std::string_view esmiles,
                               const Vocabulary &vocab) {
  std::size_t sep = esmiles.find("<sep>");
  return tokenize(esmiles.substr(0, sep), vocab).size();
}

}  // namespace ocsrkit

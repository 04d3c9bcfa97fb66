//
// Project ocsrkit - Copyright 2026 ocsrkit authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef OCSRKIT_TOKENIZER_H_
#define OCSRKIT_TOKENIZER_H_

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace ocsrkit {

// Fixed, indexed token set. The file form is one token per line; the
// zero-based line number is the token id.
class Vocabulary {
public:
  Vocabulary() = default;
  explicit Vocabulary(std::vector<std::string> tokens);

  // Special tags, "@@", two-letter element symbols, %10..%99 and every
  // printable ASCII character.
  static const Vocabulary &standard();

  static Vocabulary load(std::istream &in);
  void save(std::ostream &out) const;

  int size() const noexcept { return static_cast<int>(tokens_.size()); }
  const std::string &token(int id) const;
  // -1 if absent.
  int id(std::string_view token) const;

private:
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, int> ids_;
};

struct TokenSequence {
  std::vector<int> ids;
  std::vector<std::string> tokens;

  std::size_t size() const noexcept { return ids.size(); }
};

// Longest-match tokenization: special tags first, then multi-character
// symbols (Cl/Br outside brackets, any element symbol at a bracket atom's
// element position, %nn ring bonds, "@@"), then single characters. Throws
// UnknownCharacter when a character has no token.
TokenSequence tokenize(std::string_view text,
                       const Vocabulary &vocab = Vocabulary::standard());

std::string detokenize(std::span<const int> ids,
                       const Vocabulary &vocab = Vocabulary::standard());

// Token count of the SMILES part (text before <sep>).
std::size_t smiles_token_count(std::string_view esmiles,
                               const Vocabulary &vocab
                               = Vocabulary::standard());

}  // namespace ocsrkit

#endif  // OCSRKIT_TOKENIZER_H_

//
// Project ocsrkit - Copyright 2026 ocsrkit authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef OCSRKIT_ERRORS_H_
#define OCSRKIT_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ocsrkit {

class Error: public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class EmptyInput: public Error {
public:
  EmptyInput(): Error("empty input") { }
};

// Malformed SMILES or E-SMILES text. offset is a byte position in the
// input string that was being parsed.
class SyntaxError: public Error {
public:
  SyntaxError(const std::string &what, std::size_t offset)
      : Error(what + " at offset " + std::to_string(offset)), offset_(offset) { }

  std::size_t offset() const noexcept { return offset_; }

private:
  std::size_t offset_;
};

class ValenceError: public Error {
public:
  ValenceError(const std::string &what, int atom): Error(what), atom_(atom) { }

  int atom() const noexcept { return atom_; }

private:
  int atom_;
};

class IndexOutOfRange: public Error {
public:
  using Error::Error;
};

// Annotation index that does not resolve against the molecule.
class IndexError: public Error {
public:
  using Error::Error;
};

class UnknownCharacter: public Error {
public:
  UnknownCharacter(char c, std::size_t offset)
      : Error("unknown character '" + std::string(1, c) + "' at offset "
              + std::to_string(offset)),
        offset_(offset) { }

  std::size_t offset() const noexcept { return offset_; }

private:
  std::size_t offset_;
};

class ParamMismatch: public Error {
public:
  using Error::Error;
};

class TooFewPredictions: public Error {
public:
  using Error::Error;
};

class ImageTooSmall: public Error {
public:
  using Error::Error;
};

class NoSubstitutableSite: public Error {
public:
  using Error::Error;
};

class IllegalTransition: public Error {
public:
  using Error::Error;
};

class DuplicateReviewer: public Error {
public:
  using Error::Error;
};

class SelfReview: public Error {
public:
  using Error::Error;
};

class DuplicateGoldId: public Error {
public:
  using Error::Error;
};

}  // namespace ocsrkit

#endif  // OCSRKIT_ERRORS_H_

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace phonitale {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class UnknownSymbolError : public Error {
 public:
  UnknownSymbolError(std::size_t position, std::string fragment)
      : Error("unknown IPA symbol at byte " + std::to_string(position) +
              ": '" + fragment + "'"),
        position_(position),
        fragment_(std::move(fragment)) {}
  std::size_t position() const { return position_; }
  const std::string& fragment() const { return fragment_; }

 private:
  std::size_t position_;
  std::string fragment_;
};

class EmptySequenceError : public Error {
 public:
  EmptySequenceError() : Error("empty phoneme sequence") {}
};

class ZeroNormError : public Error {
 public:
  ZeroNormError() : Error("zero-norm embedding in cosine") {}
};

class NoRuleApplicableError : public Error {
 public:
  explicit NoRuleApplicableError(std::string symbol)
      : Error("no adaptation rule applicable for symbol '" + symbol + "'"),
        symbol_(std::move(symbol)) {}
  const std::string& symbol() const { return symbol_; }

 private:
  std::string symbol_;
};

class EmptyReferenceError : public Error {
 public:
  EmptyReferenceError() : Error("empty reference sequence in CER") {}
};

class EmptyListError : public Error {
 public:
  explicit EmptyListError(const std::string& what) : Error(what) {}
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& reason)
      : Error("parse error at line " + std::to_string(line) + ": " + reason),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class InventoryError : public Error {
 public:
  InventoryError(std::size_t line, std::string symbol)
      : Error("line " + std::to_string(line) +
              ": symbol not in inventory: '" + symbol + "'"),
        line_(line),
        symbol_(std::move(symbol)) {}
  std::size_t line() const { return line_; }
  const std::string& symbol() const { return symbol_; }

 private:
  std::size_t line_;
  std::string symbol_;
};

class DuplicateEntryError : public Error {
 public:
  explicit DuplicateEntryError(std::size_t line)
      : Error("duplicate lexicon entry at line " + std::to_string(line)),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class IllegalClusterError : public Error {
 public:
  explicit IllegalClusterError(std::size_t position)
      : Error("illegal consonant cluster at phoneme index " +
              std::to_string(position)),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

class NoNucleusError : public Error {
 public:
  NoNucleusError() : Error("phoneme sequence has no vowel nucleus") {}
};

class StreamMismatchError : public Error {
 public:
  StreamMismatchError() : Error("boundary F1: underlying phoneme streams differ") {}
};

class EmptyLexiconError : public Error {
 public:
  EmptyLexiconError() : Error("lexicon is empty") {}
};

class ClientError : public Error {
 public:
  explicit ClientError(const std::string& what) : Error(what) {}
};

class EmbedderError : public Error {
 public:
  explicit EmbedderError(const std::string& what) : Error(what) {}
};

class AllCandidatesInvalidError : public Error {
 public:
  AllCandidatesInvalidError() : Error("all generated candidates were invalid") {}
};

class LengthMismatchError : public Error {
 public:
  explicit LengthMismatchError(const std::string& what) : Error(what) {}
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(what) {}
};

}  // namespace phonitale

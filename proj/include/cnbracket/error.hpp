#ifndef CNBRACKET_ERROR_HPP
#define CNBRACKET_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cnbracket {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& path)
      : Error("cannot open '" + path + "'"), path_(path) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

/// Malformed input. `line()` is 1-based, 0 when no line applies.
class FormatError : public Error {
 public:
  FormatError(std::size_t line, const std::string& what)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class DuplicateCategory : public FormatError {
 public:
  DuplicateCategory(std::size_t line, int id)
      : FormatError(line, "duplicate category id " + std::to_string(id)),
        id_(id) {}
  int id() const noexcept { return id_; }

 private:
  int id_;
};

class UnknownLabel : public FormatError {
 public:
  UnknownLabel(std::size_t line, const std::string& label)
      : FormatError(line, "unknown label '" + label + "'") {}
};

class ChecksumMismatch : public Error {
 public:
  using Error::Error;
};

class WordNotInThesaurus : public Error {
 public:
  explicit WordNotInThesaurus(const std::string& word)
      : Error("word not in thesaurus: '" + word + "'"), word_(word) {}
  const std::string& word() const noexcept { return word_; }

 private:
  std::string word_;
};

class SequenceTooLong : public Error {
 public:
  SequenceTooLong(std::size_t length, std::size_t cap)
      : Error("sequence of " + std::to_string(length) +
              " nouns exceeds the cap of " + std::to_string(cap)) {}
};

}  // namespace cnbracket

#endif  // CNBRACKET_ERROR_HPP

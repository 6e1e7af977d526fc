#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace zss {

/// Broad failure classes. Each maps onto one process exit code in the CLI.
enum class ErrorKind {
  kUsage,      // bad arguments or configuration
  kParse,      // malformed input line / document
  kIntegrity,  // dangling reference, broken invariant in loaded data
  kNotFound,   // lookup of an unknown lemma, sense, synset or label
  kContract,   // caller violated an operation precondition
  kBackend,    // transport failure talking to the inference service
  kProtocol,   // inference service answered with something unusable
  kCacheMiss,  // score needed but absent in cache-only mode
  kIo,         // filesystem failure
};

const char* to_string(ErrorKind kind);

/// Exit code the CLI uses for a given error kind.
int exit_code(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

/// Raised by parsers; carries the 1-based line (or row) number.
class ParseError : public Error {
 public:
  ParseError(std::string source, std::size_t line, const std::string& what);
  const std::string& source() const { return source_; }
  std::size_t line() const { return line_; }

 private:
  std::string source_;
  std::size_t line_;
};

/// Raised when scores are required but the cache does not hold them.
class CacheMissError : public Error {
 public:
  explicit CacheMissError(std::vector<std::size_t> missing);
  CacheMissError(std::vector<std::size_t> missing, const std::string& what);
  const std::vector<std::size_t>& missing() const { return missing_; }

 private:
  std::vector<std::size_t> missing_;
};

}  // namespace zss

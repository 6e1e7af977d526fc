#include "zss/error.hpp"

#include <algorithm>
#include <sstream>

namespace zss {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kUsage: return "usage";
    case ErrorKind::kParse: return "parse";
    case ErrorKind::kIntegrity: return "integrity";
    case ErrorKind::kNotFound: return "not-found";
    case ErrorKind::kContract: return "contract";
    case ErrorKind::kBackend: return "backend";
    case ErrorKind::kProtocol: return "protocol";
    case ErrorKind::kCacheMiss: return "cache-miss";
    case ErrorKind::kIo: return "io";
  }
  return "unknown";
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kUsage:
      return 2;
    case ErrorKind::kParse:
    case ErrorKind::kIntegrity:
    case ErrorKind::kNotFound:
    case ErrorKind::kContract:
    case ErrorKind::kIo:
      return 3;
    case ErrorKind::kBackend:
    case ErrorKind::kProtocol:
      return 4;
    case ErrorKind::kCacheMiss:
      return 5;
  }
  return 1;
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(what), kind_(kind) {}

namespace {

std::string located(const std::string& source, std::size_t line, const std::string& what) {
  std::ostringstream os;
  os << source << ":" << line << ": " << what;
  return os.str();
}

std::string describe_missing(const std::vector<std::size_t>& missing) {
  std::ostringstream os;
  os << missing.size() << " score(s) missing from cache; pair indices:";
  const std::size_t shown = std::min<std::size_t>(missing.size(), 20);
  for (std::size_t i = 0; i < shown; ++i) os << " " << missing[i];
  if (shown < missing.size()) os << " ...";
  return os.str();
}

}  // namespace

ParseError::ParseError(std::string source, std::size_t line, const std::string& what)
    : Error(ErrorKind::kParse, located(source, line, what)),
      source_(std::move(source)),
      line_(line) {}

CacheMissError::CacheMissError(std::vector<std::size_t> missing)
    : Error(ErrorKind::kCacheMiss, describe_missing(missing)), missing_(std::move(missing)) {}

CacheMissError::CacheMissError(std::vector<std::size_t> missing, const std::string& what)
    : Error(ErrorKind::kCacheMiss, what), missing_(std::move(missing)) {}

}  // namespace zss

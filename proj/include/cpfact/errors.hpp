// Exception types shared by every cpfact module.

#ifndef CPFACT_ERRORS_HPP_
#define CPFACT_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cpfact {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CapExceeded : Error { using Error::Error; };
struct BoundExceeded : Error { using Error::Error; };
struct DomainMismatch : Error { using Error::Error; };
struct ParentMismatch : Error { using Error::Error; };
struct NotNormal : Error { using Error::Error; };
struct NotPGroup : Error { using Error::Error; };
struct NotSolvable : Error { using Error::Error; };
struct NotSimple : Error { using Error::Error; };
struct NotRankOne : Error { using Error::Error; };
struct NotIrreducible : Error { using Error::Error; };
struct NotCoreFree : Error { using Error::Error; };
struct FixedVector : Error { using Error::Error; };
struct UnsupportedParameter : Error { using Error::Error; };
struct HypothesisFailed : Error { using Error::Error; };
// Raised when a computed certificate does not check out; this indicates a bug.
struct VerificationFailed : Error { using Error::Error; };

struct ParseError : Error {
  ParseError(const std::string& msg, std::size_t pos)
    : Error("parse error at position " + std::to_string(pos) + ": " + msg),
      position(pos) {}
  std::size_t position;
};

} // namespace cpfact

#endif

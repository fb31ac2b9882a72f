#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace gkplat {

// Shape errors are malformed inputs (bad dimensions, unparsable data);
// Domain errors are well-formed inputs that violate a mathematical
// precondition.  The CLI maps Shape to exit 1 and Domain to exit 2.
enum class ErrorKind { Shape, Domain };

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, std::string code, const std::string& detail)
      : std::runtime_error(code + ": " + detail), kind_(kind), code_(std::move(code)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& code() const noexcept { return code_; }

private:
  ErrorKind kind_;
  std::string code_;
};

#define GKPLAT_ERROR(Name, Kind)                       \
  struct Name : Error {                                \
    explicit Name(const std::string& detail)           \
        : Error(ErrorKind::Kind, #Name, detail) {}     \
  };

GKPLAT_ERROR(ParseError, Shape)
GKPLAT_ERROR(DimensionMismatch, Shape)
GKPLAT_ERROR(InvalidType, Shape)
GKPLAT_ERROR(TypeMismatch, Shape)
GKPLAT_ERROR(GramMismatch, Shape)
GKPLAT_ERROR(BaseMismatch, Shape)
GKPLAT_ERROR(InvalidGenerator, Shape)
GKPLAT_ERROR(NonIntegerExponent, Shape)

GKPLAT_ERROR(SingularMatrix, Domain)
GKPLAT_ERROR(NotIntegral, Domain)
GKPLAT_ERROR(Degenerate, Domain)
GKPLAT_ERROR(NotAntisymmetric, Domain)
GKPLAT_ERROR(NotUnimodular, Domain)
GKPLAT_ERROR(NotAutomorphism, Domain)
GKPLAT_ERROR(NotDualAction, Domain)
GKPLAT_ERROR(NotInNormalizer, Domain)
GKPLAT_ERROR(NonIntegerPoint, Domain)
GKPLAT_ERROR(InvalidMove, Domain)
GKPLAT_ERROR(SnapFailed, Domain)

#undef GKPLAT_ERROR

}  // namespace gkplat

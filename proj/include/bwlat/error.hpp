#pragma once

#include <stdexcept>
#include <string>

namespace bwlat {

enum class ErrorKind {
  InvalidParameter,
  SingularMatrix,
  TooLarge,
  NotIntegral,
  SingularGram,
  NotAnIsometry,
  NotASublattice,
  NotInvariant,
  NoDualityLevel,
  ResourceCap,
  NotMinimal,
  NotBetween,
  CodeNotAdmissible,
  NotNormalized,
  NotIsometry,
  Exhausted,
  OutOfRange,
  InvalidDimension,
  Parse,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Resource caps can be raised through BWLAT_MAX_RANK.
std::size_t rank_cap(std::size_t default_cap);

}  // namespace bwlat

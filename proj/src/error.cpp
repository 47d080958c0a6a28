#include "bwlat/error.hpp"

#include <cstdlib>

namespace bwlat {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidParameter: return "InvalidParameter";
    case ErrorKind::SingularMatrix: return "SingularMatrix";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::NotIntegral: return "NotIntegral";
    case ErrorKind::SingularGram: return "SingularGram";
    case ErrorKind::NotAnIsometry: return "NotAnIsometry";
    case ErrorKind::NotASublattice: return "NotASublattice";
    case ErrorKind::NotInvariant: return "NotInvariant";
    case ErrorKind::NoDualityLevel: return "NoDualityLevel";
    case ErrorKind::ResourceCap: return "ResourceCap";
    case ErrorKind::NotMinimal: return "NotMinimal";
    case ErrorKind::NotBetween: return "NotBetween";
    case ErrorKind::CodeNotAdmissible: return "CodeNotAdmissible";
    case ErrorKind::NotNormalized: return "NotNormalized";
    case ErrorKind::NotIsometry: return "NotIsometry";
    case ErrorKind::Exhausted: return "Exhausted";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::InvalidDimension: return "InvalidDimension";
    case ErrorKind::Parse: return "Parse";
  }
  return "Unknown";
}

std::size_t rank_cap(std::size_t default_cap) {
  const char* env = std::getenv("BWLAT_MAX_RANK");
  if (env == nullptr || *env == '\0') return default_cap;
  char* end = nullptr;
  unsigned long long v = std::strtoull(env, &end, 10);
  if (end == env || *end != '\0' || v == 0) return default_cap;
  return static_cast<std::size_t>(v);
}

}  // namespace bwlat

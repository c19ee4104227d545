#include "wfs/error.hpp"

namespace wfs {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotALattice: return "NotALattice";
    case ErrorCode::CyclicCovers: return "CyclicCovers";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::MixedLattices: return "MixedLattices";
    case ErrorCode::NotACover: return "NotACover";
    case ErrorCode::NotElevating: return "NotElevating";
    case ErrorCode::NotAutomorphism: return "NotAutomorphism";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::CapExceeded: return "CapExceeded";
  }
  return "Unknown";
}

}  // namespace wfs

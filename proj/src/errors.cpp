#include "padicdual/errors.hpp"

namespace padicdual {

const char* errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::invalid_argument: return "InvalidArgument";
    case Errc::parse_error: return "ParseError";
    case Errc::prime_mismatch: return "PrimeMismatch";
    case Errc::dimension_mismatch: return "DimensionMismatch";
    case Errc::non_unit: return "NonUnit";
    case Errc::not_a_simple_root: return "NotASimpleRoot";
    case Errc::singular_matrix: return "SingularMatrix";
    case Errc::not_a_member: return "NotAMember";
    case Errc::precision_exhausted: return "PrecisionExhausted";
    case Errc::not_contractive: return "NotContractive";
    case Errc::not_found: return "NotFound";
  }
  return "Unknown";
}

}  // namespace padicdual

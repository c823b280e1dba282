#include "markovsig/error.hpp"

namespace markovsig {

const char* to_string(Errc code) noexcept {
  switch (code) {
    case Errc::invalid_argument: return "invalid_argument";
    case Errc::degree_limit: return "degree_limit";
    case Errc::empty_input: return "empty_input";
    case Errc::zero_divisor: return "zero_divisor";
    case Errc::duplicate_points: return "duplicate_points";
    case Errc::point_on_segment: return "point_on_segment";
    case Errc::degenerate_point: return "degenerate_point";
    case Errc::degenerate_target: return "degenerate_target";
    case Errc::singular_frequency: return "singular_frequency";
    case Errc::infeasible_moments: return "infeasible_moments";
    case Errc::not_hermitian: return "not_hermitian";
    case Errc::spectrum_out_of_range: return "spectrum_out_of_range";
    case Errc::numeric_failure: return "numeric_failure";
  }
  return "unknown";
}

bool is_numeric(Errc code) noexcept {
  return code == Errc::degenerate_target || code == Errc::numeric_failure;
}

}  // namespace markovsig

#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace markovsig {

enum class Errc {
  invalid_argument,
  degree_limit,
  empty_input,
  zero_divisor,
  duplicate_points,
  point_on_segment,
  degenerate_point,
  degenerate_target,
  singular_frequency,
  infeasible_moments,
  not_hermitian,
  spectrum_out_of_range,
  numeric_failure,
};

const char* to_string(Errc code) noexcept;

/// Numeric failures are the ones a valid-looking input can still trigger
/// (a target on a Chebyshev zero, a singular solve); everything else is
/// a violated precondition.
bool is_numeric(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what,
        std::optional<std::size_t> index = std::nullopt)
      : std::runtime_error(what), code_(code), index_(index) {}

  Errc code() const noexcept { return code_; }

  /// Position of the offending element when the failure relates to one
  /// entry of an input list (a duplicated pole, an atom out of range).
  std::optional<std::size_t> index() const noexcept { return index_; }

 private:
  Errc code_;
  std::optional<std::size_t> index_;
};

}  // namespace markovsig

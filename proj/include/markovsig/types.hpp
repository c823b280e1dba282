#pragma once

#include <complex>

namespace markovsig {

using cplx = std::complex<double>;

inline constexpr cplx kI{0.0, 1.0};

}  // namespace markovsig

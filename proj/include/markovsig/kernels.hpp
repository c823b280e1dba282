#pragma once

#include <cstddef>
#include <span>

#include "markovsig/types.hpp"

// Data-parallel inner loops. Each kernel has a scalar reference
// implementation plus vector variants; the active one is picked at runtime
// from what the CPU supports. The elementwise kernels use the same operation
// order in every variant, so partial_fraction and pair_envelope_min agree
// bit for bit across backends; markov_sum differs only in summation order.

namespace markovsig::kernels {

enum class Backend { scalar, avx2, neon };

const char* to_string(Backend b) noexcept;

/// Compiled in and usable on this CPU.
bool supported(Backend b) noexcept;

/// Backend in use. Defaults to the widest supported one; the environment
/// variable MARKOVSIG_KERNELS=scalar|avx2|neon overrides the default.
Backend active() noexcept;

/// Switch backends (throws markovsig::Error if unsupported).
void select(Backend b);

struct PairMin {
  double value;
  std::size_t lo;  // index of the atom left of the target
  std::size_t hi;  // index of the atom right of the target (== lo for a single atom)
};

struct KernelTable {
  /// out[i] = sum_k residues[k] / (lambdas[i] - poles[k]), split into re/im.
  void (*partial_fraction)(std::span<const double> lambdas, std::span<const cplx> residues,
                           std::span<const cplx> poles, std::span<double> out_re,
                           std::span<double> out_im);

  /// sum_j weights[j] / (atoms[j] - z).
  cplx (*markov_sum)(std::span<const double> atoms, std::span<const double> weights, cplx z);

  /// Lower convex envelope of (xs, values) at `target` restricted to one- and
  /// two-atom combinations: min over xs[i] <= target <= xs[j] of the linear
  /// interpolant. xs must be sorted ascending and bracket the target.
  PairMin (*pair_envelope_min)(std::span<const double> xs, std::span<const double> values,
                               double target);
};

/// Table for a given backend (throws if unsupported).
const KernelTable& table(Backend b);

/// Table for the active backend.
const KernelTable& table();

}  // namespace markovsig::kernels

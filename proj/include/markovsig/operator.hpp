#pragma once

#include <cstdint>

#include <Eigen/Dense>

#include "markovsig/design.hpp"
#include "markovsig/types.hpp"

namespace markovsig {

using CMatrix = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic>;

inline constexpr int kMaxOperatorDim = 64;

/// Hermitian matrix with spectrum in [-1,1].
class HermitianOperator {
 public:
  /// Throws Error(not_hermitian) if ||A - A^H|| exceeds 1e-12 (entrywise),
  /// Error(spectrum_out_of_range) if an eigenvalue leaves [-1-1e-10, 1+1e-10].
  static HermitianOperator create(CMatrix entries);

  int dim() const noexcept { return static_cast<int>(entries_.rows()); }
  const CMatrix& entries() const noexcept { return entries_; }
  const Eigen::VectorXd& eigenvalues() const noexcept { return eigenvalues_; }

 private:
  HermitianOperator() = default;
  CMatrix entries_;
  Eigen::VectorXd eigenvalues_;
};

/// U diag(d) U^H with U from the QR factorization of a seeded complex
/// Gaussian matrix and d uniform in [-1,1].
HermitianOperator random_hermitian_in_spectrum(int dim, std::uint64_t seed);

/// Random unitary (same construction), for invariance checks.
CMatrix random_unitary(int dim, std::uint64_t seed);

/// sum_k alpha_k (A - z_k)^{-1} (+ alpha0 (A - z0)^{-1}) minus the design
/// target applied to A.
CMatrix resolvent_combination(const HermitianOperator& a, const SignalDesign& design);

struct OperatorCheck {
  double norm;
  bool certified;  // norm <= epsilon + 1e-9
};

/// Spectral norm of resolvent_combination against the design's epsilon.
OperatorCheck verify_operator_bound(const HermitianOperator& a, const SignalDesign& design);

/// Largest singular value.
double spectral_norm(const CMatrix& m);

}  // namespace markovsig

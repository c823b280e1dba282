#include "markovsig/operator.hpp"

#include <cmath>
#include <random>
#include <string>

#include "markovsig/error.hpp"

namespace markovsig {

namespace {

CMatrix gaussian(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  CMatrix g(dim, dim);
  for (int j = 0; j < dim; ++j)
    for (int i = 0; i < dim; ++i) {
      const double re = n(rng);
      const double im = n(rng);
      g(i, j) = cplx{re, im};
    }
  return g;
}

CMatrix unitary_from(std::mt19937_64& rng, int dim) {
  const CMatrix g = gaussian(dim, rng);
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ() * CMatrix::Identity(dim, dim);
  // Fix the phase of each column against diag(R) so the draw is Haar distributed.
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < dim; ++j) {
    const double a = std::abs(r(j, j));
    if (a > 0.0) q.col(j) *= r(j, j) / a;
  }
  return q;
}

void check_dim(int dim) {
  if (dim < 1 || dim > kMaxOperatorDim)
    throw Error(Errc::invalid_argument, "operator dimension must be in [1, 64]");
}

}  // namespace

HermitianOperator HermitianOperator::create(CMatrix entries) {
  if (entries.rows() != entries.cols() || entries.rows() == 0)
    throw Error(Errc::invalid_argument, "operator must be a non-empty square matrix");
  check_dim(static_cast<int>(entries.rows()));
  const double asym = (entries - entries.adjoint()).cwiseAbs().maxCoeff();
  if (!(asym <= 1e-12)) throw Error(Errc::not_hermitian, "matrix is not Hermitian");
  const CMatrix sym = 0.5 * (entries + entries.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(sym, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw Error(Errc::numeric_failure, "eigensolver failed");
  const Eigen::VectorXd ev = es.eigenvalues();
  for (int i = 0; i < ev.size(); ++i)
    if (!(std::abs(ev(i)) <= 1.0 + 1e-10))
      throw Error(Errc::spectrum_out_of_range,
                  "eigenvalue " + std::to_string(ev(i)) + " lies outside [-1,1]");
  HermitianOperator op;
  op.entries_ = sym;
  op.eigenvalues_ = ev;
  return op;
}

CMatrix random_unitary(int dim, std::uint64_t seed) {
  check_dim(dim);
  std::mt19937_64 rng(seed);
  return unitary_from(rng, dim);
}

HermitianOperator random_hermitian_in_spectrum(int dim, std::uint64_t seed) {
  check_dim(dim);
  std::mt19937_64 rng(seed);
  const CMatrix u = unitary_from(rng, dim);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  Eigen::VectorXd d(dim);
  for (int i = 0; i < dim; ++i) d(i) = unit(rng);
  CMatrix a = u * d.cast<cplx>().asDiagonal() * u.adjoint();
  a = 0.5 * (a + a.adjoint()).eval();
  return HermitianOperator::create(std::move(a));
}

CMatrix resolvent_combination(const HermitianOperator& a, const SignalDesign& design) {
  const int n = a.dim();
  const CMatrix id = CMatrix::Identity(n, n);
  const CMatrix& m = a.entries();
  auto resolvent = [&](cplx z) -> CMatrix {
    Eigen::PartialPivLU<CMatrix> lu(m - z * id);
    CMatrix r = lu.solve(id);
    if (!r.allFinite()) throw Error(Errc::numeric_failure, "singular resolvent solve");
    return r;
  };
  CMatrix sum = CMatrix::Zero(n, n);
  for (std::size_t k = 0; k < design.alphas.size(); ++k) sum += design.alphas[k] * resolvent(design.poles[k]);

  switch (design.mode) {
    case DesignMode::unit:
    case DesignMode::zero_factor:
      sum -= id;
      break;
    case DesignMode::moments: {
      CMatrix power = id;
      for (std::size_t l = 0; l < design.gammas.size(); ++l) {
        sum -= design.gammas[l] * power;
        power = (power * m).eval();
      }
      break;
    }
    case DesignMode::frequency_target:
      sum -= resolvent(*design.z0);
      break;
    case DesignMode::derivative_target: {
      const CMatrix r0 = resolvent(*design.z0);
      sum += *design.alpha0 * r0;
      sum -= r0 * r0;
      break;
    }
  }
  return sum;
}

double spectral_norm(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<CMatrix> svd(m);
  return svd.singularValues()(0);
}

OperatorCheck verify_operator_bound(const HermitianOperator& a, const SignalDesign& design) {
  const double norm = spectral_norm(resolvent_combination(a, design));
  return {norm, norm <= design.epsilon + 1e-9};
}

}  // namespace markovsig

#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "markovsig/design.hpp"
#include "markovsig/measure.hpp"
#include "markovsig/polynomial.hpp"
#include "markovsig/types.hpp"

namespace markovsig {

/// Spring G in series with a dashpot eta; elastic phases have no dashpot.
struct MaxwellPhase {
  double G = 1.0;
  double eta = 0.0;
  bool elastic = true;

  static MaxwellPhase elastic_phase(double G);
  static MaxwellPhase viscoelastic(double G, double eta);

  /// i w eta G / (G + i w eta), or G when elastic.
  cplx modulus(cplx omega) const;
};

/// omega -> num(omega) / den(omega)
struct RationalMap {
  ComplexPolynomial num = ComplexPolynomial::constant(1.0);
  ComplexPolynomial den = ComplexPolynomial::constant(1.0);

  cplx operator()(cplx omega) const;
};

enum class ModelKind { lossy_dielectric, plasma, two_phase, custom };

const char* to_string(ModelKind kind) noexcept;

/// Frequency maps omega -> (z, c) of a system whose response is
/// a0 * F_mu(z(omega)).
struct SystemModel {
  ModelKind kind = ModelKind::lossy_dielectric;
  MaxwellPhase phase1;
  MaxwellPhase phase2;
  RationalMap z_map;                // custom kind only
  std::optional<RationalMap> c_map; // absent means c = 1
  double a0 = 1.0;

  static SystemModel lossy_dielectric(double a0 = 1.0);
  static SystemModel plasma(double a0 = 1.0);
  static SystemModel two_phase(MaxwellPhase p1, MaxwellPhase p2, double a0 = 1.0);
  static SystemModel custom(RationalMap z, double a0 = 1.0);

  /// Throws unless a0 > 0 and the phases are physical.
  void validate() const;
};

/// 2 + i/w, 2 - 2/w^2, (c1 + c2)/(c1 - c2), or the custom map.
/// Throws Error(singular_frequency) at w = 0 or a pole of the map.
cplx model_z(const SystemModel& model, cplx omega);
cplx model_c(const SystemModel& model, cplx omega);

/// z(omega_k) for every frequency. Failures carry the frequency index.
PoleSet poles_for(const SystemModel& model, std::span<const cplx> omegas);

struct TimeGrid {
  double t_start = 0.0;
  double t_end = 1.0;
  int steps = 2;
  double t0 = 0.0;

  static TimeGrid make(double t_start, double t_end, int steps, double t0);
  void validate() const;
  /// steps points from t_start to t_end inclusive.
  std::vector<double> times() const;
};

struct TimeSeries {
  std::vector<double> t;
  std::vector<cplx> values;
};

/// u(t) = sum_k (alpha_k / c(w_k)) exp(-i w_k (t - t0)).
TimeSeries synthesize_input(const SignalDesign& design, const SystemModel& model,
                            std::span<const cplx> omegas, const TimeGrid& grid);

/// v(t) = a0 sum_k alpha_k F_mu(z(w_k)) exp(-i w_k (t - t0)).
TimeSeries simulate_response(const SignalDesign& design, const SystemModel& model,
                             std::span<const cplx> omegas, const DiscreteMeasure& mu,
                             const TimeGrid& grid);

/// v0(t) = a0 F_mu(z(w0)) exp(-i w0 (t - t0)), the response to
/// u0(t) = exp(-i w0 (t - t0)) / c(w0).
TimeSeries single_frequency_response(const SystemModel& model, cplx omega0,
                                     const DiscreteMeasure& mu, const TimeGrid& grid);

/// max_{t <= t0} |w(t)| / |w(t0)| with w(t) = sum_k alphas_k F_ref(z_k) e^{-i w_k (t - t0)},
/// or with Re[w] in place of w when real_part_only. t0 is always sampled.
double crest_ratio(std::span<const cplx> alphas, const SystemModel& model,
                   std::span<const cplx> omegas, const TimeGrid& grid,
                   const DiscreteMeasure& reference, bool real_part_only);

struct ZeroFactorScan {
  std::size_t best_index = 0;
  cplx best_z0;
  double best_ratio = 0.0;
  std::vector<double> ratios;  // one per candidate
  SignalDesign best_design;
};

/// Tries a zero factor at every candidate and keeps the one with the smallest
/// crest ratio (first one on ties). With conjugate_pair the factor is
/// (l - z0)(l - conj z0), otherwise (l - z0).
ZeroFactorScan zero_factor_scan(const SystemModel& model, std::span<const cplx> omegas,
                                std::span<const cplx> candidates, const TimeGrid& grid,
                                const DiscreteMeasure& reference, bool real_part_only,
                                bool conjugate_pair, const DesignOptions& opts = {});

struct Range {
  double lo;
  double hi;
};

struct BoundsOptions {
  int atom_grid = 512;        // two-atom scan resolution
  int triple_grid = 128;      // three-atom scan resolution
  int point_grid = kDefaultGridNodes;
  double refine_tol = 1e-8;   // final atom bracket; also sets the outward rounding
  bool a0_known = true;       // otherwise a0 ranges over [a0_min, a0_max]
  double a0_min = 0.0;
  double a0_max = 1.0;
};

struct BoundsSeries {
  std::vector<double> t;
  std::vector<double> lower;
  std::vector<double> upper;
};

/// Pointwise bounds on Re[e^{i theta} v(t)] over every probability measure
/// with the given moments M_1..M_n (n <= 2).
BoundsSeries response_bounds(const SignalDesign& design, const SystemModel& model,
                             std::span<const cplx> omegas, std::span<const double> known_moments,
                             double theta, const TimeGrid& grid, const BoundsOptions& opts = {});

/// a0-scaled bounds at a single time t (response_bounds evaluates this on
/// every grid point).
Range response_bounds_at(const SignalDesign& design, const SystemModel& model,
                         std::span<const cplx> omegas, std::span<const double> known_moments,
                         double theta, double t, double t0, const BoundsOptions& opts = {});

/// min and max of sum_j w_j g(l_j) over measures with moments M_1..M_n, for a
/// scalar function g on [-1,1]. Exposed for testing.
Range moment_constrained_range(const std::function<double(double)>& g,
                               std::span<const double> known_moments,
                               const BoundsOptions& opts = {});

}  // namespace markovsig

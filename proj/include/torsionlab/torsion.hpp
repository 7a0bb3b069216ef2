#pragma once

#include "torsionlab/lift.hpp"

#include <functional>
#include <utility>
#include <vector>

namespace torsionlab {

/// Finite-time torsion: the change of the lifted angle of df_t(x).xi over
/// [0, n], divided by n. Turns per unit time.
double torsion_n(const Isotopy& iso, const Vec2& x, const Vec2& xi, int n,
                 const LiftOptions& opt = {});

struct TorsionEstimate {
  double value = 0.0;   // estimate at the largest horizon
  int n = 0;            // that horizon
  bool converged = false;
  double tol = 0.0;
  double xi_spread = 0.0;  // max pairwise difference over the tested tangent directions
  std::vector<std::pair<int, double>> history;  // (horizon, torsion_n)
};

/// Horizons 2^5 .. 2^12.
std::vector<int> default_schedule();

// Torsion along an orbit with convergence diagnostics. The diagnostic is
// "converged" iff the last three schedule values lie within tol of each
// other; no claim is made about the existence of the limit. The direction
// xi and its quarter-turn rotate are both tracked; their spread at the final
// horizon is reported (it can never exceed 2/n).
TorsionEstimate torsion_orbit(const Isotopy& iso, const Vec2& x, const Vec2& xi,
                              std::vector<int> schedule, double tol, const LiftOptions& opt = {});

using PointSampler = std::function<Vec2(CounterRng&)>;

PointSampler disc_area_sampler();
PointSampler torus_area_sampler();

struct MeasureTorsion {
  double mean = 0.0;
  double std_error = 0.0;
  double xi_bias_bound = 0.0;  // 2/n, the cost of fixing xi = (1,0)
  int n = 0;
  int samples = 0;
};

/// Mean finite-horizon torsion over N independent draws from `sampler`
/// (which the caller asserts is f-invariant), scaled by the measure's total
/// mass (1 for probability measures, pi for the raw disc area form), with
/// the standard error of the mean. The tangent direction is fixed to (1,0);
/// by the 2/n inequality this perturbs the result by at most mass * 2/n,
/// reported in xi_bias_bound.
MeasureTorsion torsion_measure(const Isotopy& iso, const PointSampler& sampler, int n, int N,
                               std::uint64_t seed, const LiftOptions& opt = {},
                               double measure_mass = 1.0);

}  // namespace torsionlab

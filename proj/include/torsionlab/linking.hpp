#pragma once

#include "torsionlab/lift.hpp"

#include <iosfwd>
#include <vector>

namespace torsionlab {

struct LinkingEstimate {
  double value = 0.0;           // turns per unit time
  double horizon = 0.0;
  double min_separation = 0.0;  // smallest observed ||beta(t) - alpha(t)||
};

/// Finite-time linking number of the orbits of x and y: the change of the
/// lifted angle of the direction from f_t(x) to f_t(y) over [0, n], per unit
/// time. Symmetric in (x, y) since swapping shifts the direction by a
/// constant half turn.
double linking_n(const Isotopy& iso, const Vec2& x, const Vec2& y, int n, const LiftOptions& opt = {});

LinkingEstimate linking_n_estimate(const Isotopy& iso, const Vec2& x, const Vec2& y, int n,
                                   const LiftOptions& opt = {});

// A curve sampled at strictly increasing times. Between samples the angle of
// any derived direction is treated as piecewise linear; sampling densely
// enough for the quarter-turn gap condition is the caller's duty.
struct SampledCurve {
  std::vector<double> times;
  std::vector<Vec2> points;

  std::size_t size() const { return times.size(); }
  void validate() const;
};

/// Curve sampled from an isotopy orbit: t -> f_t(x) at uniform spacing dt.
SampledCurve sample_orbit_curve(const Isotopy& iso, const Vec2& x, double T, double dt);

/// Normalized lifted-angle change of beta - alpha over [0, T]. The curves
/// must share their sample times and be pointwise distinct.
LinkingEstimate linking_curves(const SampledCurve& alpha, const SampledCurve& beta, double T);

struct PerturbationReport {
  bool premise_ok = false;
  double separation_min = 0.0;       // measured d = min ||beta - alpha||
  double alpha_shift_sup = 0.0;      // measured sup ||alpha - alpha'||
  double beta_shift_sup = 0.0;       // measured sup ||beta - beta'||
  double max_lifted_difference = 0;  // sup over checkpoints of |Linking_t - Linking_t'| * t
  double endpoint_difference = 0.0;  // |Linking_T - Linking_T'|
};

// Finite-time perturbation robustness: when ||beta-alpha|| >= d everywhere
// and both perturbations stay within d/2, the two separation directions are
// pointwise less than 1/4 turn apart, so the lifted difference stays in a
// half-turn window and |Linking_T - Linking_T'| <= 1/(2T). Report-only.
PerturbationReport perturbation_bound_check(const SampledCurve& alpha, const SampledCurve& beta,
                                            const SampledCurve& alpha2, const SampledCurve& beta2,
                                            double T);

SampledCurve read_curve_csv(std::istream& is);
void write_curve_csv(std::ostream& os, const SampledCurve& curve);

}  // namespace torsionlab

#pragma once

#include "torsionlab/isotopy.hpp"

#include <span>
#include <vector>

namespace torsionlab {

// The initial grid must sample below the Nyquist rate of the direction field:
// a direction turning half a turn or more between initial samples aliases and
// can fool both the bisection and the halving certificate. The default of 8
// samples per unit time is ample for the shipped zoo; raise it for fields
// spinning faster than ~2 turns per unit time.
struct LiftOptions {
  int samples_per_period = 8;  // initial uniform samples per unit of time
  int max_depth = 20;          // recursive bisection depth cap
  double tol = 1e-8;           // step-halving stability target for the certificate
  double delta_min = 1e-9;     // collision guard for separation tracks
  int max_density_rounds = 6;  // density doublings allowed while chasing tol
  bool certify = true;         // record the halving certificate (costs one rebuild)

  LiftOptions doubled() const {
    LiftOptions o = *this;
    o.samples_per_period *= 2;
    o.tol *= 0.5;
    return o;
  }
};

// A continuous real-valued lift of an angle-valued function of time, stored
// at refined sample times. Angles are in turns; angles[0] lies in [0,1) and
// every consecutive gap is below 1/4 turn.
struct LiftedAngleTrack {
  std::vector<double> times;
  std::vector<double> angles;
  double max_gap = 0.0;        // refinement certificate: largest per-step gap seen
  double halving_delta = 0.0;  // |total change - total change at doubled density|
  double min_separation = std::numeric_limits<double>::infinity();

  double total_change() const { return angles.back() - angles.front(); }

  /// angle(t) - angle(0) at a time that is guaranteed to be a sample
  /// (period boundaries always are). Throws if t is not sampled.
  double change_at(double t) const;
};

/// Lift a sequence of direction vectors to real angles. angles[0] is in
/// [0,1); each step takes the unique representative in (-1/2, 1/2) of the
/// angular difference. Consecutive directions at 1/4 turn or more apart make
/// the lift ambiguous and raise gap-too-large.
std::vector<double> unwrap(std::span<const Vec2> directions);

/// Track the direction of df_t(x) . xi over [0, T].
LiftedAngleTrack track_tangent(const Isotopy& iso, const Vec2& x, const Vec2& xi, double T,
                               const LiftOptions& opt = {});

/// Track the direction from f_t(x) to f_t(y) over [0, T].
LiftedAngleTrack track_separation(const Isotopy& iso, const Vec2& x, const Vec2& y, double T,
                                  const LiftOptions& opt = {});

/// Write a track as CSV with columns t, angle_turns.
void write_track_csv(std::ostream& os, const LiftedAngleTrack& track);

}  // namespace torsionlab

#pragma once

#include "torsionlab/linking.hpp"
#include "torsionlab/torsion.hpp"

#include <utility>
#include <vector>

namespace torsionlab {

// A certified tangent vector with large finite-time torsion, produced from a
// pair of orbits with nonzero finite-time linking. The certificate satisfies
// |torsion_value| >= |epsilon|/3 - 1/n - 1e-6, re-verified at doubled lift
// resolution before being returned.
struct WitnessCertificate {
  Vec2 x = Vec2::Zero();  // the linking pair
  Vec2 y = Vec2::Zero();
  double epsilon = 0.0;   // Linking_n(I, x, y)
  double s0 = 0.0;        // z = (1-s0) x + s0 y; s0 = 0 means x itself works
  Vec2 z = Vec2::Zero();
  Vec2 xi = Vec2::Zero();  // segment direction (y-x)/||y-x||
  double torsion_value = 0.0;
  int n = 0;
  double bound = 0.0;  // |epsilon|/3 - 1/n

  bool sound(double slack = 1e-6) const { return std::abs(torsion_value) >= bound - slack; }
};

struct WitnessOptions {
  double eps_min = 1e-3;    // refuse pairs whose |linking| makes the bound vacuous
  int grid = 1000;          // initial s-grid resolution
  double s_first = 1e-6;    // first positive grid point (s = 0 is supplied analytically)
  double bisect_tol = 1e-9; // |delta s| target for the crossing locator
  LiftOptions lift;
};

/// Locate z on the segment [x, y] and the segment direction xi with
/// |Torsion_n(I, z, xi)| >= |Linking_n(I, x, y)|/3 - 1/n. Implements the
/// s0-infimum search: the lifted direction from f_n(x) to f_n(z(s)) is scanned
/// for the first s where it has advanced by 2 n eps / 3 over the tangent lift.
WitnessCertificate find_witness(const Isotopy& iso, const Vec2& x, const Vec2& y, int n,
                                const WitnessOptions& opt = {});

/// Evaluate linking on all candidate pairs, run find_witness on the pair
/// maximizing |Linking_n| (first index wins ties).
WitnessCertificate existence_pipeline(const Isotopy& iso,
                                      const std::vector<std::pair<Vec2, Vec2>>& pairs, int n,
                                      const WitnessOptions& opt = {});

/// The scan function u~(s,n) - u~(0,n) = n (Linking_n(I,x,z(s)) - Torsion_n(I,x,xi)),
/// exposed for the minimality property check. s must be in (0, 1].
double witness_scan_value(const Isotopy& iso, const Vec2& x, const Vec2& y, int n, double s,
                          double tangent_torsion, const LiftOptions& opt);

}  // namespace torsionlab

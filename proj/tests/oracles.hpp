#pragma once

// Test-only oracles, kept independent of the library code paths they check.

#include "torsionlab/isotopy.hpp"

#include <vector>

namespace torsionlab::oracle {

/// Central finite-difference Jacobian of eval at (t, p).
inline Mat2 fd_jacobian(const Isotopy& iso, double t, const Vec2& p, double h = 1e-6) {
  Mat2 j;
  const Vec2 dx(h, 0.0), dy(0.0, h);
  const Vec2 jx = (iso.eval(t, p + dx) - iso.eval(t, p - dx)) / (2.0 * h);
  const Vec2 jy = (iso.eval(t, p + dy) - iso.eval(t, p - dy)) / (2.0 * h);
  j << jx.x(), jy.x(), jx.y(), jy.y();
  return j;
}

/// Sum of exact per-step angular differences (relative two-argument
/// arctangent route, unlike the library's absolute-angle route).
inline std::vector<double> unwrap_by_deltas(const std::vector<Vec2>& dirs) {
  std::vector<double> out;
  double a = angle_of(dirs.front());
  out.push_back(a);
  for (std::size_t k = 1; k < dirs.size(); ++k) {
    a += angle_delta(dirs[k - 1], dirs[k]);
    out.push_back(a);
  }
  return out;
}

/// Direct re-composition of the double shear (independent of the Isotopy
/// implementation): n applications of the two explicit shears.
inline std::vector<Vec2> double_shear_orbit(double a, double b, Vec2 p, int n) {
  std::vector<Vec2> orbit{p};
  for (int i = 0; i < n; ++i) {
    Vec2 q = orbit.back();
    q.x() += a * std::sin(kTwoPi * q.y());
    q.y() += b * std::sin(kTwoPi * q.x());
    orbit.push_back(q);
  }
  return orbit;
}

}  // namespace torsionlab::oracle

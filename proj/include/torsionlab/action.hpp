#pragma once

#include "torsionlab/isotopy.hpp"
#include "torsionlab/linking.hpp"

#include <vector>

namespace torsionlab {

struct ActionValue {
  double value = 0.0;
  // A fixed point of the whole isotopy has a constant loop, so the line
  // integral of the primitive vanishes for any choice; we record the choice
  // anyway.
  std::string primitive = "(x dy - y dx)/2";
};

/// Symplectic action of a point fixed by the whole isotopy: the loop term is
/// zero and the value is -int_0^1 H_t(x) dt by adaptive quadrature.
/// Points moved by the isotopy are rejected (not-fixed).
ActionValue symplectic_action(const Isotopy& iso, const HamiltonianProfile& profile, const Vec2& x,
                              double quad_tol = 1e-10);

struct AverageLinking {
  double mean_n = 0.0;  // Monte-Carlo estimate of  int Linking_n(I, x0, .) d omega
  double stderr_n = 0.0;
  double mean_1 = 0.0;  // same for Linking_1
  double stderr_1 = 0.0;
  int n = 0;
  int samples = 0;
  long collisions = 0;  // draws that hit x0 and were replaced (deterministically)
};

/// Uniform-area Monte-Carlo estimates over the unit disc with its mass pi
/// (not normalized), using counter-based streams so the parallel order does
/// not change results. mean_n ~ mean_1 ~ A_I(x0) on Hamiltonian isotopies.
AverageLinking average_linking(const Isotopy& iso, const Vec2& x0, int n, int N, std::uint64_t seed,
                               const LiftOptions& opt = {});

/// Radial fast path for the same area integral: for a radial profile the
/// linking of the origin with radius r is h'(r^2)/pi, so the integral against
/// the raw area form collapses to the 1-d quadrature of h' over [0, 1],
/// i.e. h(1) - h(0).
double average_linking_radial(const HamiltonianProfile& profile, double quad_tol = 1e-10);

struct FixedPointAction {
  Vec2 point = Vec2::Zero();
  double action = 0.0;
  bool above_tol = false;
};

/// Verify the candidates are fixed by the whole isotopy, compute their
/// actions, return the one with maximal |A|. Raises no-candidate-above-tol
/// when even the best |A| is below tol.
FixedPointAction find_nonzero_action_fixed_point(const Isotopy& iso, const HamiltonianProfile& profile,
                                                 const std::vector<Vec2>& candidates, double tol);

/// Adaptive Simpson quadrature (shared with tests as an oracle-grade helper).
double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol,
                        int max_depth = 40);

}  // namespace torsionlab

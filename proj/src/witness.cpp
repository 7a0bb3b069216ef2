#include "torsionlab/witness.hpp"

#include <algorithm>
#include <cmath>

namespace torsionlab {

namespace {

Vec2 segment_point(const Vec2& x, const Vec2& y, double s) { return (1.0 - s) * x + s * y; }

struct Scanner {
  const Isotopy& iso;
  Vec2 x, y, xi;
  int n;
  double tau_x;      // Torsion_n(I, x, xi)
  double sigma;      // sign of epsilon
  LiftOptions fast;  // uncertified options for the grid scan

  // sigma-adjusted advance of the separation lift over the tangent lift at
  // time n, as a function of s. G(0) = 0 by construction.
  double g(double s) const {
    const LiftedAngleTrack track =
        track_separation(iso, x, segment_point(x, y, s), static_cast<double>(n), fast);
    return sigma * (track.total_change() - static_cast<double>(n) * tau_x);
  }
};

}  // namespace

double witness_scan_value(const Isotopy& iso, const Vec2& x, const Vec2& y, int n, double s,
                          double tangent_torsion, const LiftOptions& opt) {
  if (!(s > 0.0) || s > 1.0) throw UsageError("witness_scan_value: s must be in (0, 1]");
  const LiftedAngleTrack track =
      track_separation(iso, x, segment_point(x, y, s), static_cast<double>(n), opt);
  return track.total_change() - static_cast<double>(n) * tangent_torsion;
}

WitnessCertificate find_witness(const Isotopy& iso, const Vec2& x, const Vec2& y, int n,
                                const WitnessOptions& opt) {
  if (n < 1) throw UsageError("find_witness: n must be >= 1");
  if ((y - x).norm() == 0.0) throw UsageError("find_witness: x and y must be distinct");

  const double eps = linking_n(iso, x, y, n, opt.lift);
  if (std::abs(eps) < opt.eps_min)
    throw ZeroLinkingError("find_witness: |Linking_n| = " + std::to_string(std::abs(eps)) +
                           " is below eps_min = " + std::to_string(opt.eps_min) +
                           "; the bound would be vacuous");

  WitnessCertificate cert;
  cert.x = x;
  cert.y = y;
  cert.epsilon = eps;
  cert.n = n;
  cert.xi = (y - x).normalized();
  cert.bound = std::abs(eps) / 3.0 - 1.0 / static_cast<double>(n);

  const double sigma = eps > 0.0 ? 1.0 : -1.0;
  const double tau_x = torsion_n(iso, x, cert.xi, n, opt.lift);

  const LiftOptions doubled = opt.lift.doubled();
  auto verified = [&](const Vec2& z, double tau) {
    if (sigma * tau < cert.bound - 1e-6) return false;
    // independent recomputation of both sides at doubled lift resolution
    const double eps2 = linking_n(iso, x, y, n, doubled);
    const double tau2 = torsion_n(iso, z, cert.xi, n, doubled);
    return sigma * tau2 >= std::abs(eps2) / 3.0 - 1.0 / static_cast<double>(n) - 1e-6;
  };

  if (sigma * tau_x >= std::abs(eps) / 3.0) {
    cert.s0 = 0.0;
    cert.z = x;
    cert.torsion_value = tau_x;
    if (!verified(x, tau_x))
      throw S0NotFoundError("find_witness: the s0=0 certificate failed re-verification");
    return cert;
  }

  Scanner scan{iso, x, y, cert.xi, n, tau_x, sigma, opt.lift};
  scan.fast.certify = false;

  const double threshold = 2.0 * static_cast<double>(n) * std::abs(eps) / 3.0;
  double s_lo = 0.0;   // G(0) = 0 < threshold by construction
  double g_lo = 0.0;
  for (int k = 0; k <= opt.grid; ++k) {
    double s = k == 0 ? opt.s_first : static_cast<double>(k) / static_cast<double>(opt.grid);
    if (s <= s_lo) continue;
    const double gs = scan.g(s);
    if (gs >= threshold) {
      // bisect the bracket to locate the smallest crossing; the s = 0 value
      // is supplied analytically, so the locator never descends below the
      // first positive grid point
      double lo = s_lo, hi = s;
      while (hi - lo > opt.bisect_tol && hi > opt.s_first) {
        const double mid = 0.5 * (lo + hi);
        if (mid < opt.s_first) break;
        if (scan.g(mid) >= threshold)
          hi = mid;
        else
          lo = mid;
      }
      const Vec2 z = segment_point(x, y, hi);
      const double tau = torsion_n(iso, z, cert.xi, n, opt.lift);
      if (verified(z, tau)) {
        cert.s0 = hi;
        cert.z = z;
        cert.torsion_value = tau;
        return cert;
      }
      // keep scanning past this crossing; re-verification rejected it
    }
    s_lo = s;
    g_lo = gs;
  }
  (void)g_lo;
  throw S0NotFoundError(
      "find_witness: no s0 with a verifiable certificate was found; refine the grid or the lift "
      "(this indicates insufficient refinement, never a disproof)");
}

WitnessCertificate existence_pipeline(const Isotopy& iso,
                                      const std::vector<std::pair<Vec2, Vec2>>& pairs, int n,
                                      const WitnessOptions& opt) {
  if (pairs.empty()) throw UsageError("existence_pipeline: candidate list is empty");
  std::vector<double> links(pairs.size(), 0.0);
  parallel_for(pairs.size(), [&](std::size_t i) {
    links[i] = linking_n(iso, pairs[i].first, pairs[i].second, n, opt.lift);
  });
  std::size_t best = 0;
  for (std::size_t i = 1; i < pairs.size(); ++i)
    if (std::abs(links[i]) > std::abs(links[best])) best = i;
  if (std::abs(links[best]) < opt.eps_min)
    throw AllPairsZeroLinkingError("existence_pipeline: every candidate pair has |Linking_n| < " +
                                   std::to_string(opt.eps_min));
  return find_witness(iso, pairs[best].first, pairs[best].second, n, opt);
}

}  // namespace torsionlab

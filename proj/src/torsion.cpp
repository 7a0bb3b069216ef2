#include "torsionlab/torsion.hpp"

#include <algorithm>
#include <cmath>

namespace torsionlab {

double torsion_n(const Isotopy& iso, const Vec2& x, const Vec2& xi, int n, const LiftOptions& opt) {
  if (n < 1) throw UsageError("torsion_n: n must be >= 1");
  const LiftedAngleTrack track = track_tangent(iso, x, xi, static_cast<double>(n), opt);
  return track.total_change() / static_cast<double>(n);
}

std::vector<int> default_schedule() {
  std::vector<int> s;
  for (int k = 5; k <= 12; ++k) s.push_back(1 << k);
  return s;
}

TorsionEstimate torsion_orbit(const Isotopy& iso, const Vec2& x, const Vec2& xi,
                              std::vector<int> schedule, double tol, const LiftOptions& opt) {
  if (schedule.empty()) throw UsageError("torsion_orbit: schedule must be nonempty");
  std::sort(schedule.begin(), schedule.end());
  if (schedule.front() < 1) throw UsageError("torsion_orbit: horizons must be >= 1");
  const int horizon = schedule.back();

  const LiftedAngleTrack track = track_tangent(iso, x, xi, static_cast<double>(horizon), opt);
  const Vec2 xi_perp(-xi.y(), xi.x());
  const LiftedAngleTrack track_perp = track_tangent(iso, x, xi_perp, static_cast<double>(horizon), opt);

  TorsionEstimate est;
  est.tol = tol;
  for (int m : schedule) {
    est.history.emplace_back(m, track.change_at(static_cast<double>(m)) / static_cast<double>(m));
  }
  est.n = horizon;
  est.value = est.history.back().second;
  est.xi_spread = std::abs(est.value - track_perp.total_change() / static_cast<double>(horizon));

  const std::size_t tail = std::min<std::size_t>(3, est.history.size());
  double lo = est.history.back().second, hi = lo;
  for (std::size_t i = est.history.size() - tail; i < est.history.size(); ++i) {
    lo = std::min(lo, est.history[i].second);
    hi = std::max(hi, est.history[i].second);
  }
  est.converged = (hi - lo) <= tol;
  return est;
}

PointSampler disc_area_sampler() {
  return [](CounterRng& rng) { return sample_unit_disc(rng); };
}

PointSampler torus_area_sampler() {
  return [](CounterRng& rng) { return sample_unit_square(rng); };
}

MeasureTorsion torsion_measure(const Isotopy& iso, const PointSampler& sampler, int n, int N,
                               std::uint64_t seed, const LiftOptions& opt, double measure_mass) {
  if (N < 2) throw UsageError("torsion_measure: need at least two samples");
  if (n < 1) throw UsageError("torsion_measure: n must be >= 1");
  std::vector<double> values(static_cast<std::size_t>(N));
  const Vec2 xi(1.0, 0.0);
  parallel_for(values.size(), [&](std::size_t i) {
    CounterRng rng(seed, i);
    const Vec2 p = sampler(rng);
    values[i] = torsion_n(iso, p, xi, n, opt);
  });
  double sum = 0.0;
  for (double v : values) sum += v;
  const double mean = sum / static_cast<double>(N);
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  MeasureTorsion out;
  out.mean = measure_mass * mean;
  out.std_error =
      measure_mass * std::sqrt(ss / (static_cast<double>(N) * (static_cast<double>(N) - 1.0)));
  out.xi_bias_bound = measure_mass * 2.0 / static_cast<double>(n);
  out.n = n;
  out.samples = N;
  return out;
}

}  // namespace torsionlab

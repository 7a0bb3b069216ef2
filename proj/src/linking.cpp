#include "torsionlab/linking.hpp"

#include <algorithm>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

namespace torsionlab {

double linking_n(const Isotopy& iso, const Vec2& x, const Vec2& y, int n, const LiftOptions& opt) {
  return linking_n_estimate(iso, x, y, n, opt).value;
}

LinkingEstimate linking_n_estimate(const Isotopy& iso, const Vec2& x, const Vec2& y, int n,
                                   const LiftOptions& opt) {
  if (n < 1) throw UsageError("linking_n: n must be >= 1");
  const LiftedAngleTrack track = track_separation(iso, x, y, static_cast<double>(n), opt);
  LinkingEstimate est;
  est.value = track.total_change() / static_cast<double>(n);
  est.horizon = static_cast<double>(n);
  est.min_separation = track.min_separation;
  return est;
}

void SampledCurve::validate() const {
  if (times.size() != points.size()) throw UsageError("curve: times/points size mismatch");
  if (times.size() < 2) throw UsageError("curve: need at least two samples");
  for (std::size_t i = 1; i < times.size(); ++i)
    if (!(times[i] > times[i - 1])) throw UsageError("curve: times must be strictly increasing");
}

SampledCurve sample_orbit_curve(const Isotopy& iso, const Vec2& x, double T, double dt) {
  if (!(T > 0.0) || !(dt > 0.0)) throw UsageError("sample_orbit_curve: T and dt must be > 0");
  SampledCurve c;
  const long steps = static_cast<long>(std::ceil(T / dt - 1e-12));
  c.times.reserve(steps + 1);
  c.points.reserve(steps + 1);
  Vec2 base = x;
  long period = 0;
  for (long k = 0; k <= steps; ++k) {
    const double t = std::min(T, dt * static_cast<double>(k));
    // march the orbit period by period to keep long horizons cheap
    while (static_cast<double>(period + 1) <= t) {
      base = iso.time_one(base);
      ++period;
    }
    const double s = t - static_cast<double>(period);
    c.times.push_back(t);
    c.points.push_back(s == 0.0 ? base : iso.eval_base(s, base));
  }
  return c;
}

namespace {

std::size_t index_of_time(const SampledCurve& c, double T) {
  auto it = std::lower_bound(c.times.begin(), c.times.end(), T - 1e-12);
  if (it == c.times.end() || std::abs(*it - T) > 1e-9)
    throw UsageError("curve: T is not among the sample times");
  return static_cast<std::size_t>(it - c.times.begin());
}

void require_common_times(const SampledCurve& a, const SampledCurve& b) {
  if (a.size() != b.size()) throw UsageError("curves must share their sample times");
  for (std::size_t i = 0; i < a.size(); ++i)
    if (std::abs(a.times[i] - b.times[i]) > 1e-12)
      throw UsageError("curves must share their sample times");
}

}  // namespace

LinkingEstimate linking_curves(const SampledCurve& alpha, const SampledCurve& beta, double T) {
  alpha.validate();
  beta.validate();
  require_common_times(alpha, beta);
  const std::size_t last = index_of_time(alpha, T);
  if (last == 0) throw UsageError("linking_curves: T must be past the first sample");

  std::vector<Vec2> dirs(last + 1);
  double min_sep = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i <= last; ++i) {
    dirs[i] = beta.points[i] - alpha.points[i];
    const double norm = dirs[i].norm();
    min_sep = std::min(min_sep, norm);
    if (!(norm > 0.0))
      throw CollisionError("linking_curves: curves collide at t=" + std::to_string(alpha.times[i]),
                           alpha.times[i]);
  }
  const std::vector<double> lifted = unwrap(dirs);
  LinkingEstimate est;
  est.value = (lifted.back() - lifted.front()) / T;
  est.horizon = T;
  est.min_separation = min_sep;
  return est;
}

PerturbationReport perturbation_bound_check(const SampledCurve& alpha, const SampledCurve& beta,
                                            const SampledCurve& alpha2, const SampledCurve& beta2,
                                            double T) {
  alpha.validate();
  beta.validate();
  alpha2.validate();
  beta2.validate();
  require_common_times(alpha, beta);
  require_common_times(alpha, alpha2);
  require_common_times(alpha, beta2);
  const std::size_t last = index_of_time(alpha, T);

  PerturbationReport rep;
  rep.separation_min = std::numeric_limits<double>::infinity();
  std::vector<Vec2> d1(last + 1), d2(last + 1);
  for (std::size_t i = 0; i <= last; ++i) {
    d1[i] = beta.points[i] - alpha.points[i];
    d2[i] = beta2.points[i] - alpha2.points[i];
    rep.separation_min = std::min(rep.separation_min, d1[i].norm());
    rep.alpha_shift_sup = std::max(rep.alpha_shift_sup, (alpha.points[i] - alpha2.points[i]).norm());
    rep.beta_shift_sup = std::max(rep.beta_shift_sup, (beta.points[i] - beta2.points[i]).norm());
  }
  rep.premise_ok = rep.separation_min > 0.0 &&
                   rep.alpha_shift_sup <= 0.5 * rep.separation_min + 1e-15 &&
                   rep.beta_shift_sup <= 0.5 * rep.separation_min + 1e-15;
  if (!rep.premise_ok) {
    // report-only: without the hypotheses the lifted comparison means nothing
    rep.max_lifted_difference = std::numeric_limits<double>::quiet_NaN();
    rep.endpoint_difference = std::numeric_limits<double>::quiet_NaN();
    return rep;
  }

  const std::vector<double> l1 = unwrap(d1);
  const std::vector<double> l2 = unwrap(d2);
  for (std::size_t i = 0; i <= last; ++i) {
    const double window = std::abs((l1[i] - l1[0]) - (l2[i] - l2[0]));
    rep.max_lifted_difference = std::max(rep.max_lifted_difference, window);
  }
  rep.endpoint_difference = std::abs((l1[last] - l1[0]) - (l2[last] - l2[0])) / T;
  return rep;
}

SampledCurve read_curve_csv(std::istream& is) {
  SampledCurve c;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (line.rfind("t,", 0) == 0) continue;  // header
    std::istringstream row(line);
    std::string cell;
    double vals[3];
    int k = 0;
    while (std::getline(row, cell, ',') && k < 3) vals[k++] = std::stod(cell);
    if (k != 3) throw UsageError("curve CSV: expected 3 columns t,x,y");
    c.times.push_back(vals[0]);
    c.points.emplace_back(vals[1], vals[2]);
  }
  c.validate();
  return c;
}

void write_curve_csv(std::ostream& os, const SampledCurve& curve) {
  os << "t,x,y\n";
  char buf[96];
  for (std::size_t i = 0; i < curve.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g\n", curve.times[i], curve.points[i].x(),
                  curve.points[i].y());
    os << buf;
  }
}

}  // namespace torsionlab

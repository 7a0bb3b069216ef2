#include "torsionlab/action.hpp"

#include <cmath>
#include <sstream>

namespace torsionlab {

// ---- profiles --------------------------------------------------------------

namespace {

class ZeroProfile final : public HamiltonianProfile::Impl {
 public:
  double h(double) const override { return 0.0; }
  double dh(double) const override { return 0.0; }
  double ddh(double) const override { return 0.0; }
  std::string describe() const override { return "zero"; }
};

class CubicProfile final : public HamiltonianProfile::Impl {
 public:
  CubicProfile(double lambda, double width) : lambda_(lambda), width_(width) {
    if (!(width_ > 0.0) || width_ > 1.0) throw UsageError("cubic profile: width must be in (0, 1]");
  }
  double h(double s) const override {
    const double u = s / width_;
    return u < 1.0 ? lambda_ * (1.0 - u) * (1.0 - u) * (1.0 - u) : 0.0;
  }
  double dh(double s) const override {
    const double u = s / width_;
    return u < 1.0 ? -3.0 * lambda_ / width_ * (1.0 - u) * (1.0 - u) : 0.0;
  }
  double ddh(double s) const override {
    const double u = s / width_;
    return u < 1.0 ? 6.0 * lambda_ / (width_ * width_) * (1.0 - u) : 0.0;
  }
  std::string describe() const override {
    std::ostringstream os;
    os << "cubic lambda=" << lambda_ << " width=" << width_;
    return os.str();
  }

 private:
  double lambda_, width_;
};

class SumProfile final : public HamiltonianProfile::Impl {
 public:
  explicit SumProfile(std::vector<HamiltonianProfile> parts) : parts_(std::move(parts)) {}
  double h(double s) const override {
    double v = 0.0;
    for (const auto& p : parts_) v += p.h(s);
    return v;
  }
  double dh(double s) const override {
    double v = 0.0;
    for (const auto& p : parts_) v += p.dh(s);
    return v;
  }
  double ddh(double s) const override {
    double v = 0.0;
    for (const auto& p : parts_) v += p.ddh(s);
    return v;
  }
  std::string describe() const override {
    std::string s = "sum(";
    for (std::size_t i = 0; i < parts_.size(); ++i) s += (i ? " + " : "") + parts_[i].describe();
    return s + ")";
  }

 private:
  std::vector<HamiltonianProfile> parts_;
};

}  // namespace

HamiltonianProfile zero_profile() { return HamiltonianProfile(std::make_shared<ZeroProfile>()); }

HamiltonianProfile cubic_profile(double lambda, double width) {
  return HamiltonianProfile(std::make_shared<CubicProfile>(lambda, width));
}

HamiltonianProfile sum_profile(const std::vector<HamiltonianProfile>& parts) {
  return HamiltonianProfile(std::make_shared<SumProfile>(parts));
}

// ---- quadrature ------------------------------------------------------------

namespace {

double simpson(double a, double fa, double fm, double b, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double simpson_rec(const std::function<double(double)>& f, double a, double fa, double b, double fb,
                   double m, double fm, double whole, double tol, int depth, int max_depth) {
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = simpson(a, fa, flm, m, fm);
  const double right = simpson(m, fm, frm, b, fb);
  if (depth >= max_depth || std::abs(left + right - whole) <= 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return simpson_rec(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth + 1, max_depth) +
         simpson_rec(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth + 1, max_depth);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol,
                        int max_depth) {
  const double m = 0.5 * (a + b);
  const double fa = f(a), fb = f(b), fm = f(m);
  return simpson_rec(f, a, fa, b, fb, m, fm, simpson(a, fa, fm, b, fb), tol, 0, max_depth);
}

// ---- action ----------------------------------------------------------------

ActionValue symplectic_action(const Isotopy& iso, const HamiltonianProfile& profile, const Vec2& x,
                              double quad_tol) {
  for (int k = 0; k <= 10; ++k) {
    const double t = static_cast<double>(k) / 10.0;
    if ((iso.eval_base(t, x) - x).norm() > 1e-10)
      throw UsageError("symplectic_action: point moves under the isotopy (checked at t=" +
                       std::to_string(t) + ")");
  }
  // gamma_x is constant, so the primitive term vanishes; the profile is
  // autonomous, H_t(x) = h(|x|^2) for all t.
  const double r2 = x.squaredNorm();
  ActionValue a;
  a.value = -adaptive_simpson([&](double) { return profile.h(r2); }, 0.0, 1.0, quad_tol);
  return a;
}

AverageLinking average_linking(const Isotopy& iso, const Vec2& x0, int n, int N, std::uint64_t seed,
                               const LiftOptions& opt) {
  if (N < 100) throw UsageError("average_linking: need at least 100 samples");
  if (n < 1) throw UsageError("average_linking: n must be >= 1");
  if ((iso.time_one(x0) - x0).norm() > 1e-10)
    throw UsageError("average_linking: x0 must be fixed by the time-one map");

  struct Draw {
    double link_n, link_1;
    long retries;
  };
  std::vector<Draw> draws(static_cast<std::size_t>(N));
  parallel_for(draws.size(), [&](std::size_t i) {
    CounterRng rng(seed, i);
    long retries = 0;
    for (;;) {
      const Vec2 p = sample_unit_disc(rng);
      try {
        const LiftedAngleTrack track = track_separation(iso, x0, p, static_cast<double>(n), opt);
        draws[i].link_n = track.total_change() / static_cast<double>(n);
        draws[i].link_1 = track.change_at(1.0);
        draws[i].retries = retries;
        return;
      } catch (const CollisionError&) {
        ++retries;  // the draw hit x0; replace it from the same stream
        if (retries > 64) throw;
      }
    }
  });

  const double mass = M_PI;  // unnormalized area of the unit disc
  AverageLinking out;
  out.n = n;
  out.samples = N;
  double sn = 0.0, s1 = 0.0;
  for (const Draw& d : draws) {
    sn += d.link_n;
    s1 += d.link_1;
    out.collisions += d.retries;
  }
  const double mean_n_raw = sn / N, mean_1_raw = s1 / N;
  double vn = 0.0, v1 = 0.0;
  for (const Draw& d : draws) {
    vn += (d.link_n - mean_n_raw) * (d.link_n - mean_n_raw);
    v1 += (d.link_1 - mean_1_raw) * (d.link_1 - mean_1_raw);
  }
  out.mean_n = mass * mean_n_raw;
  out.mean_1 = mass * mean_1_raw;
  out.stderr_n = mass * std::sqrt(vn / (static_cast<double>(N) * (N - 1.0)));
  out.stderr_1 = mass * std::sqrt(v1 / (static_cast<double>(N) * (N - 1.0)));
  return out;
}

double average_linking_radial(const HamiltonianProfile& profile, double quad_tol) {
  return adaptive_simpson([&](double u) { return profile.dh(u); }, 0.0, 1.0, quad_tol);
}

FixedPointAction find_nonzero_action_fixed_point(const Isotopy& iso, const HamiltonianProfile& profile,
                                                 const std::vector<Vec2>& candidates, double tol) {
  if (candidates.empty()) throw UsageError("find_nonzero_action_fixed_point: no candidates");
  FixedPointAction best;
  bool have = false;
  for (const Vec2& c : candidates) {
    const ActionValue a = symplectic_action(iso, profile, c);
    if (!have || std::abs(a.value) > std::abs(best.action)) {
      best.point = c;
      best.action = a.value;
      have = true;
    }
  }
  best.above_tol = std::abs(best.action) >= tol;
  if (!best.above_tol)
    throw NoCandidateError("find_nonzero_action_fixed_point: best |A| = " +
                           std::to_string(std::abs(best.action)) + " is below tol = " +
                           std::to_string(tol) + " (numerics cannot certify the alternative)");
  return best;
}

}  // namespace torsionlab

#include "torsionlab/lift.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>

namespace torsionlab {

namespace {

constexpr double kRefineGap = 0.2;   // refine any step at or above this (turns)
constexpr double kAcceptGap = 0.24;  // accept at depth cap only below this

// One period-local direction source. Implementations must be smooth in s.
struct DirectionFn {
  virtual ~DirectionFn() = default;
  virtual Vec2 operator()(double s) const = 0;
};

struct Builder {
  const LiftOptions& opt;
  LiftedAngleTrack track;
  bool guard_separation = false;
  double period_offset = 0.0;  // time of s=0 in the current period

  explicit Builder(const LiftOptions& o) : opt(o) {}

  void check_norm(const Vec2& v, double s) {
    const double norm = v.norm();
    if (guard_separation) {
      track.min_separation = std::min(track.min_separation, norm);
      if (norm < opt.delta_min)
        throw CollisionError("separation fell below the collision guard at t=" +
                                 std::to_string(period_offset + s),
                             period_offset + s);
    } else if (!(norm > 0.0)) {
      throw NumericError("tangent vector vanished at t=" + std::to_string(period_offset + s));
    }
  }

  void push(double s, double angle) {
    track.times.push_back(period_offset + s);
    track.angles.push_back(angle);
  }

  // Cover (s0, s1] given the value/lifted angle at s0; returns the lifted
  // angle at s1. Subdivides until the per-step gap is safely below 1/4 turn.
  double refine(const DirectionFn& f, double s0, const Vec2& v0, double a0, double s1, const Vec2& v1,
                int depth) {
    const double d = angle_delta(v0, v1);
    if (std::abs(d) < kRefineGap) {
      const double a1 = a0 + d;
      track.max_gap = std::max(track.max_gap, std::abs(d));
      push(s1, a1);
      return a1;
    }
    if (depth >= opt.max_depth) {
      if (std::abs(d) < kAcceptGap) {
        const double a1 = a0 + d;
        track.max_gap = std::max(track.max_gap, std::abs(d));
        push(s1, a1);
        return a1;
      }
      throw RefinementExhaustedError(
          "angle lift: gap condition unattainable within max subdivision depth near t=" +
          std::to_string(period_offset + s0));
    }
    const double sm = 0.5 * (s0 + s1);
    const Vec2 vm = f(sm);
    check_norm(vm, sm);
    const double am = refine(f, s0, v0, a0, sm, vm, depth + 1);
    return refine(f, sm, vm, am, s1, v1, depth + 1);
  }

  // Process one period-local interval [0, span] with the initial uniform grid.
  // a0 = lifted angle at local s = 0 (already pushed).
  double run_interval(const DirectionFn& f, double span, double a0) {
    const int k = std::max(1, static_cast<int>(std::ceil(opt.samples_per_period * span)));
    double s_prev = 0.0;
    Vec2 v_prev = f(0.0);
    check_norm(v_prev, 0.0);
    double a_prev = a0;
    for (int i = 1; i <= k; ++i) {
      const double s = span * static_cast<double>(i) / static_cast<double>(k);
      const Vec2 v = f(s);
      check_norm(v, s);
      a_prev = refine(f, s_prev, v_prev, a_prev, s, v, 0);
      s_prev = s;
      v_prev = v;
    }
    return a_prev;
  }
};

struct TangentDir final : DirectionFn {
  const Isotopy* iso;
  const Vec2* x;
  const Vec2* w;
  Vec2 operator()(double s) const override { return iso->jacobian_base(s, *x) * (*w); }
};

struct SeparationDir final : DirectionFn {
  const Isotopy* iso;
  const Vec2* x;
  const Vec2* y;
  Vec2 operator()(double s) const override {
    return iso->eval_base(s, *y) - iso->eval_base(s, *x);
  }
};

LiftedAngleTrack build_tangent(const Isotopy& iso, const Vec2& x, const Vec2& xi, double T,
                               const LiftOptions& opt) {
  Builder b(opt);
  Vec2 xm = x;
  Vec2 w = xi.normalized();
  double a = angle_of(w);
  b.push(0.0, a);
  const long full = static_cast<long>(std::floor(T));
  TangentDir dir;
  dir.iso = &iso;
  for (long m = 0; m < full; ++m) {
    b.period_offset = static_cast<double>(m);
    dir.x = &xm;
    dir.w = &w;
    a = b.run_interval(dir, 1.0, a);
    w = (iso.jacobian_base(1.0, xm) * w).normalized();
    xm = iso.time_one(xm);
  }
  const double rem = T - static_cast<double>(full);
  if (rem > 1e-15) {
    b.period_offset = static_cast<double>(full);
    dir.x = &xm;
    dir.w = &w;
    b.run_interval(dir, rem, a);
  }
  return std::move(b.track);
}

LiftedAngleTrack build_separation(const Isotopy& iso, const Vec2& x, const Vec2& y, double T,
                                  const LiftOptions& opt) {
  Builder b(opt);
  b.guard_separation = true;
  Vec2 xm = x;
  Vec2 ym = y;
  Vec2 v0 = ym - xm;
  b.check_norm(v0, 0.0);
  double a = angle_of(v0);
  b.push(0.0, a);
  const long full = static_cast<long>(std::floor(T));
  SeparationDir dir;
  dir.iso = &iso;
  for (long m = 0; m < full; ++m) {
    b.period_offset = static_cast<double>(m);
    dir.x = &xm;
    dir.y = &ym;
    a = b.run_interval(dir, 1.0, a);
    xm = iso.time_one(xm);
    ym = iso.time_one(ym);
  }
  const double rem = T - static_cast<double>(full);
  if (rem > 1e-15) {
    b.period_offset = static_cast<double>(full);
    dir.x = &xm;
    dir.y = &ym;
    b.run_interval(dir, rem, a);
  }
  return std::move(b.track);
}

template <class BuildFn>
LiftedAngleTrack certified(const BuildFn& build, const LiftOptions& opt) {
  if (!(opt.tol > 0.0)) throw UsageError("lift: tolerance must be > 0");
  LiftOptions cur = opt;
  LiftedAngleTrack coarse = build(cur);
  if (!opt.certify) return coarse;
  for (int round = 0; round < opt.max_density_rounds; ++round) {
    LiftOptions fine = cur;
    fine.samples_per_period = cur.samples_per_period * 2;
    LiftedAngleTrack refined = build(fine);
    const double delta = std::abs(refined.total_change() - coarse.total_change());
    if (delta <= opt.tol) {
      refined.halving_delta = delta;
      return refined;
    }
    cur = fine;
    coarse = std::move(refined);
  }
  throw RefinementExhaustedError("angle lift: total variation did not stabilize under step halving");
}

}  // namespace

double LiftedAngleTrack::change_at(double t) const {
  auto it = std::lower_bound(times.begin(), times.end(), t - 1e-12);
  if (it == times.end() || std::abs(*it - t) > 1e-9)
    throw UsageError("change_at: time " + std::to_string(t) + " is not a sample of this track");
  return angles[static_cast<std::size_t>(it - times.begin())] - angles.front();
}

std::vector<double> unwrap(std::span<const Vec2> directions) {
  if (directions.empty()) throw UsageError("unwrap: empty direction sequence");
  std::vector<double> lifted;
  lifted.reserve(directions.size());
  double prev_raw = std::atan2(directions[0].y(), directions[0].x()) / kTwoPi;
  double a = prev_raw < 0.0 ? prev_raw + 1.0 : prev_raw;
  lifted.push_back(a);
  for (std::size_t k = 1; k < directions.size(); ++k) {
    const double raw = std::atan2(directions[k].y(), directions[k].x()) / kTwoPi;
    double step = raw - prev_raw;
    step -= std::nearbyint(step);
    // a step of exactly a quarter turn still has an unambiguous sign from
    // atan2; anything beyond it does not lift reliably
    if (std::abs(step) > 0.25)
      throw GapTooLargeError("unwrap: consecutive directions " + std::to_string(std::abs(step)) +
                             " turns apart at index " + std::to_string(k) + "; refine in time");
    a += step;
    lifted.push_back(a);
    prev_raw = raw;
  }
  return lifted;
}

LiftedAngleTrack track_tangent(const Isotopy& iso, const Vec2& x, const Vec2& xi, double T,
                               const LiftOptions& opt) {
  if (!(T > 0.0)) throw UsageError("track_tangent: T must be > 0");
  if (!(xi.norm() > 0.0)) throw UsageError("track_tangent: xi must be nonzero");
  return certified([&](const LiftOptions& o) { return build_tangent(iso, x, xi, T, o); }, opt);
}

LiftedAngleTrack track_separation(const Isotopy& iso, const Vec2& x, const Vec2& y, double T,
                                  const LiftOptions& opt) {
  if (!(T > 0.0)) throw UsageError("track_separation: T must be > 0");
  return certified([&](const LiftOptions& o) { return build_separation(iso, x, y, T, o); }, opt);
}

void write_track_csv(std::ostream& os, const LiftedAngleTrack& track) {
  os << "t,angle_turns\n";
  char buf[64];
  for (std::size_t i = 0; i < track.times.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", track.times[i], track.angles[i]);
    os << buf;
  }
}

}  // namespace torsionlab

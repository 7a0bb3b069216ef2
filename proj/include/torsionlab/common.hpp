#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>

namespace torsionlab {

using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;
using Vec2i = Eigen::Vector2i;

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

/// Angle of a nonzero vector in turns, normalized to [0, 1).
inline double angle_of(const Vec2& v) {
  double a = std::atan2(v.y(), v.x()) / kTwoPi;
  if (a < 0.0) a += 1.0;
  if (a >= 1.0) a -= 1.0;
  return a;
}

/// Signed angle from u to v in turns, the unique representative in (-1/2, 1/2].
inline double angle_delta(const Vec2& u, const Vec2& v) {
  const double cross = u.x() * v.y() - u.y() * v.x();
  const double dot = u.dot(v);
  return std::atan2(cross, dot) / kTwoPi;
}

/// Unit vector at the given angle in turns.
inline Vec2 unit_from_turns(double turns) {
  return Vec2(std::cos(kTwoPi * turns), std::sin(kTwoPi * turns));
}

inline double cross2(const Vec2& u, const Vec2& v) { return u.x() * v.y() - u.y() * v.x(); }

// ---------------------------------------------------------------------------
// Error taxonomy. exit_code matches the CLI contract:
//   1 usage/config, 2 numeric failure, 3 search exhausted / nothing found.
// ---------------------------------------------------------------------------

class Error : public std::runtime_error {
 public:
  Error(int exit_code, const std::string& what) : std::runtime_error(what), exit_code_(exit_code) {}
  int exit_code() const { return exit_code_; }

 private:
  int exit_code_;
};

class UsageError : public Error {
 public:
  explicit UsageError(const std::string& what) : Error(1, what) {}
};

class NumericError : public Error {
 public:
  explicit NumericError(const std::string& what) : Error(2, what) {}
};

class SearchError : public Error {
 public:
  explicit SearchError(const std::string& what) : Error(3, what) {}
};

struct IntegrationError : NumericError {
  double time;
  IntegrationError(const std::string& what, double t) : NumericError(what), time(t) {}
};
struct GapTooLargeError : NumericError {
  using NumericError::NumericError;
};
struct RefinementExhaustedError : NumericError {
  using NumericError::NumericError;
};
struct CollisionError : NumericError {
  double time;
  CollisionError(const std::string& what, double t) : NumericError(what), time(t) {}
};
struct InversionError : NumericError {
  using NumericError::NumericError;
};
struct VerificationError : NumericError {
  using NumericError::NumericError;
};
struct ItineraryMismatchError : NumericError {
  using NumericError::NumericError;
};

struct ZeroLinkingError : SearchError {
  using SearchError::SearchError;
};
struct AllPairsZeroLinkingError : SearchError {
  using SearchError::SearchError;
};
struct S0NotFoundError : SearchError {
  using SearchError::SearchError;
};
struct NotFoundError : SearchError {
  using SearchError::SearchError;
};
struct NoCandidateError : SearchError {
  using SearchError::SearchError;
};
struct HullConditionError : SearchError {
  using SearchError::SearchError;
};
struct NoIntegerSolutionError : SearchError {
  using SearchError::SearchError;
};

// ---------------------------------------------------------------------------
// Counter-based RNG: every sample index owns an independent deterministic
// stream, so parallel evaluation order cannot change results.
// ---------------------------------------------------------------------------

class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t index) : state_(mix(seed ^ mix(index + 0x9e3779b97f4a7c15ull))) {}

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ull;
    return mix(state_);
  }

  /// Uniform double in [0, 1).
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform double in [lo, hi).
  double next_in(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ull;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebull;
    z ^= z >> 31;
    return z;
  }
  std::uint64_t state_;
};

/// Uniform point on the open unit disc (polar transform, two draws).
inline Vec2 sample_unit_disc(CounterRng& rng) {
  const double r = std::sqrt(rng.next_unit());
  const double th = rng.next_unit();
  return Vec2(r * std::cos(kTwoPi * th), r * std::sin(kTwoPi * th));
}

/// Uniform point in [0,1)^2.
inline Vec2 sample_unit_square(CounterRng& rng) {
  const double x = rng.next_unit();
  const double y = rng.next_unit();
  return Vec2(x, y);
}

// Parallelism: block-split loop over [0, n). Worker count is capped by the
// TORSIONLAB_THREADS environment variable. body(i) must only touch slot i.
int thread_budget();

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace torsionlab

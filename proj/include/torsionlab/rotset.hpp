#pragma once

#include "torsionlab/geometry.hpp"
#include "torsionlab/isotopy.hpp"

#include <optional>
#include <vector>

namespace torsionlab {

/// Displacement average (f~^n(z) - z)/n of the lifted map.
Vec2 rho_n(const Isotopy& lifted, const Vec2& z, int n);

// Sampled outer proxy for the rotation set: the convex hull of displacement
// averages over a grid of base points. Not a certified enclosure; the
// metadata says so wherever it is serialized.
struct RotationSetApprox {
  std::vector<Vec2> vertices;  // convex polygon, counterclockwise
  std::vector<Vec2> cloud;     // the sampled rho_n values
  int n = 0;
  int grid = 0;
  int samples = 0;
};

/// rho_n over the grid {(i/N, j/N)} of base points in [0,1)^2, hulled.
RotationSetApprox estimate_rotation_set(const Isotopy& lifted, int grid, int n);

struct NestedHullDiagnostic {
  bool contained = false;   // hull(2n) inside hull(n) inflated by the margin
  double inflation = 0.0;   // 2 * max per-step displacement / n
  double worst_excess = 0;  // max distance of a hull(2n) vertex beyond hull(n)
};

/// Monotonicity diagnostic for the nested approximations: the hull at
/// horizon 2n must lie within the hull at n inflated by twice the maximal
/// per-step displacement over n.
NestedHullDiagnostic nested_hull_diagnostic(const Isotopy& lifted, int grid, int n);

struct PeriodicOrbitRecord {
  Vec2 z = Vec2::Zero();
  int q = 0;
  Vec2i v = Vec2i::Zero();  // f~^q(z) = z + v
  double residual = 0.0;
};

/// Damped root search on G(z) = f~^q(z) - z - v with the derivative-cocycle
/// Jacobian. Seeds default to a low-discrepancy sequence in [0,1)^2; the
/// first seed converging to residual < 1e-10 wins. Exhaustion raises
/// not-found (never a disproof of realizability).
PeriodicOrbitRecord realize_rational_vector(const Isotopy& lifted, int p, int pp, int q,
                                            const std::vector<Vec2>& seeds = {});

// A homeomorphism of the plane commuting with Z^2, given with its Jacobian;
// the inverse is computed by a damped Newton iteration.
struct CoverMap {
  std::function<Vec2(const Vec2&)> value;
  std::function<Mat2(const Vec2&)> derivative;

  Vec2 operator()(const Vec2& p) const { return value(p); }
  Vec2 inverse(const Vec2& w) const;
};

/// ||h - Id||_inf measured as a max over a dense fundamental-domain grid.
double measure_displacement_sup(const CoverMap& h, int grid = 1024);

struct SemiconjugacyReport {
  double d1 = 0.0;             // ||h - Id||_inf used
  double max_deviation = 0.0;  // max_z ||rho_n(phi~, h(z)) - rho_n(f~, z)||
  double bound = 0.0;          // 2 d1 / n
  int n = 0;
};

/// Conjugate f~ by h (phi~ = h o f~ o h^{-1}, iterated honestly with Newton
/// inversions) and check the displacement-average deviation against 2 d1/n.
SemiconjugacyReport semiconjugacy_bound_check(const Isotopy& lifted, const CoverMap& h,
                                              const std::vector<Vec2>& samples, int n,
                                              std::optional<double> d1 = std::nullopt);

/// Per-sample deviation of rho_n(g~, z) from q rho_{qn}(f~, z) - (p, pp),
/// with g~ the iterate-extension wrapper. An algebraic identity; the return
/// is the max deviation over the samples.
double iterate_identity_check(const Isotopy& lifted, int q, int p, int pp,
                              const std::vector<Vec2>& samples, int n);

struct RationalVector {
  int p = 0, pp = 0, q = 1;
  Vec2 value() const { return Vec2(static_cast<double>(p) / q, static_cast<double>(pp) / q); }
};

/// All lattice-fraction points with denominator <= max_den strictly interior
/// to the polygon (margin), deduplicated to the smallest denominator and
/// sorted by (q, p, pp).
std::vector<RationalVector> interior_rational_candidates(const std::vector<Vec2>& polygon,
                                                         int max_den = 8, double margin = 0.05);

/// Affinely independent triples ranked by: hull strictly containing the
/// origin first, then smallest maximal denominator, then largest triangle
/// area. Deterministic; at most `limit` triples are returned.
std::vector<std::array<RationalVector, 3>> rank_vector_triples(
    const std::vector<RationalVector>& candidates, std::size_t limit = 32);

/// The top-ranked triple (three affinely independent interior rational
/// vectors with denominator <= max_den).
std::vector<RationalVector> pick_interior_rational_vectors(const std::vector<Vec2>& polygon,
                                                           int max_den = 8, double margin = 0.05);

}  // namespace torsionlab

#pragma once

#include "torsionlab/isotopy.hpp"
#include "torsionlab/linking.hpp"
#include "torsionlab/qsqrt5.hpp"

#include <array>
#include <iosfwd>
#include <vector>

namespace torsionlab {

// Parallelogram rectangle with edges along the stable/unstable
// eigendirections of the model automorphism, vertices exact in Q(sqrt5).
struct RectangleQ {
  int id = 0;
  Vec2q origin;
  Vec2q edge_u;  // unstable edge vector
  Vec2q edge_s;  // stable edge vector

  std::vector<Vec2q> vertices() const;  // counterclockwise

  /// (alpha, beta) coordinates of p in the (edge_u, edge_s) frame.
  Vec2q local_coordinates(const Vec2q& p) const;
  bool contains(const Vec2q& p, bool strict) const;
};

struct MarkovPartition {
  std::vector<RectangleQ> rectangles;
  Eigen::Matrix2i map;  // the model automorphism
  QS5 unstable_slope;   // (sqrt5 - 1)/2 for the shipped model
  QS5 stable_slope;     // -(sqrt5 + 1)/2
};

/// The standard two-rectangle partition for A = [[2,1],[1,1]], anchored at
/// the fixed point 0, with the Markov property verified exactly: every image
/// strip crosses its target over the full unstable extent and stays inside
/// its stable extent. Rejects non-hyperbolic or non-unimodular input; only
/// the shipped model matrix is constructed.
MarkovPartition adler_weiss_partition(const TorusAutomorphism& a = cat_map());

struct TransitionTag {
  int from = 0;
  int to = 0;
  Vec2i v = Vec2i::Zero();  // A(R_from) meets int(R_to + v)
  friend bool operator==(const TransitionTag& x, const TransitionTag& y) {
    return x.from == y.from && x.to == y.to && x.v == y.v;
  }
};

/// All (i, j, v) with A(R_i) . int(R_j + v) nonempty, by exact polygon
/// intersection. `map` defaults to the partition's automorphism; passing its
/// inverse computes the reversed relation.
std::vector<TransitionTag> transition_relation(const MarkovPartition& p);
std::vector<TransitionTag> transition_relation(const MarkovPartition& p, const Eigen::Matrix2i& map);

// A finite chain of lifted rectangles. The invariant content is the id
// sequence plus per-step integer tags; the k-th lifted rectangle is
// R_{ids[k]} + v_k where v_0 = start and v_{k+1} = A v_k + tags[k]. The
// absolute translates grow under A, so they are kept in exact big integers.
struct Chain {
  std::vector<int> ids;
  std::vector<Vec2i> tags;                  // size = ids.size() - 1
  std::array<BigInt, 2> start{BigInt(0), BigInt(0)};

  int length() const { return static_cast<int>(tags.size()); }
  bool closed_ids() const { return !ids.empty() && ids.front() == ids.back(); }

  std::vector<std::array<BigInt, 2>> absolute(const Eigen::Matrix2i& a) const;

  /// v_p computed from v_0 = 0; the realized periodic point solves
  /// (A^p - Id) x = v_p.
  std::array<BigInt, 2> loop_translation(const Eigen::Matrix2i& a) const;

  /// end minus start translate, the chain's declared displacement.
  std::array<BigInt, 2> displacement(const Eigen::Matrix2i& a) const;
};

/// Every consecutive pair lies in the transition relation.
bool chain_valid(const Chain& c, const std::vector<TransitionTag>& relation);

/// BFS over lifted rectangles from (from_id, from_v) to any integer translate
/// of to_id, length at most max_len.
Chain connecting_chain(const MarkovPartition& p, const std::vector<TransitionTag>& relation,
                       int from_id, const Vec2i& from_v, int to_id, int max_len);

/// Positive integers (l1, l2, l3) <= bound with l1 P1 + l2 P2 + l3 P3 = 0.
/// Requires (0,0) strictly inside the convex hull of the three vectors.
std::array<int, 3> solve_zero_sum(const std::array<Vec2i, 3>& vectors, int bound = 64);

struct ClosedChainResult {
  Chain chain;
  std::array<int, 3> multipliers{1, 1, 1};
  Vec2i declared_total = Vec2i::Zero();  // n * sum l_i P_i, zero by construction
};

/// Concatenate n*l_i tag-level copies of each c_i (all from the same base
/// rectangle to one of its translates) into one closed chain of length
/// n (l1 k1 + l2 k2 + l3 k3).
ClosedChainResult build_closed_chain(const MarkovPartition& p, const Chain& c1, const Chain& c2,
                                     const Chain& c3, int n);

struct PeriodicPointRecord {
  Rational x, y;          // exact coordinates, reduced mod Z^2
  int period = 0;
  std::array<BigInt, 2> loop_translation{BigInt(0), BigInt(0)};
  bool interior = true;   // itinerary realized through rectangle interiors
};

/// Solve (A^p - Id) x = v_p exactly, reduce mod Z^2, and verify the itinerary
/// rectangle by rectangle (closed rectangles; boundary contact clears the
/// interior flag, true violations raise itinerary-mismatch).
PeriodicPointRecord periodic_from_closed_chain(const MarkovPartition& p, const Chain& chain);

// ---- triangle machinery (runs on double-shear data) ------------------------

struct TriangleTrack {
  std::array<Vec2, 3> vertices;
  std::array<double, 3> leg_ends;  // cumulative times of the three affine legs
  double period = 0.0;

  Vec2 at(double t) const;
  const std::array<Vec2, 3>& corners() const { return vertices; }
};

/// Triangle Conv(y, y + n l1 P1, y + n(l1 P1 + l2 P2)) parametrized affinely
/// over legs of durations n l1 k1, n l2 k2, n l3 k3.
TriangleTrack make_triangle_track(const Vec2& y, const Vec2& p1, const Vec2& p2,
                                  const std::array<int, 3>& ell, const std::array<int, 3>& k, int n);

struct ShadowReport {
  double max_distance = 0.0;  // D = max over samples of dist(orbit(t), tau(t))
};

ShadowReport triangle_shadow_check(const SampledCurve& orbit, const TriangleTrack& track);

/// Distance from a point to the triangle boundary: the clearance an interior
/// orbit keeps over the shadowing constant D.
double triangle_boundary_clearance(const TriangleTrack& track, const Vec2& point);

/// Linking of a constant interior point against the triangle parametrization
/// over one period: +-1/period.
double triangle_linking_check(const TriangleTrack& track, const Vec2& interior);

// ---- serialization ----------------------------------------------------------

/// One "id:vx,vy" line per lifted rectangle (absolute translates).
void write_chain_text(std::ostream& os, const MarkovPartition& p, const Chain& chain);
void write_partition_svg(std::ostream& os, const MarkovPartition& p);

}  // namespace torsionlab

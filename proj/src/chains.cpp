#include "torsionlab/chains.hpp"

#include "torsionlab/geometry.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <ostream>
#include <sstream>

namespace torsionlab {

namespace {

using BigVec = std::array<BigInt, 2>;
using BigMat = std::array<std::array<BigInt, 2>, 2>;

BigMat to_big(const Eigen::Matrix2i& a) {
  return {{{BigInt(a(0, 0)), BigInt(a(0, 1))}, {BigInt(a(1, 0)), BigInt(a(1, 1))}}};
}

BigVec mul(const BigMat& m, const BigVec& v) {
  return {m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1]};
}

BigMat mul(const BigMat& a, const BigMat& b) {
  BigMat r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
  return r;
}

BigMat matrix_power(const Eigen::Matrix2i& a, int p) {
  BigMat r = {{{BigInt(1), BigInt(0)}, {BigInt(0), BigInt(1)}}};
  BigMat base = to_big(a);
  for (int i = 0; i < p; ++i) r = mul(base, r);
  return r;
}

Vec2q transform(const Eigen::Matrix2i& a, const Vec2q& v) {
  return {QS5(a(0, 0)) * v.x + QS5(a(0, 1)) * v.y, QS5(a(1, 0)) * v.x + QS5(a(1, 1)) * v.y};
}

Vec2q from_int(const Vec2i& v) { return {QS5(v.x()), QS5(v.y())}; }

// Sutherland-Hodgman clip of a convex CCW polygon against a convex CCW clip
// region, all in exact field arithmetic.
std::vector<Vec2q> clip_convex(std::vector<Vec2q> subject, const std::vector<Vec2q>& clip) {
  for (std::size_t e = 0; e < clip.size() && !subject.empty(); ++e) {
    const Vec2q& a = clip[e];
    const Vec2q& b = clip[(e + 1) % clip.size()];
    const Vec2q edge = b - a;
    std::vector<Vec2q> out;
    out.reserve(subject.size() + 2);
    for (std::size_t i = 0; i < subject.size(); ++i) {
      const Vec2q& p = subject[i];
      const Vec2q& q = subject[(i + 1) % subject.size()];
      const int sp = cross_q(edge, p - a).sign();
      const int sq = cross_q(edge, q - a).sign();
      if (sp >= 0) out.push_back(p);
      if ((sp > 0 && sq < 0) || (sp < 0 && sq > 0)) {
        const QS5 t = cross_q(edge, a - p) / cross_q(edge, q - p);
        out.push_back(p + t * (q - p));
      }
    }
    subject = std::move(out);
  }
  return subject;
}

QS5 polygon_area_q(const std::vector<Vec2q>& poly) {
  QS5 s(0);
  for (std::size_t i = 0; i < poly.size(); ++i)
    s += cross_q(poly[i], poly[(i + 1) % poly.size()]);
  return s / QS5(2);
}

struct RangeQ {
  QS5 lo, hi;
};

RangeQ coordinate_range(const std::vector<Vec2q>& poly, bool use_x) {
  RangeQ r{use_x ? poly[0].x : poly[0].y, use_x ? poly[0].x : poly[0].y};
  for (const Vec2q& v : poly) {
    const QS5& c = use_x ? v.x : v.y;
    r.lo = min(r.lo, c);
    r.hi = max(r.hi, c);
  }
  return r;
}

long floor_q(const QS5& q) {
  long k = static_cast<long>(std::floor(q.to_double()));
  while (QS5(Rational(k + 1)) <= q) ++k;
  while (QS5(Rational(k)) > q) --k;
  return k;
}

}  // namespace

// ---- rectangles -------------------------------------------------------------

std::vector<Vec2q> RectangleQ::vertices() const {
  std::vector<Vec2q> v{origin, origin + edge_u, origin + edge_u + edge_s, origin + edge_s};
  if (cross_q(edge_u, edge_s).sign() < 0) std::reverse(v.begin(), v.end());
  return v;
}

Vec2q RectangleQ::local_coordinates(const Vec2q& p) const {
  Mat2q m{edge_u.x, edge_s.x, edge_u.y, edge_s.y};
  return m.solve(p - origin);
}

bool RectangleQ::contains(const Vec2q& p, bool strict) const {
  const Vec2q ab = local_coordinates(p);
  const QS5 zero(0), one(1);
  if (strict) return ab.x > zero && ab.x < one && ab.y > zero && ab.y < one;
  return ab.x >= zero && ab.x <= one && ab.y >= zero && ab.y <= one;
}

// ---- partition --------------------------------------------------------------

MarkovPartition adler_weiss_partition(const TorusAutomorphism& a) {
  if (!a.unimodular() || !a.hyperbolic())
    throw UsageError("adler_weiss_partition: matrix must be unimodular with |trace| > 2");
  Eigen::Matrix2i expected;
  expected << 2, 1, 1, 1;
  if (a.m != expected)
    throw UsageError(
        "adler_weiss_partition: only the shipped model [[2,1],[1,1]] has a constructed partition");

  MarkovPartition part;
  part.map = a.m;
  part.unstable_slope = QS5::golden_inv();           // (sqrt5-1)/2
  part.stable_slope = -QS5::golden();                // -(sqrt5+1)/2
  const Vec2q u{QS5(1), part.unstable_slope};        // eigenvector, eigenvalue (3+sqrt5)/2
  const Vec2q s{QS5(1), part.stable_slope};          // eigenvector, eigenvalue (3-sqrt5)/2

  // Unstable/stable extents of the two tiles; their union is a fundamental
  // domain of Z^2 (the plane tiling is the two-squares pattern in the
  // orthogonal eigenframe).
  const QS5 c2(Rational(1, 2), Rational(1, 10));    // (5+sqrt5)/10
  const QS5 cs(Rational(0), Rational(1, 5));        // 1/sqrt5
  const QS5 s2(Rational(1, 2), Rational(-1, 10));   // (5-sqrt5)/10

  RectangleQ r1;
  r1.id = 0;
  r1.origin = Vec2q{QS5(0), QS5(0)};
  r1.edge_u = c2 * u;
  r1.edge_s = cs * s;
  RectangleQ r2;
  r2.id = 1;
  r2.origin = c2 * u;
  r2.edge_u = cs * u;
  r2.edge_s = s2 * s;
  part.rectangles = {r1, r2};

  // eigenvector sanity, exact
  const QS5 lambda(Rational(3, 2), Rational(1, 2));
  if (!(transform(part.map, u) == lambda * u))
    throw VerificationError("adler_weiss_partition: eigenvector check failed");

  // exact tiling checks: total area 1, interiors of lattice translates disjoint
  QS5 total = polygon_area_q(r1.vertices()) + polygon_area_q(r2.vertices());
  if (!(total == QS5(1))) throw VerificationError("adler_weiss_partition: tile areas do not sum to 1");
  for (const RectangleQ& ri : part.rectangles)
    for (const RectangleQ& rj : part.rectangles)
      for (int vx = -2; vx <= 2; ++vx)
        for (int vy = -2; vy <= 2; ++vy) {
          if (ri.id == rj.id && vx == 0 && vy == 0) continue;
          std::vector<Vec2q> shifted = rj.vertices();
          for (Vec2q& w : shifted) w = w + from_int(Vec2i(vx, vy));
          const auto inter = clip_convex(ri.vertices(), shifted);
          if (!inter.empty() && polygon_area_q(inter).sign() != 0)
            throw VerificationError("adler_weiss_partition: tile interiors overlap");
        }

  // Markov property: every image strip spans the full unstable extent of its
  // target and its stable extent stays inside. Exact, so the 1e-9 numeric
  // requirement is met with zero slack.
  for (const TransitionTag& t : transition_relation(part)) {
    std::vector<Vec2q> img = part.rectangles[t.from].vertices();
    for (Vec2q& w : img) w = transform(part.map, w);
    std::vector<Vec2q> target = part.rectangles[t.to].vertices();
    for (Vec2q& w : target) w = w + from_int(t.v);
    const auto inter = clip_convex(img, target);
    if (inter.empty()) throw VerificationError("adler_weiss_partition: relation entry vanished");
    QS5 alo(1), ahi(0), blo(1), bhi(0);
    for (const Vec2q& w : inter) {
      const RectangleQ& rj = part.rectangles[t.to];
      const Vec2q ab = rj.local_coordinates(w - from_int(t.v));
      alo = min(alo, ab.x);
      ahi = max(ahi, ab.x);
      blo = min(blo, ab.y);
      bhi = max(bhi, ab.y);
    }
    if (!(alo == QS5(0)) || !(ahi == QS5(1)) || blo < QS5(0) || bhi > QS5(1))
      throw VerificationError("adler_weiss_partition: Markov property violated for a strip");
  }
  return part;
}

std::vector<TransitionTag> transition_relation(const MarkovPartition& p) {
  return transition_relation(p, p.map);
}

std::vector<TransitionTag> transition_relation(const MarkovPartition& p, const Eigen::Matrix2i& map) {
  std::vector<TransitionTag> rel;
  for (const RectangleQ& ri : p.rectangles) {
    std::vector<Vec2q> img = ri.vertices();
    for (Vec2q& w : img) w = transform(map, w);
    if (polygon_area_q(img).sign() < 0) std::reverse(img.begin(), img.end());
    const RangeQ ix = coordinate_range(img, true);
    const RangeQ iy = coordinate_range(img, false);
    for (const RectangleQ& rj : p.rectangles) {
      const RangeQ jx = coordinate_range(rj.vertices(), true);
      const RangeQ jy = coordinate_range(rj.vertices(), false);
      const long vx_lo = floor_q(ix.lo - jx.hi);
      const long vx_hi = floor_q(ix.hi - jx.lo) + 1;
      const long vy_lo = floor_q(iy.lo - jy.hi);
      const long vy_hi = floor_q(iy.hi - jy.lo) + 1;
      for (long vx = vx_lo; vx <= vx_hi; ++vx)
        for (long vy = vy_lo; vy <= vy_hi; ++vy) {
          std::vector<Vec2q> target = rj.vertices();
          const Vec2i v(static_cast<int>(vx), static_cast<int>(vy));
          for (Vec2q& w : target) w = w + from_int(v);
          const auto inter = clip_convex(img, target);
          if (!inter.empty() && polygon_area_q(inter).sign() > 0)
            rel.push_back(TransitionTag{ri.id, rj.id, v});
        }
    }
  }
  return rel;
}

// ---- chains -----------------------------------------------------------------

std::vector<BigVec> Chain::absolute(const Eigen::Matrix2i& a) const {
  const BigMat m = to_big(a);
  std::vector<BigVec> abs;
  abs.reserve(ids.size());
  abs.push_back(start);
  for (const Vec2i& w : tags) {
    BigVec next = mul(m, abs.back());
    next[0] += w.x();
    next[1] += w.y();
    abs.push_back(next);
  }
  return abs;
}

std::array<BigInt, 2> Chain::loop_translation(const Eigen::Matrix2i& a) const {
  const BigMat m = to_big(a);
  BigVec v{BigInt(0), BigInt(0)};
  for (const Vec2i& w : tags) {
    v = mul(m, v);
    v[0] += w.x();
    v[1] += w.y();
  }
  return v;
}

std::array<BigInt, 2> Chain::displacement(const Eigen::Matrix2i& a) const {
  const auto abs = absolute(a);
  return {abs.back()[0] - abs.front()[0], abs.back()[1] - abs.front()[1]};
}

bool chain_valid(const Chain& c, const std::vector<TransitionTag>& relation) {
  if (c.ids.size() != c.tags.size() + 1) return false;
  for (std::size_t k = 0; k < c.tags.size(); ++k) {
    const TransitionTag t{c.ids[k], c.ids[k + 1], c.tags[k]};
    if (std::find(relation.begin(), relation.end(), t) == relation.end()) return false;
  }
  return true;
}

Chain connecting_chain(const MarkovPartition& p, const std::vector<TransitionTag>& relation,
                       int from_id, const Vec2i& from_v, int to_id, int max_len) {
  if (from_id < 0 || from_id >= static_cast<int>(p.rectangles.size()) || to_id < 0 ||
      to_id >= static_cast<int>(p.rectangles.size()))
    throw UsageError("connecting_chain: rectangle id out of range");

  struct Node {
    int id;
    BigVec v;
    int parent;   // index into the exploration log
    Vec2i tag;    // tag used to reach this node
  };
  const BigMat m = to_big(p.map);
  std::vector<Node> log;
  std::deque<int> frontier;
  std::map<std::tuple<int, BigInt, BigInt>, bool> seen;
  std::vector<int> depth;

  log.push_back(Node{from_id, BigVec{BigInt(from_v.x()), BigInt(from_v.y())}, -1, Vec2i::Zero()});
  depth.push_back(0);
  seen[{from_id, log[0].v[0], log[0].v[1]}] = true;
  frontier.push_back(0);

  int goal = from_id == to_id ? 0 : -1;
  while (goal < 0 && !frontier.empty()) {
    const int cur = frontier.front();
    frontier.pop_front();
    if (depth[cur] >= max_len) continue;
    for (const TransitionTag& t : relation) {
      if (t.from != log[cur].id) continue;
      BigVec nv = mul(m, log[cur].v);
      nv[0] += t.v.x();
      nv[1] += t.v.y();
      const auto key = std::make_tuple(t.to, nv[0], nv[1]);
      if (seen.count(key)) continue;
      seen[key] = true;
      log.push_back(Node{t.to, nv, cur, t.v});
      depth.push_back(depth[cur] + 1);
      if (t.to == to_id) {
        goal = static_cast<int>(log.size()) - 1;
        break;
      }
      frontier.push_back(static_cast<int>(log.size()) - 1);
    }
  }
  if (goal < 0)
    throw NotFoundError("connecting_chain: no chain of length <= " + std::to_string(max_len) +
                        " reaches a translate of rectangle " + std::to_string(to_id));

  Chain c;
  std::vector<int> path;
  for (int i = goal; i >= 0; i = log[i].parent) path.push_back(i);
  std::reverse(path.begin(), path.end());
  c.start = {BigInt(from_v.x()), BigInt(from_v.y())};
  for (std::size_t k = 0; k < path.size(); ++k) {
    c.ids.push_back(log[path[k]].id);
    if (k > 0) c.tags.push_back(log[path[k]].tag);
  }
  return c;
}

std::array<int, 3> solve_zero_sum(const std::array<Vec2i, 3>& vectors, int bound) {
  // (0,0) strictly inside the hull of the three vectors
  const Vec2i& p1 = vectors[0];
  const Vec2i& p2 = vectors[1];
  const Vec2i& p3 = vectors[2];
  auto crossi = [](const Vec2i& u, const Vec2i& v) {
    return static_cast<long>(u.x()) * v.y() - static_cast<long>(u.y()) * v.x();
  };
  const long d1 = crossi(p2 - p1, -p1);
  const long d2 = crossi(p3 - p2, -p2);
  const long d3 = crossi(p1 - p3, -p3);
  const bool inside = (d1 > 0 && d2 > 0 && d3 > 0) || (d1 < 0 && d2 < 0 && d3 < 0);
  if (!inside)
    throw HullConditionError(
        "solve_zero_sum: (0,0) is not interior to the convex hull of the three vectors");

  for (int l1 = 1; l1 <= bound; ++l1)
    for (int l2 = 1; l2 <= bound; ++l2) {
      const long rx = -(static_cast<long>(l1) * p1.x() + static_cast<long>(l2) * p2.x());
      const long ry = -(static_cast<long>(l1) * p1.y() + static_cast<long>(l2) * p2.y());
      long l3 = 0;
      if (p3.x() != 0) {
        if (rx % p3.x() != 0) continue;
        l3 = rx / p3.x();
        if (static_cast<long>(l3) * p3.y() != ry) continue;
      } else if (p3.y() != 0) {
        if (rx != 0 || ry % p3.y() != 0) continue;
        l3 = ry / p3.y();
      } else {
        continue;
      }
      if (l3 >= 1 && l3 <= bound) return {l1, l2, static_cast<int>(l3)};
    }
  throw NoIntegerSolutionError("solve_zero_sum: no positive multipliers <= " + std::to_string(bound));
}

ClosedChainResult build_closed_chain(const MarkovPartition& p, const Chain& c1, const Chain& c2,
                                     const Chain& c3, int n) {
  if (n < 1) throw UsageError("build_closed_chain: n must be >= 1");
  const std::array<const Chain*, 3> cs{&c1, &c2, &c3};
  std::array<Vec2i, 3> disp;
  for (int i = 0; i < 3; ++i) {
    const Chain& c = *cs[i];
    if (c.ids.empty() || !c.closed_ids())
      throw UsageError("build_closed_chain: each chain must run from the base rectangle to one of "
                       "its translates");
    if (c.ids.front() != c1.ids.front())
      throw UsageError("build_closed_chain: all chains must share the base rectangle");
    const auto d = c.displacement(p.map);
    disp[i] = Vec2i(static_cast<int>(d[0].convert_to<long>()), static_cast<int>(d[1].convert_to<long>()));
  }
  const std::array<int, 3> ell = solve_zero_sum(disp);

  ClosedChainResult out;
  out.multipliers = ell;
  out.declared_total = Vec2i::Zero();  // n * (l1 P1 + l2 P2 + l3 P3) = 0 by the solver
  Chain& g = out.chain;
  g.start = {BigInt(0), BigInt(0)};
  g.ids.push_back(c1.ids.front());
  for (int i = 0; i < 3; ++i) {
    const Chain& c = *cs[i];
    for (int rep = 0; rep < n * ell[i]; ++rep)
      for (std::size_t k = 0; k < c.tags.size(); ++k) {
        g.tags.push_back(c.tags[k]);
        g.ids.push_back(c.ids[k + 1]);
      }
  }
  return out;
}

PeriodicPointRecord periodic_from_closed_chain(const MarkovPartition& p, const Chain& chain) {
  if (!chain.closed_ids())
    throw UsageError("periodic_from_closed_chain: chain must start and end at the same rectangle");
  const int period = chain.length();
  if (period < 1) throw UsageError("periodic_from_closed_chain: empty chain");

  const BigMat ap = matrix_power(p.map, period);
  const BigVec v = chain.loop_translation(p.map);

  // (A^p - Id) x = v, solved exactly by Cramer's rule
  const BigInt a00 = ap[0][0] - 1, a01 = ap[0][1], a10 = ap[1][0], a11 = ap[1][1] - 1;
  const BigInt det = a00 * a11 - a01 * a10;
  if (det == 0) throw NumericError("periodic_from_closed_chain: A^p - Id is singular");
  const BigInt num_x = v[0] * a11 - a01 * v[1];
  const BigInt num_y = a00 * v[1] - v[0] * a10;
  Rational x = Rational(num_x) / Rational(det);
  Rational y = Rational(num_y) / Rational(det);

  // verify the (unreduced) itinerary through closed rectangles, exactly;
  // translates are taken from the v_0 = 0 realization that v solves
  Chain rebased = chain;
  rebased.start = {BigInt(0), BigInt(0)};
  const auto abs = rebased.absolute(p.map);
  bool interior = true;
  Rational cx = x, cy = y;
  for (int k = 0; k <= period; ++k) {
    const Vec2q pt{QS5(cx - Rational(abs[k][0])), QS5(cy - Rational(abs[k][1]))};
    const RectangleQ& rect = p.rectangles[chain.ids[static_cast<std::size_t>(k)]];
    if (!rect.contains(pt, false))
      throw ItineraryMismatchError("periodic_from_closed_chain: step " + std::to_string(k) +
                                   " leaves its rectangle (boundary convention violated)");
    if (!rect.contains(pt, true)) interior = false;
    if (k < period) {
      const Rational nx = p.map(0, 0) * cx + p.map(0, 1) * cy;
      const Rational ny = p.map(1, 0) * cx + p.map(1, 1) * cy;
      cx = nx;
      cy = ny;
    }
  }

  PeriodicPointRecord rec;
  auto reduce = [](const Rational& r) {
    const BigInt num = boost::multiprecision::numerator(r);
    const BigInt den = boost::multiprecision::denominator(r);
    BigInt fl = num / den;
    if (r < Rational(fl)) fl -= 1;  // floor for negatives
    return r - Rational(fl);
  };
  rec.x = reduce(x);
  rec.y = reduce(y);
  rec.period = period;
  rec.loop_translation = v;
  rec.interior = interior;
  return rec;
}

// ---- triangles ---------------------------------------------------------------

Vec2 TriangleTrack::at(double t) const {
  t = std::fmod(t, period);
  if (t < 0.0) t += period;
  double seg_start = 0.0;
  for (int leg = 0; leg < 3; ++leg) {
    const double seg_end = leg_ends[static_cast<std::size_t>(leg)];
    if (t <= seg_end || leg == 2) {
      const Vec2& a = vertices[static_cast<std::size_t>(leg)];
      const Vec2& b = vertices[static_cast<std::size_t>((leg + 1) % 3)];
      const double span = seg_end - seg_start;
      const double u = span > 0.0 ? (t - seg_start) / span : 0.0;
      return a + u * (b - a);
    }
    seg_start = seg_end;
  }
  return vertices[0];
}

TriangleTrack make_triangle_track(const Vec2& y, const Vec2& p1, const Vec2& p2,
                                  const std::array<int, 3>& ell, const std::array<int, 3>& k, int n) {
  TriangleTrack t;
  t.vertices[0] = y;
  t.vertices[1] = y + static_cast<double>(n * ell[0]) * p1;
  t.vertices[2] = t.vertices[1] + static_cast<double>(n * ell[1]) * p2;
  t.leg_ends[0] = static_cast<double>(n * ell[0] * k[0]);
  t.leg_ends[1] = t.leg_ends[0] + static_cast<double>(n * ell[1] * k[1]);
  t.leg_ends[2] = t.leg_ends[1] + static_cast<double>(n * ell[2] * k[2]);
  t.period = t.leg_ends[2];
  return t;
}

ShadowReport triangle_shadow_check(const SampledCurve& orbit, const TriangleTrack& track) {
  orbit.validate();
  ShadowReport rep;
  for (std::size_t i = 0; i < orbit.size(); ++i)
    rep.max_distance = std::max(rep.max_distance, (orbit.points[i] - track.at(orbit.times[i])).norm());
  return rep;
}

double triangle_boundary_clearance(const TriangleTrack& track, const Vec2& point) {
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 3; ++i)
    best = std::min(best, segment_distance(point, track.vertices[static_cast<std::size_t>(i)],
                                           track.vertices[static_cast<std::size_t>((i + 1) % 3)]));
  return best;
}

double triangle_linking_check(const TriangleTrack& track, const Vec2& interior) {
  // strict interiority
  const Vec2& a = track.vertices[0];
  const Vec2& b = track.vertices[1];
  const Vec2& c = track.vertices[2];
  const double orient = cross2(b - a, c - a);
  const double s1 = cross2(b - a, interior - a);
  const double s2 = cross2(c - b, interior - b);
  const double s3 = cross2(a - c, interior - c);
  const bool inside = orient > 0 ? (s1 > 0 && s2 > 0 && s3 > 0) : (s1 < 0 && s2 < 0 && s3 < 0);
  if (!inside) throw UsageError("triangle_linking_check: point is not strictly interior");

  int samples_per_leg = 64;
  double prev = std::numeric_limits<double>::quiet_NaN();
  for (int round = 0; round < 12; ++round) {
    SampledCurve tau, cst;
    const int total = 3 * samples_per_leg;
    for (int i = 0; i <= total; ++i) {
      const double t = track.period * static_cast<double>(i) / static_cast<double>(total);
      tau.times.push_back(t);
      tau.points.push_back(track.at(t));
      cst.times.push_back(t);
      cst.points.push_back(interior);
    }
    try {
      const double value = linking_curves(cst, tau, track.period).value;
      if (std::isfinite(prev) && std::abs(value - prev) < 1e-12) return value;
      prev = value;
    } catch (const GapTooLargeError&) {
      // densify and retry
    }
    samples_per_leg *= 2;
  }
  if (std::isfinite(prev)) return prev;
  throw RefinementExhaustedError("triangle_linking_check: sampling did not stabilize");
}

// ---- serialization ------------------------------------------------------------

void write_chain_text(std::ostream& os, const MarkovPartition& p, const Chain& chain) {
  const auto abs = chain.absolute(p.map);
  for (std::size_t k = 0; k < chain.ids.size(); ++k)
    os << chain.ids[k] << ":" << abs[k][0].str() << "," << abs[k][1].str() << "\n";
}

void write_partition_svg(std::ostream& os, const MarkovPartition& p) {
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"-0.2 -1.0 2.0 2.0\" "
        "width=\"480\" height=\"480\">\n";
  const char* fills[] = {"#7aa6c2", "#c2a67a"};
  for (const RectangleQ& r : p.rectangles) {
    os << "  <polygon points=\"";
    for (const Vec2q& v : r.vertices()) {
      const Vec2 d = v.to_double();
      os << d.x() << "," << -d.y() << " ";
    }
    os << "\" fill=\"" << fills[r.id % 2] << "\" stroke=\"black\" stroke-width=\"0.004\"/>\n";
  }
  os << "</svg>\n";
}

}  // namespace torsionlab

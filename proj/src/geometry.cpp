#include "torsionlab/geometry.hpp"

#include <algorithm>

namespace torsionlab {

std::vector<Vec2> convex_hull(std::vector<Vec2> pts) {
  if (pts.empty()) throw UsageError("convex_hull: empty input");
  std::sort(pts.begin(), pts.end(), [](const Vec2& a, const Vec2& b) {
    return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const Vec2& a, const Vec2& b) { return a.x() == b.x() && a.y() == b.y(); }),
            pts.end());
  const std::size_t n = pts.size();
  if (n <= 2) return pts;

  std::vector<Vec2> hull(2 * n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {  // lower
    while (k >= 2 && cross2(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  const std::size_t lower = k + 1;
  for (std::size_t i = n - 1; i-- > 0;) {  // upper
    while (k >= lower && cross2(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  if (hull.empty()) hull.push_back(pts.front());  // all points collinear-degenerate fallback
  return hull;
}

double polygon_area(const std::vector<Vec2>& poly) {
  double s = 0.0;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& a = poly[i];
    const Vec2& b = poly[(i + 1) % n];
    s += cross2(a, b);
  }
  return 0.5 * s;
}

double segment_distance(const Vec2& p, const Vec2& a, const Vec2& b) {
  const Vec2 ab = b - a;
  const double len2 = ab.squaredNorm();
  if (len2 == 0.0) return (p - a).norm();
  const double t = std::clamp((p - a).dot(ab) / len2, 0.0, 1.0);
  return (p - (a + t * ab)).norm();
}

double distance_to_convex(const Vec2& p, const std::vector<Vec2>& poly) {
  if (poly.empty()) throw UsageError("distance_to_convex: empty polygon");
  if (poly.size() == 1) return (p - poly[0]).norm();
  if (poly.size() == 2) return segment_distance(p, poly[0], poly[1]);
  bool inside = true;
  double best = std::numeric_limits<double>::infinity();
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& a = poly[i];
    const Vec2& b = poly[(i + 1) % n];
    if (cross2(b - a, p - a) < 0.0) inside = false;
    best = std::min(best, segment_distance(p, a, b));
  }
  return inside ? 0.0 : best;
}

bool inside_convex(const Vec2& p, const std::vector<Vec2>& poly, double margin) {
  if (poly.size() < 3) return false;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& a = poly[i];
    const Vec2& b = poly[(i + 1) % n];
    const Vec2 e = b - a;
    const double len = e.norm();
    if (len == 0.0) continue;
    if (cross2(e, p - a) / len < margin) return false;
  }
  return true;
}

double hausdorff_convex(const std::vector<Vec2>& a, const std::vector<Vec2>& b) {
  double h = 0.0;
  for (const Vec2& v : a) h = std::max(h, distance_to_convex(v, b));
  for (const Vec2& v : b) h = std::max(h, distance_to_convex(v, a));
  return h;
}

}  // namespace torsionlab

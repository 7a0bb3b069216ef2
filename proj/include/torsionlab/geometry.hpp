#pragma once

#include "torsionlab/common.hpp"

#include <vector>

namespace torsionlab {

/// Convex hull, counterclockwise, duplicates and collinear interior points
/// removed. Degenerate inputs yield a single point or a two-point segment.
std::vector<Vec2> convex_hull(std::vector<Vec2> points);

/// Signed area (positive for counterclockwise polygons).
double polygon_area(const std::vector<Vec2>& poly);

/// Distance from p to the segment [a, b].
double segment_distance(const Vec2& p, const Vec2& a, const Vec2& b);

/// Distance from p to the filled convex region (0 inside); handles the
/// degenerate point/segment cases.
double distance_to_convex(const Vec2& p, const std::vector<Vec2>& poly);

/// Strict interiority with a margin: p is inside and at least `margin` away
/// from every edge. Requires a CCW polygon with area > 0.
bool inside_convex(const Vec2& p, const std::vector<Vec2>& poly, double margin = 0.0);

/// Hausdorff distance between two filled convex regions.
double hausdorff_convex(const std::vector<Vec2>& a, const std::vector<Vec2>& b);

}  // namespace torsionlab

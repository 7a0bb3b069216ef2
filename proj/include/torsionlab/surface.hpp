#pragma once

#include "torsionlab/common.hpp"

namespace torsionlab {

// Surface models with trivial(ized) tangent bundle, all presented in plane
// ("cover") coordinates. The identification rule records which integer
// translations act: none for the plane and the open disc, the x-direction
// for the annulus R/Z x R, both directions for the torus R^2/Z^2.
enum class SurfaceKind { plane, disc, annulus, torus };

struct SurfaceModel {
  SurfaceKind kind = SurfaceKind::plane;

  static SurfaceModel plane() { return {SurfaceKind::plane}; }
  static SurfaceModel disc() { return {SurfaceKind::disc}; }
  static SurfaceModel annulus() { return {SurfaceKind::annulus}; }
  static SurfaceModel torus() { return {SurfaceKind::torus}; }

  bool translation_acts(const Vec2i& v) const {
    switch (kind) {
      case SurfaceKind::plane:
      case SurfaceKind::disc:
        return v == Vec2i(0, 0);
      case SurfaceKind::annulus:
        return v.y() == 0;
      case SurfaceKind::torus:
        return true;
    }
    return false;
  }

  bool contains(const Vec2& p) const {
    if (!std::isfinite(p.x()) || !std::isfinite(p.y())) return false;
    if (kind == SurfaceKind::disc) return p.squaredNorm() < 1.0;
    return true;
  }

  const char* name() const {
    switch (kind) {
      case SurfaceKind::plane: return "plane";
      case SurfaceKind::disc: return "disc";
      case SurfaceKind::annulus: return "annulus";
      case SurfaceKind::torus: return "torus";
    }
    return "?";
  }
};

/// Unit tangent vector: base point plus direction stored in turns mod 1.
struct UnitTangent {
  Vec2 base = Vec2::Zero();
  double direction_turns = 0.0;

  Vec2 vector() const { return unit_from_turns(direction_turns); }
  static UnitTangent from_vector(const Vec2& base, const Vec2& v) {
    return UnitTangent{base, angle_of(v)};
  }
};

}  // namespace torsionlab

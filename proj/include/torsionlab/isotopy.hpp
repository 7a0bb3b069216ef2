#pragma once

#include "torsionlab/common.hpp"
#include "torsionlab/profiles.hpp"
#include "torsionlab/surface.hpp"

#include <memory>
#include <string>
#include <vector>

namespace torsionlab {

// An isotopy (f_t), t in [0,1], joining the identity to a diffeomorphism f,
// evaluated in cover coordinates and extended to all t >= 0 by the rule
// f_t = f_{t - floor(t)} o f^{floor(t)}. Values are immutable after
// construction; every operation is a pure function of its inputs.
class Isotopy {
 public:
  class Impl {
   public:
    virtual ~Impl() = default;
    virtual SurfaceModel surface() const = 0;
    virtual bool area_preserving() const = 0;
    virtual std::string describe() const = 0;

    // Base-interval family, s in [0, 1].
    virtual Vec2 eval_base(double s, const Vec2& p) const = 0;
    virtual Mat2 jacobian_base(double s, const Vec2& p) const = 0;

    // Time-one map and its k-fold iterate. The default iterate loops the
    // time-one map; wrappers override it to keep iterate identities exact.
    virtual Vec2 time_one(const Vec2& p) const { return eval_base(1.0, p); }
    virtual Vec2 iterate(const Vec2& p, long k) const;
    virtual Mat2 jacobian_iterate(const Vec2& p, long k) const;
  };

  Isotopy() = default;
  explicit Isotopy(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

  bool valid() const { return static_cast<bool>(impl_); }
  SurfaceModel surface() const { return impl_->surface(); }
  bool area_preserving() const { return impl_->area_preserving(); }
  std::string describe() const { return impl_->describe(); }

  Vec2 eval_base(double s, const Vec2& p) const { return impl_->eval_base(s, p); }
  Mat2 jacobian_base(double s, const Vec2& p) const { return impl_->jacobian_base(s, p); }
  Vec2 time_one(const Vec2& p) const { return impl_->time_one(p); }
  Vec2 iterate(const Vec2& p, long k) const { return impl_->iterate(p, k); }
  Mat2 jacobian_iterate(const Vec2& p, long k) const { return impl_->jacobian_iterate(p, k); }

  /// f_t(p) for any finite t >= 0, in cover coordinates.
  Vec2 eval(double t, const Vec2& p) const;

  /// df_t at p, propagated through the extension rule.
  Mat2 jacobian(double t, const Vec2& p) const;

  /// (p, f(p), ..., f^n(p)) in cover coordinates, no reduction mod Z^2.
  std::vector<Vec2> orbit_lift(const Vec2& p, int n) const;

  const Impl& impl() const { return *impl_; }

 private:
  std::shared_ptr<const Impl> impl_;
};

// ---- map zoo ---------------------------------------------------------------

Isotopy identity_isotopy(SurfaceModel surface = SurfaceModel::plane());

/// f_t(p) = p + t v. On the torus/annulus this is the lift of a rigid rotation.
Isotopy translation_isotopy(const Vec2& v, SurfaceModel surface = SurfaceModel::plane());

/// Rigid rotation about `center` at omega0 turns per unit time.
Isotopy rotation_isotopy(const Vec2& center, double omega0_turns,
                         SurfaceModel surface = SurfaceModel::plane());

/// Linear isotopy f_t = [[1, rate*t], [0, 1]] on the plane.
Isotopy shear_isotopy(double rate = 1.0);

/// Double shear on the torus: horizontal shear by a*sin(2*pi*y) on [0,1/2],
/// then vertical shear by b*sin(2*pi*x) on [1/2,1]. Lifted to the plane.
Isotopy double_shear_isotopy(double a, double b);

enum class FlowRepresentation { closed_form, rk4_flow };

/// Radial Hamiltonian disc flow generated by X = 2 h'(r^2) (-y, x).
Isotopy radial_hamiltonian_isotopy(const HamiltonianProfile& profile,
                                   FlowRepresentation rep = FlowRepresentation::closed_form,
                                   double time_step = 1e-3);

/// Generic time-dependent vector-field flow with analytic spatial derivative,
/// integrated by the classical fixed-step 4th-order scheme (the variational
/// equation rides along with the same steps).
struct VectorField {
  std::function<Vec2(double t, const Vec2&)> value;
  std::function<Mat2(double t, const Vec2&)> derivative;
};
Isotopy flow_isotopy(VectorField field, SurfaceModel surface, double time_step = 1e-3,
                     bool area_preserving = false, std::string label = "flow");

/// Iterate-extension wrapper: the time-one map is f^q - v with v an integer
/// vector, the path is G_s = f_{q s} - s v. Orbits of the wrapper reuse the
/// orbit of f, so rotation-vector identities for iterates hold to rounding.
Isotopy iterate_extension_isotopy(const Isotopy& f, int q, const Vec2i& v);

/// Conjugation by the reflection diag(1, -1); negates torsion and linking.
Isotopy reflect_isotopy(const Isotopy& f);

/// Concatenation: parts run in order, each on an equal sub-interval of [0,1].
Isotopy concatenate_isotopies(std::vector<Isotopy> parts);

// Plain linear torus automorphism (not an isotopy); ships for the chains
// module. Entries are integers with |det| = 1.
struct TorusAutomorphism {
  Eigen::Matrix2i m;
  bool unimodular() const { return std::abs(m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0)) == 1; }
  bool hyperbolic() const { return unimodular() && std::abs(m(0, 0) + m(1, 1)) > 2; }
};

inline TorusAutomorphism cat_map() {
  TorusAutomorphism a;
  a.m << 2, 1, 1, 1;
  return a;
}

}  // namespace torsionlab

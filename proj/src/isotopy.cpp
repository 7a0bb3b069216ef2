#include "torsionlab/isotopy.hpp"

#include <sstream>
#include <utility>

namespace torsionlab {

namespace {

Mat2 rotation_matrix(double turns) {
  const double c = std::cos(kTwoPi * turns);
  const double s = std::sin(kTwoPi * turns);
  Mat2 r;
  r << c, -s, s, c;
  return r;
}

std::string fmt(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

}  // namespace

Vec2 Isotopy::Impl::iterate(const Vec2& p, long k) const {
  Vec2 q = p;
  for (long i = 0; i < k; ++i) q = time_one(q);
  return q;
}

Mat2 Isotopy::Impl::jacobian_iterate(const Vec2& p, long k) const {
  Mat2 m = Mat2::Identity();
  Vec2 q = p;
  for (long i = 0; i < k; ++i) {
    m = jacobian_base(1.0, q) * m;
    q = time_one(q);
  }
  return m;
}

Vec2 Isotopy::eval(double t, const Vec2& p) const {
  if (!(t >= 0.0) || !std::isfinite(t)) throw UsageError("isotopy eval: time must be finite and >= 0");
  const double m = std::floor(t);
  const Vec2 q = impl_->iterate(p, static_cast<long>(m));
  const double s = t - m;
  return s == 0.0 ? q : impl_->eval_base(s, q);
}

Mat2 Isotopy::jacobian(double t, const Vec2& p) const {
  if (!(t >= 0.0) || !std::isfinite(t)) throw UsageError("isotopy jacobian: time must be finite and >= 0");
  const double m = std::floor(t);
  const long k = static_cast<long>(m);
  const Mat2 cocycle = impl_->jacobian_iterate(p, k);
  const double s = t - m;
  if (s == 0.0) return cocycle;
  const Vec2 q = impl_->iterate(p, k);
  return impl_->jacobian_base(s, q) * cocycle;
}

std::vector<Vec2> Isotopy::orbit_lift(const Vec2& p, int n) const {
  if (n < 0) throw UsageError("orbit_lift: n must be >= 0");
  std::vector<Vec2> orbit;
  orbit.reserve(static_cast<std::size_t>(n) + 1);
  orbit.push_back(p);
  for (int i = 0; i < n; ++i) {
    // Route through iterate() so wrappers keep their exact bookkeeping.
    orbit.push_back(impl_->iterate(orbit.back(), 1));
    if (!surface().contains(orbit.back()) && surface().kind == SurfaceKind::disc)
      throw IntegrationError("orbit_lift: point left the disc at step " + std::to_string(i + 1),
                             static_cast<double>(i + 1));
  }
  return orbit;
}

// ---------------------------------------------------------------------------

namespace {

class IdentityImpl final : public Isotopy::Impl {
 public:
  explicit IdentityImpl(SurfaceModel s) : surface_(s) {}
  SurfaceModel surface() const override { return surface_; }
  bool area_preserving() const override { return true; }
  std::string describe() const override { return std::string("identity on ") + surface_.name(); }
  Vec2 eval_base(double, const Vec2& p) const override { return p; }
  Mat2 jacobian_base(double, const Vec2&) const override { return Mat2::Identity(); }
  Vec2 time_one(const Vec2& p) const override { return p; }

 private:
  SurfaceModel surface_;
};

class TranslationImpl final : public Isotopy::Impl {
 public:
  TranslationImpl(Vec2 v, SurfaceModel s) : v_(std::move(v)), surface_(s) {}
  SurfaceModel surface() const override { return surface_; }
  bool area_preserving() const override { return true; }
  std::string describe() const override {
    return "translation (" + fmt(v_.x()) + "," + fmt(v_.y()) + ") on " + surface_.name();
  }
  Vec2 eval_base(double s, const Vec2& p) const override { return p + s * v_; }
  Mat2 jacobian_base(double, const Vec2&) const override { return Mat2::Identity(); }
  Vec2 time_one(const Vec2& p) const override { return p + v_; }

 private:
  Vec2 v_;
  SurfaceModel surface_;
};

class RotationImpl final : public Isotopy::Impl {
 public:
  RotationImpl(Vec2 c, double omega, SurfaceModel s) : center_(std::move(c)), omega_(omega), surface_(s) {}
  SurfaceModel surface() const override { return surface_; }
  bool area_preserving() const override { return true; }
  std::string describe() const override {
    return "rotation about (" + fmt(center_.x()) + "," + fmt(center_.y()) + ") at " + fmt(omega_) +
           " turns/time";
  }
  Vec2 eval_base(double s, const Vec2& p) const override {
    return center_ + rotation_matrix(omega_ * s) * (p - center_);
  }
  Mat2 jacobian_base(double s, const Vec2&) const override { return rotation_matrix(omega_ * s); }
  // f^k is the rotation by k*omega; evaluating it directly keeps long orbits
  // free of compounding matrix products.
  Vec2 iterate(const Vec2& p, long k) const override {
    return center_ + rotation_matrix(omega_ * static_cast<double>(k)) * (p - center_);
  }
  Mat2 jacobian_iterate(const Vec2&, long k) const override {
    return rotation_matrix(omega_ * static_cast<double>(k));
  }

 private:
  Vec2 center_;
  double omega_;
  SurfaceModel surface_;
};

class ShearImpl final : public Isotopy::Impl {
 public:
  explicit ShearImpl(double rate) : rate_(rate) {}
  SurfaceModel surface() const override { return SurfaceModel::plane(); }
  bool area_preserving() const override { return true; }
  std::string describe() const override { return "linear shear rate " + fmt(rate_); }
  Vec2 eval_base(double s, const Vec2& p) const override {
    return Vec2(p.x() + rate_ * s * p.y(), p.y());
  }
  Mat2 jacobian_base(double s, const Vec2&) const override {
    Mat2 m;
    m << 1.0, rate_ * s, 0.0, 1.0;
    return m;
  }
  Vec2 iterate(const Vec2& p, long k) const override {
    return Vec2(p.x() + rate_ * static_cast<double>(k) * p.y(), p.y());
  }
  Mat2 jacobian_iterate(const Vec2&, long k) const override {
    Mat2 m;
    m << 1.0, rate_ * static_cast<double>(k), 0.0, 1.0;
    return m;
  }

 private:
  double rate_;
};

class DoubleShearImpl final : public Isotopy::Impl {
 public:
  DoubleShearImpl(double a, double b) : a_(a), b_(b) {}
  SurfaceModel surface() const override { return SurfaceModel::torus(); }
  bool area_preserving() const override { return true; }
  std::string describe() const override { return "double shear a=" + fmt(a_) + " b=" + fmt(b_); }

  Vec2 eval_base(double s, const Vec2& p) const override {
    if (s <= 0.5) {
      const double u = 2.0 * s;
      return Vec2(p.x() + u * a_ * std::sin(kTwoPi * p.y()), p.y());
    }
    const double u = 2.0 * s - 1.0;
    const Vec2 q(p.x() + a_ * std::sin(kTwoPi * p.y()), p.y());
    return Vec2(q.x(), q.y() + u * b_ * std::sin(kTwoPi * q.x()));
  }

  Mat2 jacobian_base(double s, const Vec2& p) const override {
    Mat2 m;
    if (s <= 0.5) {
      const double u = 2.0 * s;
      m << 1.0, u * a_ * kTwoPi * std::cos(kTwoPi * p.y()), 0.0, 1.0;
      return m;
    }
    const double u = 2.0 * s - 1.0;
    const double qx = p.x() + a_ * std::sin(kTwoPi * p.y());
    Mat2 h, v;
    h << 1.0, a_ * kTwoPi * std::cos(kTwoPi * p.y()), 0.0, 1.0;
    v << 1.0, 0.0, u * b_ * kTwoPi * std::cos(kTwoPi * qx), 1.0;
    return v * h;
  }

  Vec2 time_one(const Vec2& p) const override {
    const double qx = p.x() + a_ * std::sin(kTwoPi * p.y());
    return Vec2(qx, p.y() + b_ * std::sin(kTwoPi * qx));
  }

 private:
  double a_, b_;
};

// Exact twist map of the radial Hamiltonian flow: f_t(p) = R(t h'(r^2)/pi) p.
class RadialClosedFormImpl final : public Isotopy::Impl {
 public:
  explicit RadialClosedFormImpl(HamiltonianProfile profile) : profile_(std::move(profile)) {}
  SurfaceModel surface() const override { return SurfaceModel::disc(); }
  bool area_preserving() const override { return true; }
  std::string describe() const override {
    return "radial hamiltonian (" + profile_.describe() + ", closed form)";
  }

  Vec2 eval_base(double s, const Vec2& p) const override {
    const double r2 = p.squaredNorm();
    return rotation_matrix(s * profile_.dh(r2) / M_PI) * p;
  }

  Mat2 jacobian_base(double s, const Vec2& p) const override {
    const double r2 = p.squaredNorm();
    const Mat2 rot = rotation_matrix(s * profile_.dh(r2) / M_PI);
    // d/dp of R(theta(r^2)) p with theta = 2 s h'(r^2) radians:
    // R(theta) + 4 s h''(r^2) (J R p) p^T.
    Mat2 j;
    j << 0.0, -1.0, 1.0, 0.0;
    const Vec2 jrp = j * (rot * p);
    return rot + 4.0 * s * profile_.ddh(r2) * jrp * p.transpose();
  }

  Vec2 iterate(const Vec2& p, long k) const override {
    const double r2 = p.squaredNorm();
    return rotation_matrix(static_cast<double>(k) * profile_.dh(r2) / M_PI) * p;
  }

 private:
  HamiltonianProfile profile_;
};

// Classical fixed-step RK4 on the combined state (p, M): dp/dt = X_t(p),
// dM/dt = DX_t(p) M. The variational columns use the same steps as p.
class FlowImpl final : public Isotopy::Impl {
 public:
  FlowImpl(VectorField field, SurfaceModel s, double step, bool area, std::string label)
      : field_(std::move(field)), surface_(s), step_(step), area_(area), label_(std::move(label)) {
    if (!(step_ > 0.0)) throw UsageError("flow isotopy: time_step must be > 0");
  }
  SurfaceModel surface() const override { return surface_; }
  bool area_preserving() const override { return area_; }
  std::string describe() const override { return label_ + " (rk4, step " + fmt(step_) + ")"; }

  Vec2 eval_base(double s, const Vec2& p) const override {
    Vec2 q = p;
    integrate(0.0, s, q, nullptr);
    return q;
  }

  Mat2 jacobian_base(double s, const Vec2& p) const override {
    Vec2 q = p;
    Mat2 m = Mat2::Identity();
    integrate(0.0, s, q, &m);
    return m;
  }

 private:
  using State = std::pair<Vec2, Mat2>;

  void integrate(double t0, double t1, Vec2& p, Mat2* m) const {
    double t = t0;
    while (t < t1 - 1e-15) {
      const double h = std::min(step_, t1 - t);
      rk4_step(t, h, p, m);
      t += h;
      if (!std::isfinite(p.x()) || !std::isfinite(p.y()) || p.norm() > 1e12)
        throw IntegrationError("flow integration diverged at t=" + fmt(t), t);
      if (surface_.kind == SurfaceKind::disc && p.squaredNorm() >= 1.0)
        throw IntegrationError("flow left the disc at t=" + fmt(t), t);
    }
  }

  void rk4_step(double t, double h, Vec2& p, Mat2* m) const {
    const Vec2 k1 = field_.value(t, p);
    const Vec2 k2 = field_.value(t + 0.5 * h, p + 0.5 * h * k1);
    const Vec2 k3 = field_.value(t + 0.5 * h, p + 0.5 * h * k2);
    const Vec2 k4 = field_.value(t + h, p + h * k3);
    if (m) {
      const Mat2 d1 = field_.derivative(t, p) * (*m);
      const Mat2 d2 = field_.derivative(t + 0.5 * h, p + 0.5 * h * k1) * (*m + 0.5 * h * d1);
      const Mat2 d3 = field_.derivative(t + 0.5 * h, p + 0.5 * h * k2) * (*m + 0.5 * h * d2);
      const Mat2 d4 = field_.derivative(t + h, p + h * k3) * (*m + h * d3);
      *m += (h / 6.0) * (d1 + 2.0 * d2 + 2.0 * d3 + d4);
    }
    p += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }

  VectorField field_;
  SurfaceModel surface_;
  double step_;
  bool area_;
  std::string label_;
};

// G_s = f_{q s} - s v for s in [0,1]. iterate() reuses the orbit of f so that
// rho_n(G, z) = q rho_{q n}(f, z) - v holds to rounding, not to isotopy
// tolerance.
class IterateExtensionImpl final : public Isotopy::Impl {
 public:
  IterateExtensionImpl(Isotopy inner, int q, Vec2i v) : inner_(std::move(inner)), q_(q), v_(v) {
    if (q_ < 1) throw UsageError("iterate extension: q must be >= 1");
    if (!inner_.surface().translation_acts(v) && v != Vec2i(0, 0))
      throw UsageError("iterate extension: translation does not act on this surface");
  }
  SurfaceModel surface() const override { return inner_.surface(); }
  bool area_preserving() const override { return inner_.area_preserving(); }
  std::string describe() const override {
    return inner_.describe() + " ^" + std::to_string(q_) + " - (" + std::to_string(v_.x()) + "," +
           std::to_string(v_.y()) + ")";
  }

  Vec2 eval_base(double s, const Vec2& p) const override {
    return inner_.eval(static_cast<double>(q_) * s, p) - s * v_.cast<double>();
  }

  Mat2 jacobian_base(double s, const Vec2& p) const override {
    return inner_.jacobian(static_cast<double>(q_) * s, p);
  }

  Vec2 time_one(const Vec2& p) const override {
    return inner_.iterate(p, q_) - v_.cast<double>();
  }

  Vec2 iterate(const Vec2& p, long k) const override {
    return inner_.iterate(p, q_ * k) - static_cast<double>(k) * v_.cast<double>();
  }

  Mat2 jacobian_iterate(const Vec2& p, long k) const override {
    return inner_.jacobian_iterate(p, q_ * k);
  }

 private:
  Isotopy inner_;
  int q_;
  Vec2i v_;
};

class ReflectImpl final : public Isotopy::Impl {
 public:
  explicit ReflectImpl(Isotopy inner) : inner_(std::move(inner)) {}
  SurfaceModel surface() const override { return inner_.surface(); }
  bool area_preserving() const override { return inner_.area_preserving(); }
  std::string describe() const override { return "reflected " + inner_.describe(); }

  Vec2 eval_base(double s, const Vec2& p) const override { return mirror(inner_.eval_base(s, mirror(p))); }
  Mat2 jacobian_base(double s, const Vec2& p) const override {
    return kM * inner_.jacobian_base(s, mirror(p)) * kM;
  }
  Vec2 time_one(const Vec2& p) const override { return mirror(inner_.time_one(mirror(p))); }
  Vec2 iterate(const Vec2& p, long k) const override { return mirror(inner_.iterate(mirror(p), k)); }
  Mat2 jacobian_iterate(const Vec2& p, long k) const override {
    return kM * inner_.jacobian_iterate(mirror(p), k) * kM;
  }

 private:
  static Vec2 mirror(const Vec2& p) { return Vec2(p.x(), -p.y()); }
  static const Mat2 kM;
  Isotopy inner_;
};

const Mat2 ReflectImpl::kM = (Mat2() << 1.0, 0.0, 0.0, -1.0).finished();

class ConcatImpl final : public Isotopy::Impl {
 public:
  explicit ConcatImpl(std::vector<Isotopy> parts) : parts_(std::move(parts)) {
    if (parts_.empty()) throw UsageError("concatenation: need at least one part");
  }
  SurfaceModel surface() const override { return parts_.front().surface(); }
  bool area_preserving() const override {
    for (const auto& p : parts_)
      if (!p.area_preserving()) return false;
    return true;
  }
  std::string describe() const override {
    std::string s = "concat[";
    for (std::size_t i = 0; i < parts_.size(); ++i) s += (i ? "; " : "") + parts_[i].describe();
    return s + "]";
  }

  Vec2 eval_base(double s, const Vec2& p) const override {
    const auto [idx, local] = split(s);
    Vec2 q = p;
    for (std::size_t i = 0; i < idx; ++i) q = parts_[i].time_one(q);
    return parts_[idx].eval_base(local, q);
  }

  Mat2 jacobian_base(double s, const Vec2& p) const override {
    const auto [idx, local] = split(s);
    Vec2 q = p;
    Mat2 m = Mat2::Identity();
    for (std::size_t i = 0; i < idx; ++i) {
      m = parts_[i].jacobian_base(1.0, q) * m;
      q = parts_[i].time_one(q);
    }
    return parts_[idx].jacobian_base(local, q) * m;
  }

 private:
  std::pair<std::size_t, double> split(double s) const {
    const double k = static_cast<double>(parts_.size());
    std::size_t idx = std::min<std::size_t>(static_cast<std::size_t>(std::floor(s * k)), parts_.size() - 1);
    return {idx, s * k - static_cast<double>(idx)};
  }
  std::vector<Isotopy> parts_;
};

}  // namespace

Isotopy identity_isotopy(SurfaceModel surface) {
  return Isotopy(std::make_shared<IdentityImpl>(surface));
}

Isotopy translation_isotopy(const Vec2& v, SurfaceModel surface) {
  return Isotopy(std::make_shared<TranslationImpl>(v, surface));
}

Isotopy rotation_isotopy(const Vec2& center, double omega0_turns, SurfaceModel surface) {
  return Isotopy(std::make_shared<RotationImpl>(center, omega0_turns, surface));
}

Isotopy shear_isotopy(double rate) { return Isotopy(std::make_shared<ShearImpl>(rate)); }

Isotopy double_shear_isotopy(double a, double b) {
  return Isotopy(std::make_shared<DoubleShearImpl>(a, b));
}

Isotopy radial_hamiltonian_isotopy(const HamiltonianProfile& profile, FlowRepresentation rep,
                                   double time_step) {
  if (!profile.boundary_normalized())
    throw UsageError("radial hamiltonian: profile must satisfy h(1)=0 and h'(1)=0");
  if (rep == FlowRepresentation::closed_form)
    return Isotopy(std::make_shared<RadialClosedFormImpl>(profile));
  VectorField field;
  field.value = [profile](double, const Vec2& p) {
    const double d = 2.0 * profile.dh(p.squaredNorm());
    return Vec2(-d * p.y(), d * p.x());
  };
  field.derivative = [profile](double, const Vec2& p) {
    const double s = p.squaredNorm();
    const double d = 2.0 * profile.dh(s);
    const double dd = 4.0 * profile.ddh(s);
    Mat2 j;
    j << -dd * p.y() * p.x(), -d - dd * p.y() * p.y(),  //
        d + dd * p.x() * p.x(), dd * p.x() * p.y();
    return j;
  };
  return flow_isotopy(std::move(field), SurfaceModel::disc(), time_step, true,
                      "radial hamiltonian (" + profile.describe() + ")");
}

Isotopy flow_isotopy(VectorField field, SurfaceModel surface, double time_step, bool area_preserving,
                     std::string label) {
  return Isotopy(
      std::make_shared<FlowImpl>(std::move(field), surface, time_step, area_preserving, std::move(label)));
}

Isotopy iterate_extension_isotopy(const Isotopy& f, int q, const Vec2i& v) {
  return Isotopy(std::make_shared<IterateExtensionImpl>(f, q, v));
}

Isotopy reflect_isotopy(const Isotopy& f) { return Isotopy(std::make_shared<ReflectImpl>(f)); }

Isotopy concatenate_isotopies(std::vector<Isotopy> parts) {
  return Isotopy(std::make_shared<ConcatImpl>(std::move(parts)));
}

}  // namespace torsionlab

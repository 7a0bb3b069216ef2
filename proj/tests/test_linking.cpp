#include "torsionlab/linking.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <sstream>

using namespace torsionlab;

TEST_SUITE_BEGIN("linking");

TEST_CASE("rotation isotopy links every distinct pair at omega0") {
  const Isotopy rot = rotation_isotopy(Vec2::Zero(), 0.37);
  for (int n : {1, 10, 200})
    CHECK(linking_n(rot, Vec2(0.1, 0.1), Vec2(-0.4, 0.3), n) == doctest::Approx(0.37).epsilon(1e-12));
}

TEST_CASE("identity isotopy links nothing") {
  CHECK(linking_n(identity_isotopy(), Vec2(0, 0), Vec2(1, 0), 5) == 0.0);
}

TEST_CASE("radial cubic: linking of the origin with radius r is h'(r^2)/pi") {
  const Isotopy iso = radial_hamiltonian_isotopy(cubic_profile());
  for (double r : {0.3, 0.5, 0.8}) {
    const double expected = -3.0 * (1.0 - r * r) * (1.0 - r * r) / M_PI;
    CHECK(linking_n(iso, Vec2::Zero(), Vec2(r, 0.0), 1) == doctest::Approx(expected).epsilon(1e-6));
  }
  // flow representation agrees within the step-halving budget
  const Isotopy flow = radial_hamiltonian_isotopy(cubic_profile(), FlowRepresentation::rk4_flow);
  CHECK(linking_n(flow, Vec2::Zero(), Vec2(0.5, 0.0), 1) ==
        doctest::Approx(-3.0 * 0.5625 / M_PI).epsilon(1e-6));
}

TEST_CASE("linking_curves: winding of the unit circle around the origin") {
  SampledCurve alpha, beta;
  const int steps = 640;
  for (int i = 0; i <= steps; ++i) {
    const double t = 10.0 * i / steps;
    alpha.times.push_back(t);
    alpha.points.emplace_back(0.0, 0.0);
    beta.times.push_back(t);
    beta.points.push_back(unit_from_turns(t));
  }
  const LinkingEstimate est = linking_curves(alpha, beta, 10.0);
  CHECK(est.value == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(est.min_separation == doctest::Approx(1.0));
}

TEST_CASE("linking_curves: triangle boundary around an interior point is +-1 per period") {
  // constant interior point against a closed triangle parametrization of
  // period p gives +-1/p
  const double period = 5.0;
  SampledCurve alpha, beta;
  const std::array<Vec2, 3> tri{Vec2(0, 0), Vec2(3, 0), Vec2(0, 3)};
  const int steps = 900;
  for (int i = 0; i <= steps; ++i) {
    const double t = period * i / steps;
    const double leg = 3.0 * t / period;
    const int which = std::min(2, static_cast<int>(leg));
    const double u = leg - which;
    alpha.times.push_back(t);
    alpha.points.emplace_back(0.8, 0.8);
    beta.times.push_back(t);
    beta.points.push_back(tri[which] + u * (tri[(which + 1) % 3] - tri[which]));
  }
  const LinkingEstimate est = linking_curves(alpha, beta, period);
  CHECK(std::abs(est.value) == doctest::Approx(1.0 / period).epsilon(1e-9));
}

TEST_CASE("linking_curves agrees with linking_n on sampled double-shear orbits") {
  const Isotopy ds = double_shear_isotopy(1.0, 1.0);
  const Vec2 x(0.12, 0.56), y(0.43, 0.88);
  const double T = 50.0;
  const SampledCurve alpha = sample_orbit_curve(ds, x, T, 1.0 / 32.0);
  const SampledCurve beta = sample_orbit_curve(ds, y, T, 1.0 / 32.0);
  const double via_curves = linking_curves(alpha, beta, T).value;
  const double via_orbits = linking_n(ds, x, y, 50);
  CHECK(via_curves == doctest::Approx(via_orbits).epsilon(1e-8));
}

TEST_CASE("perturbation_bound_check: identical curves give zero difference") {
  const Isotopy rot = rotation_isotopy(Vec2::Zero(), 0.3);
  const SampledCurve a = sample_orbit_curve(rot, Vec2(0.2, 0.0), 10.0, 1.0 / 16.0);
  const SampledCurve b = sample_orbit_curve(rot, Vec2(0.6, 0.0), 10.0, 1.0 / 16.0);
  const PerturbationReport rep = perturbation_bound_check(a, b, a, b, 10.0);
  CHECK(rep.premise_ok);
  CHECK(rep.max_lifted_difference == 0.0);
  CHECK(rep.endpoint_difference == 0.0);
}

namespace {

SampledCurve perturb_radially(const SampledCurve& c, double magnitude, double freq_turns) {
  SampledCurve out = c;
  for (std::size_t i = 0; i < out.size(); ++i)
    out.points[i] += magnitude * unit_from_turns(freq_turns * out.times[i]);
  return out;
}

}  // namespace

TEST_CASE("perturbation_bound_check: rotation pair within d/2 stays in the half-turn window") {
  const Isotopy rot = rotation_isotopy(Vec2::Zero(), 0.3);
  for (double T : {10.0, 100.0}) {
    const SampledCurve a = sample_orbit_curve(rot, Vec2(0.2, 0.0), T, 1.0 / 16.0);
    const SampledCurve b = sample_orbit_curve(rot, Vec2(0.6, 0.0), T, 1.0 / 16.0);
    const double d = 0.4;  // constant separation of co-rotating circles
    const SampledCurve a2 = perturb_radially(a, d / 4.0, 0.11);
    const SampledCurve b2 = perturb_radially(b, d / 4.0, 0.07);
    const PerturbationReport rep = perturbation_bound_check(a, b, a2, b2, T);
    CHECK(rep.premise_ok);
    CHECK(rep.separation_min == doctest::Approx(d).epsilon(1e-9));
    CHECK(rep.max_lifted_difference <= 0.5 + 1e-12);
    CHECK(rep.endpoint_difference <= 1.0 / (2.0 * T) + 1e-12);
  }
}

TEST_CASE("perturbation_bound_check: violated premise is reported, nothing asserted") {
  const Isotopy rot = rotation_isotopy(Vec2::Zero(), 0.3);
  const SampledCurve a = sample_orbit_curve(rot, Vec2(0.2, 0.0), 10.0, 1.0 / 16.0);
  const SampledCurve b = sample_orbit_curve(rot, Vec2(0.6, 0.0), 10.0, 1.0 / 16.0);
  const SampledCurve a2 = perturb_radially(a, 0.4, 0.05);  // magnitude d, too large
  const PerturbationReport rep = perturbation_bound_check(a, b, a2, b, 10.0);
  CHECK(!rep.premise_ok);
}

TEST_CASE("property: linking is symmetric in the pair") {
  const Isotopy ds = double_shear_isotopy(1.0, 1.0);
  const double ab = linking_n(ds, Vec2(0.2, 0.3), Vec2(0.7, 0.9), 25);
  const double ba = linking_n(ds, Vec2(0.7, 0.9), Vec2(0.2, 0.3), 25);
  CHECK(ab == doctest::Approx(ba).epsilon(1e-12));
}

TEST_CASE("property: joint integer translation leaves linking unchanged on torus lifts") {
  // short horizon on the chaotic map: the translated trig arguments differ
  // at rounding level and the expansion rate amplifies that
  const Isotopy ds = double_shear_isotopy(1.0, 1.0);
  const Vec2 x(0.2, 0.3), y(0.7, 0.9), v(3.0, -2.0);
  CHECK(std::abs(linking_n(ds, x, y, 8) - linking_n(ds, x + v, y + v, 8)) < 1e-8);
  const Isotopy rigid = translation_isotopy(Vec2(0.3, 0.4), SurfaceModel::torus());
  CHECK(linking_n(rigid, x, y, 50) ==
        doctest::Approx(linking_n(rigid, x + v, y + v, 50)).epsilon(1e-10));
}

TEST_CASE("curve CSV round trip") {
  const Isotopy rot = rotation_isotopy(Vec2::Zero(), 0.25);
  const SampledCurve c = sample_orbit_curve(rot, Vec2(1.0, 0.0), 2.0, 0.125);
  std::stringstream ss;
  write_curve_csv(ss, c);
  const SampledCurve back = read_curve_csv(ss);
  REQUIRE(back.size() == c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    CHECK(back.times[i] == c.times[i]);
    CHECK((back.points[i] - c.points[i]).norm() == 0.0);
  }
}

TEST_CASE("mismatched sample grids are rejected") {
  SampledCurve a, b;
  a.times = {0.0, 1.0};
  a.points = {Vec2(0, 0), Vec2(0, 0)};
  b.times = {0.0, 0.5, 1.0};
  b.points = {Vec2(1, 0), Vec2(1, 0), Vec2(1, 0)};
  CHECK_THROWS_AS(linking_curves(a, b, 1.0), UsageError);
}

TEST_SUITE_END();

#include "torsionlab/config.hpp"
#include "torsionlab/isotopy.hpp"

#include "oracles.hpp"

#include <doctest.h>

using namespace torsionlab;

TEST_SUITE_BEGIN("maps");

namespace {

std::vector<Isotopy> zoo() {
  return {
      identity_isotopy(SurfaceModel::disc()),
      translation_isotopy(Vec2(0.3, -0.2)),
      rotation_isotopy(Vec2(0.1, 0.2), 0.37, SurfaceModel::plane()),
      shear_isotopy(1.0),
      double_shear_isotopy(0.7, 0.4),
      radial_hamiltonian_isotopy(cubic_profile()),
  };
}

std::vector<Vec2> sample_points(int count, std::uint64_t seed) {
  std::vector<Vec2> pts;
  for (int i = 0; i < count; ++i) {
    CounterRng rng(seed, i);
    pts.emplace_back(rng.next_in(-0.7, 0.7), rng.next_in(-0.7, 0.7));
  }
  return pts;
}

}  // namespace

TEST_CASE("eval: identity fixes points at all times") {
  const Isotopy id = identity_isotopy(SurfaceModel::disc());
  CHECK((id.eval(0.7, Vec2(0.3, 0.4)) - Vec2(0.3, 0.4)).norm() == 0.0);
}

TEST_CASE("eval: half-turn rotation sends (1,0) to (-1,0)") {
  const Isotopy rot = rotation_isotopy(Vec2::Zero(), 0.5);
  CHECK((rot.eval(1.0, Vec2(1.0, 0.0)) - Vec2(-1.0, 0.0)).norm() < 1e-15);
}

TEST_CASE("eval: double shear a=b=1/4 moves (1/4,0) to (1/4,1/4)") {
  const Isotopy ds = double_shear_isotopy(0.25, 0.25);
  CHECK((ds.eval(1.0, Vec2(0.25, 0.0)) - Vec2(0.25, 0.25)).norm() < 1e-15);
}

TEST_CASE("jacobian: identity and linear shear formulas") {
  const Isotopy id = identity_isotopy();
  CHECK((id.jacobian(0.4, Vec2(0.1, 0.2)) - Mat2::Identity()).norm() == 0.0);
  const Isotopy sh = shear_isotopy(1.0);
  Mat2 expected;
  expected << 1.0, 1.0, 0.0, 1.0;
  CHECK((sh.jacobian(1.0, Vec2(0.3, -0.4)) - expected).norm() == 0.0);
}

TEST_CASE("jacobian: double shear at (1/4,0) equals [[1,pi/2],[0,1]] and matches FD") {
  const Isotopy ds = double_shear_isotopy(0.25, 0.25);
  const Mat2 j = ds.jacobian(1.0, Vec2(0.25, 0.0));
  CHECK(j(0, 1) == doctest::Approx(M_PI / 2).epsilon(1e-12));
  CHECK(j(0, 0) == doctest::Approx(1.0));
  CHECK(j(1, 0) == doctest::Approx(0.0));
  CHECK(j(1, 1) == doctest::Approx(1.0));
  const Mat2 fd = oracle::fd_jacobian(ds, 1.0, Vec2(0.25, 0.0));
  CHECK((j - fd).norm() < 1e-5);
}

TEST_CASE("orbit_lift: translation and quarter rotation") {
  const Isotopy tr = translation_isotopy(Vec2(0.5, 0.0));
  const auto orbit = tr.orbit_lift(Vec2::Zero(), 2);
  REQUIRE(orbit.size() == 3);
  CHECK((orbit[1] - Vec2(0.5, 0.0)).norm() == 0.0);
  CHECK((orbit[2] - Vec2(1.0, 0.0)).norm() == 0.0);

  const Isotopy rot = rotation_isotopy(Vec2::Zero(), 0.25);
  const auto r = rot.orbit_lift(Vec2(1.0, 0.0), 1);
  CHECK((r[1] - Vec2(0.0, 1.0)).norm() < 1e-15);
}

TEST_CASE("orbit_lift: double shear matches the explicit re-composition oracle") {
  const Isotopy ds = double_shear_isotopy(1.0, 1.0);
  const auto orbit = ds.orbit_lift(Vec2(0.3, 0.7), 100);
  const auto expected = oracle::double_shear_orbit(1.0, 1.0, Vec2(0.3, 0.7), 100);
  REQUIRE(orbit.size() == expected.size());
  for (std::size_t i = 0; i < orbit.size(); ++i) CHECK((orbit[i] - expected[i]).norm() == 0.0);
}

TEST_CASE("invariant: f_0 is the identity on sampled points") {
  for (const Isotopy& iso : zoo())
    for (const Vec2& p : sample_points(20, 11)) {
      if (!iso.surface().contains(p)) continue;
      CHECK((iso.eval(0.0, p) - p).norm() < 1e-12);
      CHECK((iso.eval_base(0.0, p) - p).norm() < 1e-12);
    }
}

TEST_CASE("invariant: torus equivariance under integer translations") {
  const Isotopy ds = double_shear_isotopy(1.0, 0.6);
  for (const Vec2& p : sample_points(25, 23))
    for (const Vec2i v : {Vec2i(1, 0), Vec2i(0, 1), Vec2i(-2, 3)})
      for (double t : {0.3, 0.5, 0.8, 1.0, 2.7}) {
        const Vec2 lhs = ds.eval(t, p + v.cast<double>());
        const Vec2 rhs = ds.eval(t, p) + v.cast<double>();
        CHECK((lhs - rhs).norm() < 1e-10);
      }
}

TEST_CASE("invariant: annulus translation commutes in the periodic direction") {
  const Isotopy rigid = translation_isotopy(Vec2(0.37, 0.0), SurfaceModel::annulus());
  CHECK(rigid.surface().translation_acts(Vec2i(3, 0)));
  CHECK(!rigid.surface().translation_acts(Vec2i(0, 1)));
  for (const Vec2& p : sample_points(10, 5))
    CHECK((rigid.eval(1.7, p + Vec2(2, 0)) - rigid.eval(1.7, p) - Vec2(2, 0)).norm() < 1e-10);
}

TEST_CASE("invariant: area preservation of the flagged zoo") {
  for (const Isotopy& iso : zoo()) {
    if (!iso.area_preserving()) continue;
    for (const Vec2& p : sample_points(15, 37)) {
      if (!iso.surface().contains(p)) continue;
      for (double t : {0.4, 1.0, 1.9})
        CHECK(iso.jacobian(t, p).determinant() == doctest::Approx(1.0).epsilon(1e-8));
    }
  }
}

TEST_CASE("flow/closed-form agreement on the radial Hamiltonian") {
  const HamiltonianProfile h = cubic_profile();
  const Isotopy closed = radial_hamiltonian_isotopy(h);
  const Isotopy flow = radial_hamiltonian_isotopy(h, FlowRepresentation::rk4_flow, 1e-3);
  const Isotopy flow_half = radial_hamiltonian_isotopy(h, FlowRepresentation::rk4_flow, 5e-4);
  for (const Vec2& p : sample_points(8, 101)) {
    if (p.norm() >= 0.95) continue;
    for (double t : {0.5, 1.0}) {
      CHECK((closed.eval(t, p) - flow.eval(t, p)).norm() < 1e-8);
      CHECK((closed.eval(t, p) - flow_half.eval(t, p)).norm() < 1e-10);
    }
  }
}

TEST_CASE("jacobian agrees with central finite differences across the zoo") {
  for (const Isotopy& iso : zoo())
    for (const Vec2& p : sample_points(8, 53)) {
      if (!iso.surface().contains(p) || p.norm() > 0.8) continue;
      for (double t : {0.6, 1.3}) {
        const Mat2 j = iso.jacobian(t, p);
        const Mat2 fd = oracle::fd_jacobian(iso, t, p);
        CHECK((j - fd).norm() < 1e-5);
      }
    }
}

TEST_CASE("variational equation: flow jacobian matches finite differences") {
  const Isotopy flow = radial_hamiltonian_isotopy(cubic_profile(), FlowRepresentation::rk4_flow);
  const Vec2 p(0.4, 0.25);
  CHECK((flow.jacobian(1.0, p) - oracle::fd_jacobian(flow, 1.0, p)).norm() < 1e-5);
}

TEST_CASE("extension rule: eval at integer times equals iterates") {
  const Isotopy ds = double_shear_isotopy(0.9, 0.9);
  const Vec2 p(0.21, 0.43);
  CHECK((ds.eval(3.0, p) - ds.iterate(p, 3)).norm() == 0.0);
  // f_{2.5} = f_{0.5} o f^2
  const Vec2 direct = ds.eval(2.5, p);
  const Vec2 composed = ds.eval_base(0.5, ds.iterate(p, 2));
  CHECK((direct - composed).norm() == 0.0);
}

TEST_CASE("concatenation of the two sine shears reproduces the double shear") {
  const double a = 0.6, b = 0.8;
  VectorField horizontal{
      [a](double, const Vec2& p) { return Vec2(a * std::sin(kTwoPi * p.y()), 0.0); },
      [a](double, const Vec2& p) {
        Mat2 m;
        m << 0.0, a * kTwoPi * std::cos(kTwoPi * p.y()), 0.0, 0.0;
        return m;
      }};
  VectorField vertical{
      [b](double, const Vec2& p) { return Vec2(0.0, b * std::sin(kTwoPi * p.x())); },
      [b](double, const Vec2& p) {
        Mat2 m;
        m << 0.0, 0.0, b * kTwoPi * std::cos(kTwoPi * p.x()), 0.0;
        return m;
      }};
  const Isotopy concat = concatenate_isotopies(
      {flow_isotopy(horizontal, SurfaceModel::torus(), 1e-2, true, "h-shear"),
       flow_isotopy(vertical, SurfaceModel::torus(), 1e-2, true, "v-shear")});
  const Isotopy ds = double_shear_isotopy(a, b);
  for (const Vec2& p : sample_points(6, 77))
    for (double t : {0.25, 0.5, 0.75, 1.0})
      CHECK((concat.eval(t, p) - ds.eval(t, p)).norm() < 1e-12);
}

TEST_CASE("iterate extension wrapper: base path and endpoints") {
  const Isotopy ds = double_shear_isotopy(1.0, 1.0);
  const Isotopy g = iterate_extension_isotopy(ds, 2, Vec2i(1, 0));
  const Vec2 p(0.3, 0.7);
  CHECK((g.eval_base(0.0, p) - p).norm() == 0.0);
  CHECK((g.time_one(p) - (ds.iterate(p, 2) - Vec2(1, 0))).norm() == 0.0);
  CHECK((g.eval_base(0.5, p) - (ds.eval(1.0, p) - Vec2(0.5, 0.0))).norm() == 0.0);
}

TEST_CASE("negative time is rejected") {
  const Isotopy id = identity_isotopy();
  CHECK_THROWS_AS(id.eval(-0.5, Vec2::Zero()), UsageError);
}

TEST_CASE("flow integration failure reports the time") {
  VectorField runaway{[](double, const Vec2& p) { return Vec2(10.0 * p.x() + 1.0, 0.0); },
                      [](double, const Vec2&) {
                        Mat2 m;
                        m << 10.0, 0.0, 0.0, 0.0;
                        return m;
                      }};
  const Isotopy bad = flow_isotopy(runaway, SurfaceModel::disc(), 1e-2, false, "runaway");
  CHECK_THROWS_AS(bad.eval(1.0, Vec2(0.5, 0.0)), IntegrationError);
}

TEST_CASE("map config section builds the zoo") {
  const Isotopy ds = isotopy_from_section({{"kind", "double_shear"}, {"a", "1.0"}, {"b", "1.0"}});
  CHECK((ds.eval(1.0, Vec2(0.25, 0.0)) - Vec2(0.25, 1.0)).norm() < 1e-15);
  CHECK_THROWS_AS(isotopy_from_section({{"kind", "nope"}}), UsageError);
  CHECK_THROWS_AS(isotopy_from_section({}), UsageError);
  const Isotopy flow = isotopy_from_section({{"kind", "radial_hamiltonian"},
                                             {"representation", "rk4_flow"},
                                             {"time_step", "0.001"},
                                             {"lambda", "1.0"}});
  CHECK(flow.area_preserving());
}

TEST_SUITE_END();

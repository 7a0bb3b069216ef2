#include "torsionlab/runner.hpp"

#include "torsionlab/action.hpp"
#include "torsionlab/artifacts.hpp"
#include "torsionlab/chains.hpp"
#include "torsionlab/rotset.hpp"
#include "torsionlab/witness.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

namespace torsionlab {

namespace {

std::string fd(double v) { return format_double(v); }

void write_certificate(ArtifactWriter& w, const WitnessCertificate& cert) {
  w.csv_header("xx,xy,yx,yy,n,epsilon,s0,zx,zy,torsion,bound");
  w.csv_row({fd(cert.x.x()), fd(cert.x.y()), fd(cert.y.x()), fd(cert.y.y()),
             std::to_string(cert.n), fd(cert.epsilon), fd(cert.s0), fd(cert.z.x()), fd(cert.z.y()),
             fd(cert.torsion_value), fd(cert.bound)});
}

struct Ctx {
  const ExperimentConfig& cfg;
  std::string dir;
  std::ostream& log;
  RunResult& result;

  ArtifactWriter writer(const std::string& name) {
    ArtifactWriter w(dir, name, cfg);
    result.artifacts.push_back(w.path());
    return w;
  }
};

void cmd_torsion(Ctx& ctx) {
  const Isotopy iso = isotopy_from_section(ctx.cfg.map);
  const Vec2 x(get_double(ctx.cfg.command, "x", 0.0), get_double(ctx.cfg.command, "y", 0.0));
  const double xi_turns = get_double(ctx.cfg.command, "xi_turns", 0.0);
  const double tol = get_double(ctx.cfg.command, "tol", 1e-4);
  std::vector<int> schedule;
  const int n_flag = get_int(ctx.cfg.command, "n", 0);
  if (n_flag > 0) {
    schedule = {n_flag};
  } else {
    const int max_n = get_int(ctx.cfg.command, "schedule_max", 1 << 12);
    for (int m = 32; m <= max_n; m *= 2) schedule.push_back(m);
    if (schedule.empty()) schedule.push_back(max_n);
  }
  const TorsionEstimate est = torsion_orbit(iso, x, unit_from_turns(xi_turns), schedule, tol);
  ArtifactWriter w = ctx.writer("torsion.csv");
  w.csv_header("x0x,x0y,xi_turns,n,torsion,diagnostic");
  for (const auto& [m, value] : est.history)
    w.csv_row({fd(x.x()), fd(x.y()), fd(xi_turns), std::to_string(m), fd(value),
               est.converged ? "converged" : "not-converged"});
  if (get_int(ctx.cfg.command, "export_track", 0) != 0) {
    ArtifactWriter track_writer = ctx.writer("track.csv");
    const LiftedAngleTrack track =
        track_tangent(iso, x, unit_from_turns(xi_turns), schedule.back());
    write_track_csv(track_writer.stream(), track);
  }
  ctx.log << "torsion(" << iso.describe() << ") = " << est.value
          << (est.converged ? " [converged]" : " [not-converged]")
          << " xi_spread=" << est.xi_spread << "\n";
}

void cmd_linking(Ctx& ctx) {
  const std::string curve_a = get_string(ctx.cfg.command, "curve_a", "");
  ArtifactWriter w = ctx.writer("linking.csv");
  if (!curve_a.empty()) {
    const std::string curve_b = get_string(ctx.cfg.command, "curve_b", "");
    std::ifstream fa(curve_a), fb(curve_b);
    if (!fa || !fb) throw UsageError("linking: cannot open curve files");
    const SampledCurve a = read_curve_csv(fa);
    const SampledCurve b = read_curve_csv(fb);
    const double T = get_double(ctx.cfg.command, "t", a.times.back());
    const LinkingEstimate est = linking_curves(a, b, T);
    w.csv_header("T,linking,min_separation");
    w.csv_row({fd(est.horizon), fd(est.value), fd(est.min_separation)});
    ctx.log << "linking(curves) = " << est.value << "\n";
    return;
  }
  const Isotopy iso = isotopy_from_section(ctx.cfg.map);
  const Vec2 x(get_double(ctx.cfg.command, "xx", 0.0), get_double(ctx.cfg.command, "xy", 0.0));
  const Vec2 y(get_double(ctx.cfg.command, "yx", 1.0), get_double(ctx.cfg.command, "yy", 0.0));
  const int n = get_int(ctx.cfg.command, "n", 100);
  const LinkingEstimate est = linking_n_estimate(iso, x, y, n);
  w.csv_header("xx,xy,yx,yy,n,linking,min_separation");
  w.csv_row({fd(x.x()), fd(x.y()), fd(y.x()), fd(y.y()), std::to_string(n), fd(est.value),
             fd(est.min_separation)});
  if (get_int(ctx.cfg.command, "export_track", 0) != 0) {
    ArtifactWriter track_writer = ctx.writer("track.csv");
    const LiftedAngleTrack track = track_separation(iso, x, y, n);
    write_track_csv(track_writer.stream(), track);
  }
  ctx.log << "linking_" << n << " = " << est.value << "\n";
}

void cmd_witness(Ctx& ctx) {
  const Isotopy iso = isotopy_from_section(ctx.cfg.map);
  const Vec2 x(get_double(ctx.cfg.command, "xx", 0.0), get_double(ctx.cfg.command, "xy", 0.0));
  const Vec2 y(get_double(ctx.cfg.command, "yx", 1.0), get_double(ctx.cfg.command, "yy", 0.0));
  const int n = get_int(ctx.cfg.command, "n", 100);
  const WitnessCertificate cert = find_witness(iso, x, y, n);
  ArtifactWriter w = ctx.writer("witness.csv");
  write_certificate(w, cert);
  ctx.log << "witness: |torsion| = " << std::abs(cert.torsion_value) << " >= bound " << cert.bound
          << " (epsilon = " << cert.epsilon << ", s0 = " << cert.s0 << ")\n";
}

void cmd_rotset(Ctx& ctx) {
  const Isotopy iso = isotopy_from_section(ctx.cfg.map);
  const int grid = get_int(ctx.cfg.command, "grid", 128);
  const int n = get_int(ctx.cfg.command, "n", 1000);
  const RotationSetApprox rot = estimate_rotation_set(iso, grid, n);
  ArtifactWriter w = ctx.writer("rotset_vertices.csv");
  w.header_comment("sampled outer proxy of the rotation set; not a certified enclosure");
  w.header_comment("grid " + std::to_string(grid) + " n " + std::to_string(n) + " samples " +
                   std::to_string(rot.samples));
  w.csv_header("vx,vy");
  for (const Vec2& v : rot.vertices) w.csv_row({fd(v.x()), fd(v.y())});

  ArtifactWriter svg = ctx.writer("rotset.svg");
  std::vector<Vec2> cloud = rot.cloud;
  if (cloud.size() > 4096) {  // thin the cloud for display
    std::vector<Vec2> thin;
    const std::size_t stride = cloud.size() / 4096 + 1;
    for (std::size_t i = 0; i < cloud.size(); i += stride) thin.push_back(cloud[i]);
    cloud = std::move(thin);
  }
  write_scatter_svg(svg.stream(), cloud, rot.vertices);
  ctx.log << "rotation set proxy: " << rot.vertices.size() << " hull vertices\n";
}

void cmd_action(Ctx& ctx) {
  const std::string profile_name = get_string(ctx.cfg.command, "profile", "cubic");
  if (profile_name != "cubic") throw UsageError("action: only the 'cubic' profile ships");
  const double lambda =
      get_double(ctx.cfg.command, "lambda", get_double(ctx.cfg.map, "lambda", 1.0));
  const double width = get_double(ctx.cfg.command, "width", get_double(ctx.cfg.map, "width", 1.0));
  const HamiltonianProfile profile = cubic_profile(lambda, width);
  const Isotopy iso = radial_hamiltonian_isotopy(profile);
  const int n = get_int(ctx.cfg.command, "n", 8);
  const int samples = get_int(ctx.cfg.command, "samples", 100000);
  const Vec2 origin = Vec2::Zero();
  const ActionValue a = symplectic_action(iso, profile, origin);
  const AverageLinking avg = average_linking(iso, origin, n, samples, ctx.cfg.seed);
  ArtifactWriter w = ctx.writer("action.csv");
  w.csv_header("profile,lambda,n,samples,seed,action,mean1,stderr1,meann,stderrn,collisions");
  w.csv_row({"cubic", fd(lambda), std::to_string(n), std::to_string(samples),
             std::to_string(ctx.cfg.seed), fd(a.value), fd(avg.mean_1), fd(avg.stderr_1),
             fd(avg.mean_n), fd(avg.stderr_n), std::to_string(avg.collisions)});
  ctx.log << "action = " << a.value << ", mean_1 = " << avg.mean_1 << " +- " << avg.stderr_1
          << ", mean_n = " << avg.mean_n << " +- " << avg.stderr_n << "\n";
}

void cmd_chain(Ctx& ctx) {
  const MarkovPartition part = adler_weiss_partition();
  const auto relation = transition_relation(part);

  ArtifactWriter rel = ctx.writer("relation.csv");
  rel.csv_header("from,to,vx,vy");
  for (const TransitionTag& t : relation)
    rel.csv_row({std::to_string(t.from), std::to_string(t.to), std::to_string(t.v.x()),
                 std::to_string(t.v.y())});

  ArtifactWriter svg = ctx.writer("partition.svg");
  write_partition_svg(svg.stream(), part);

  // a deterministic random closed chain and its exact periodic point
  const int length = std::max(1, get_int(ctx.cfg.command, "length", 6));
  CounterRng rng(ctx.cfg.seed, 0);
  Chain chain;
  chain.ids.push_back(0);
  for (int k = 0; k < length; ++k) {
    const bool last = k == length - 1;
    std::vector<TransitionTag> options;
    for (const TransitionTag& t : relation)
      if (t.from == chain.ids.back() && (!last || t.to == 0)) options.push_back(t);
    const TransitionTag& pick = options[rng.next_u64() % options.size()];
    chain.ids.push_back(pick.to);
    chain.tags.push_back(pick.v);
  }
  const PeriodicPointRecord rec = periodic_from_closed_chain(part, chain);

  ArtifactWriter ch = ctx.writer("chain.txt");
  write_chain_text(ch.stream(), part, chain);
  ArtifactWriter pt = ctx.writer("periodic_point.csv");
  pt.csv_header("x,y,period,interior");
  pt.csv_row({rec.x.str(), rec.y.str(), std::to_string(rec.period), rec.interior ? "1" : "0"});
  ctx.log << "chain length " << length << " realized periodic point (" << rec.x.str() << ", "
          << rec.y.str() << ")\n";
}

void cmd_thm1(Ctx& ctx) {
  // disc pipeline: Hamiltonian isotopy -> fixed point with nonzero action ->
  // average linking -> witness certificate
  const double lambda = get_double(ctx.cfg.map, "lambda", 1.0);
  const HamiltonianProfile profile = cubic_profile(lambda, 1.0);
  const Isotopy iso = radial_hamiltonian_isotopy(profile);
  const int n = get_int(ctx.cfg.command, "n", 100);
  const int samples = get_int(ctx.cfg.command, "samples", 20000);

  const FixedPointAction fixed =
      find_nonzero_action_fixed_point(iso, profile, {Vec2::Zero()}, 1e-6);
  const AverageLinking avg = average_linking(iso, fixed.point, 8, samples, ctx.cfg.seed);
  ctx.log << "thm1-demo: A(x0) = " << fixed.action << ", mean_1 = " << avg.mean_1 << " +- "
          << avg.stderr_1 << "\n";

  std::vector<std::pair<Vec2, Vec2>> pairs;
  for (double r : {0.05, 0.3, 0.5}) pairs.emplace_back(fixed.point, fixed.point + Vec2(r, 0.0));
  const WitnessCertificate cert = existence_pipeline(iso, pairs, n);

  ArtifactWriter summary = ctx.writer("thm1_summary.csv");
  summary.csv_header("action,mean1,stderr1,meann,stderrn,epsilon,torsion,bound,n");
  summary.csv_row({fd(fixed.action), fd(avg.mean_1), fd(avg.stderr_1), fd(avg.mean_n),
                   fd(avg.stderr_n), fd(cert.epsilon), fd(cert.torsion_value), fd(cert.bound),
                   std::to_string(cert.n)});
  ArtifactWriter w = ctx.writer("thm1_certificate.csv");
  write_certificate(w, cert);
  ctx.log << "thm1-demo: |torsion| = " << std::abs(cert.torsion_value) << " >= bound " << cert.bound
          << "\n";
}

void cmd_thm2(Ctx& ctx) {
  // torus pipeline: rotation set -> realized periodic orbits -> linking pairs
  // -> witness certificate
  const double a = get_double(ctx.cfg.map, "a", 1.0);
  const double b = get_double(ctx.cfg.map, "b", 1.0);
  const Isotopy iso = double_shear_isotopy(a, b);
  const int rot_grid = get_int(ctx.cfg.command, "rot_grid", 96);
  const int rot_n = get_int(ctx.cfg.command, "rot_n", 500);
  const int n = get_int(ctx.cfg.command, "n", 100);

  const RotationSetApprox rot = estimate_rotation_set(iso, rot_grid, rot_n);
  if (rot.vertices.size() < 3 || !inside_convex(Vec2::Zero(), rot.vertices, 1e-6))
    throw NoCandidateError("thm2-demo: sampled rotation set does not surround the origin");
  const auto triples = rank_vector_triples(interior_rational_candidates(rot.vertices));

  // realize the best triple whose three targets all converge
  std::vector<PeriodicOrbitRecord> orbits;
  std::array<RationalVector, 3> targets{};
  for (const auto& triple : triples) {
    orbits.clear();
    try {
      for (const RationalVector& t : triple) orbits.push_back(realize_rational_vector(iso, t.p, t.pp, t.q));
      targets = triple;
      break;
    } catch (const NotFoundError&) {
      // next-ranked triple
    }
  }
  if (orbits.size() != 3)
    throw NotFoundError("thm2-demo: no ranked vector triple was fully realizable");

  ArtifactWriter orb = ctx.writer("thm2_periodic_orbits.csv");
  orb.csv_header("p,pp,q,zx,zy,residual");
  for (std::size_t i = 0; i < 3; ++i) {
    const PeriodicOrbitRecord& r = orbits[i];
    orb.csv_row({std::to_string(targets[i].p), std::to_string(targets[i].pp),
                 std::to_string(targets[i].q), fd(r.z.x()), fd(r.z.y()), fd(r.residual)});
  }
  ctx.log << "thm2-demo: realized " << orbits.size() << " periodic orbits\n";

  // candidate pairs: realized periodic points against each other and against
  // lattice fixed points, plus pairs seeded along the contracting
  // eigendirection of reflection-hyperbolic fixed points, where the
  // separation direction turns half a turn per step while the orbits stay
  // close
  std::vector<std::pair<Vec2, Vec2>> pairs;
  for (std::size_t i = 0; i < orbits.size(); ++i)
    for (std::size_t j = i + 1; j < orbits.size(); ++j) {
      const Vec2 zi = orbits[i].z;
      const Vec2 zj = orbits[j].z;
      const Vec2 shift(std::round(zi.x() - zj.x()), std::round(zi.y() - zj.y()));
      pairs.emplace_back(zi, zj + shift);
      pairs.emplace_back(zi, zj + shift + Vec2(1.0, 0.0));
      pairs.emplace_back(zi, zj + shift + Vec2(0.0, 1.0));
    }
  for (const PeriodicOrbitRecord& r : orbits) pairs.emplace_back(Vec2::Zero(), r.z);
  for (const Vec2& fp : {Vec2(0.5, 0.0), Vec2(0.0, 0.5), Vec2(0.5, 0.5), Vec2(0.0, 0.0)}) {
    if ((iso.time_one(fp) - fp).norm() > 1e-12) continue;
    const Mat2 j = iso.jacobian_iterate(fp, 1);
    const Eigen::EigenSolver<Mat2> es(j);
    for (int e = 0; e < 2; ++e) {
      const auto lam = es.eigenvalues()[e];
      if (std::abs(lam.imag()) > 1e-12 || std::abs(lam.real()) >= 1.0) continue;
      Vec2 dir(es.eigenvectors().col(e)[0].real(), es.eigenvectors().col(e)[1].real());
      if (dir.norm() < 1e-12) continue;
      dir.normalize();
      pairs.emplace_back(fp, fp + 1e-3 * dir);
      pairs.emplace_back(fp, fp - 1e-3 * dir);
    }
  }
  pairs.emplace_back(Vec2(0.5, 0.0), Vec2(0.5 + 1e-3, 1e-3));

  const WitnessCertificate cert = existence_pipeline(iso, pairs, n);
  ArtifactWriter w = ctx.writer("thm2_certificate.csv");
  write_certificate(w, cert);
  ctx.log << "thm2-demo: epsilon = " << cert.epsilon << ", |torsion| = "
          << std::abs(cert.torsion_value) << " >= bound " << cert.bound << "\n";
}

}  // namespace

RunResult run_experiment(const ExperimentConfig& cfg, std::ostream& log) {
  RunResult result;
  const std::string name = get_string(cfg.command, "name", "");
  Ctx ctx{cfg, get_string(cfg.output, "dir", "out"), log, result};
  try {
    if (name.empty()) throw UsageError("config: [command] section needs 'name'");
    ensure_writable_dir(ctx.dir);
    if (name == "torsion")
      cmd_torsion(ctx);
    else if (name == "linking")
      cmd_linking(ctx);
    else if (name == "witness")
      cmd_witness(ctx);
    else if (name == "rotset")
      cmd_rotset(ctx);
    else if (name == "action")
      cmd_action(ctx);
    else if (name == "chain")
      cmd_chain(ctx);
    else if (name == "thm1-demo")
      cmd_thm1(ctx);
    else if (name == "thm2-demo")
      cmd_thm2(ctx);
    else
      throw UsageError("unknown command '" + name + "'");
    result.exit_code = 0;
  } catch (const Error& e) {
    result.exit_code = e.exit_code();
    result.message = e.what();
    log << "error: " << e.what() << "\n";
  } catch (const std::exception& e) {
    result.exit_code = 2;
    result.message = e.what();
    log << "error: " << e.what() << "\n";
  }
  return result;
}

}  // namespace torsionlab

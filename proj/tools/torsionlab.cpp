// Command-line front end: each subcommand assembles an ExperimentConfig
// (either from a config file or from flags) and hands it to the runner.

#include "torsionlab/artifacts.hpp"
#include "torsionlab/runner.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

using torsionlab::ExperimentConfig;

struct CommonFlags {
  std::string config_path;
  std::string out_dir = "out";
  std::uint64_t seed = 0;
  std::string map_kind;
  double a = 1.0, b = 1.0;
  double omega0 = 0.5, cx = 0.0, cy = 0.0, vx = 0.0, vy = 0.0, rate = 1.0;
  double lambda = 1.0, width = 1.0;
  std::string representation = "closed_form";
  double time_step = 1e-3;
};

void add_map_flags(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--config", f.config_path, "config file; other flags are ignored if set");
  cmd->add_option("--out", f.out_dir, "output directory");
  cmd->add_option("--seed", f.seed, "64-bit run seed");
  cmd->add_option("--map", f.map_kind,
                  "map kind: identity|translation|rotation|shear|double_shear|radial_hamiltonian");
  cmd->add_option("--a", f.a, "double shear horizontal amplitude");
  cmd->add_option("--b", f.b, "double shear vertical amplitude");
  cmd->add_option("--omega0", f.omega0, "rotation speed, turns per unit time");
  cmd->add_option("--cx", f.cx, "rotation center x");
  cmd->add_option("--cy", f.cy, "rotation center y");
  cmd->add_option("--vx", f.vx, "translation x");
  cmd->add_option("--vy", f.vy, "translation y");
  cmd->add_option("--rate", f.rate, "shear rate");
  cmd->add_option("--lambda", f.lambda, "radial profile amplitude");
  cmd->add_option("--width", f.width, "radial profile support width in s = r^2");
  cmd->add_option("--representation", f.representation, "closed_form | rk4_flow");
  cmd->add_option("--time-step", f.time_step, "integration step for rk4_flow");
}

ExperimentConfig base_config(const CommonFlags& f, const std::string& command_name) {
  ExperimentConfig cfg;
  if (!f.config_path.empty()) {
    cfg = torsionlab::parse_config_file(f.config_path);
    return cfg;
  }
  if (!f.map_kind.empty()) {
    cfg.map["kind"] = f.map_kind;
    if (f.map_kind == "double_shear") {
      cfg.map["a"] = torsionlab::format_double(f.a);
      cfg.map["b"] = torsionlab::format_double(f.b);
    } else if (f.map_kind == "rotation") {
      cfg.map["omega0"] = torsionlab::format_double(f.omega0);
      cfg.map["cx"] = torsionlab::format_double(f.cx);
      cfg.map["cy"] = torsionlab::format_double(f.cy);
    } else if (f.map_kind == "translation") {
      cfg.map["vx"] = torsionlab::format_double(f.vx);
      cfg.map["vy"] = torsionlab::format_double(f.vy);
    } else if (f.map_kind == "shear") {
      cfg.map["rate"] = torsionlab::format_double(f.rate);
    } else if (f.map_kind == "radial_hamiltonian") {
      cfg.map["lambda"] = torsionlab::format_double(f.lambda);
      cfg.map["width"] = torsionlab::format_double(f.width);
      cfg.map["representation"] = f.representation;
      cfg.map["time_step"] = torsionlab::format_double(f.time_step);
    }
  }
  cfg.command["name"] = command_name;
  cfg.output["dir"] = f.out_dir;
  cfg.seed = f.seed;
  return cfg;
}

int dispatch(const ExperimentConfig& cfg) {
  const torsionlab::RunResult r = torsionlab::run_experiment(cfg, std::cout);
  for (const std::string& p : r.artifacts) std::cout << "wrote " << p << "\n";
  return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"torsionlab: torsion, linking, rotation sets and symplectic actions for surface "
               "isotopies"};
  app.require_subcommand(1);

  CommonFlags f;
  double x = 0, y = 0, xx = 0, xy = 0, yx = 1, yy = 0, xi_turns = 0, tol = 1e-4, T = 0;
  int n = 0, grid = 128, samples = 100000, length = 6, rot_n = 500, rot_grid = 96;
  std::string curve_a, curve_b, profile = "cubic";

  auto* c_torsion = app.add_subcommand("torsion", "torsion of an orbit with diagnostics");
  add_map_flags(c_torsion, f);
  c_torsion->add_option("--x", x, "orbit base point x");
  c_torsion->add_option("--y", y, "orbit base point y");
  c_torsion->add_option("--xi-turns", xi_turns, "tangent direction in turns");
  c_torsion->add_option("--n", n, "single horizon (otherwise the 2^5..2^12 schedule)");
  c_torsion->add_option("--tol", tol, "convergence diagnostic tolerance");

  auto* c_linking = app.add_subcommand("linking", "linking number of two orbits or curves");
  add_map_flags(c_linking, f);
  c_linking->add_option("--xx", xx, "first point x");
  c_linking->add_option("--xy", xy, "first point y");
  c_linking->add_option("--yx", yx, "second point x");
  c_linking->add_option("--yy", yy, "second point y");
  c_linking->add_option("--n", n, "horizon");
  c_linking->add_option("--curve-a", curve_a, "CSV curve file (t,x,y) for curve mode");
  c_linking->add_option("--curve-b", curve_b, "CSV curve file (t,x,y) for curve mode");
  c_linking->add_option("--T", T, "curve-mode horizon");

  auto* c_witness = app.add_subcommand("witness", "linking-to-torsion witness certificate");
  add_map_flags(c_witness, f);
  c_witness->add_option("--xx", xx, "first point x");
  c_witness->add_option("--xy", xy, "first point y");
  c_witness->add_option("--yx", yx, "second point x");
  c_witness->add_option("--yy", yy, "second point y");
  c_witness->add_option("--n", n, "horizon");

  auto* c_rotset = app.add_subcommand("rotset", "sampled rotation set with convex hull");
  add_map_flags(c_rotset, f);
  c_rotset->add_option("--grid", grid, "grid resolution N (N x N base points)");
  c_rotset->add_option("--n", n, "displacement horizon");

  auto* c_action = app.add_subcommand("action", "symplectic action and average linking");
  add_map_flags(c_action, f);
  c_action->add_option("--profile", profile, "Hamiltonian profile (cubic)");
  c_action->add_option("--samples", samples, "Monte-Carlo sample count");
  c_action->add_option("--n", n, "linking horizon for mean_n");

  auto* c_chain = app.add_subcommand("chain", "Markov partition, relation, exact periodic point");
  add_map_flags(c_chain, f);
  c_chain->add_option("--length", length, "closed chain length");

  auto* c_thm1 = app.add_subcommand("thm1-demo", "disc pipeline: action -> linking -> witness");
  add_map_flags(c_thm1, f);
  c_thm1->add_option("--n", n, "witness horizon");
  c_thm1->add_option("--samples", samples, "Monte-Carlo sample count");

  auto* c_thm2 = app.add_subcommand("thm2-demo",
                                    "torus pipeline: rotation set -> periodic orbits -> witness");
  add_map_flags(c_thm2, f);
  c_thm2->add_option("--n", n, "witness horizon");
  c_thm2->add_option("--rot-grid", rot_grid, "rotation-set grid");
  c_thm2->add_option("--rot-n", rot_n, "rotation-set horizon");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    CLI::App* sub = app.get_subcommands().front();
    const std::string name = sub->get_name();
    ExperimentConfig cfg = base_config(f, name);
    if (!f.config_path.empty()) return dispatch(cfg);

    auto set_if = [&](CLI::Option* opt, const char* key, const std::string& value) {
      if (opt && opt->count() > 0) cfg.command[key] = value;
    };
    using torsionlab::format_double;
    if (name == "torsion") {
      set_if(c_torsion->get_option("--x"), "x", format_double(x));
      set_if(c_torsion->get_option("--y"), "y", format_double(y));
      set_if(c_torsion->get_option("--xi-turns"), "xi_turns", format_double(xi_turns));
      set_if(c_torsion->get_option("--n"), "n", std::to_string(n));
      set_if(c_torsion->get_option("--tol"), "tol", format_double(tol));
    } else if (name == "linking" || name == "witness") {
      CLI::App* c = name == "linking" ? c_linking : c_witness;
      set_if(c->get_option("--xx"), "xx", format_double(xx));
      set_if(c->get_option("--xy"), "xy", format_double(xy));
      set_if(c->get_option("--yx"), "yx", format_double(yx));
      set_if(c->get_option("--yy"), "yy", format_double(yy));
      set_if(c->get_option("--n"), "n", std::to_string(n));
      if (name == "linking") {
        set_if(c_linking->get_option("--curve-a"), "curve_a", curve_a);
        set_if(c_linking->get_option("--curve-b"), "curve_b", curve_b);
        set_if(c_linking->get_option("--T"), "t", format_double(T));
      }
    } else if (name == "rotset") {
      set_if(c_rotset->get_option("--grid"), "grid", std::to_string(grid));
      set_if(c_rotset->get_option("--n"), "n", std::to_string(n));
    } else if (name == "action") {
      set_if(c_action->get_option("--profile"), "profile", profile);
      set_if(c_action->get_option("--samples"), "samples", std::to_string(samples));
      set_if(c_action->get_option("--n"), "n", std::to_string(n));
      cfg.command["lambda"] = format_double(f.lambda);
      cfg.command["width"] = format_double(f.width);
    } else if (name == "chain") {
      set_if(c_chain->get_option("--length"), "length", std::to_string(length));
    } else if (name == "thm1-demo") {
      set_if(c_thm1->get_option("--n"), "n", std::to_string(n));
      set_if(c_thm1->get_option("--samples"), "samples", std::to_string(samples));
    } else if (name == "thm2-demo") {
      set_if(c_thm2->get_option("--n"), "n", std::to_string(n));
      set_if(c_thm2->get_option("--rot-grid"), "rot_grid", std::to_string(rot_grid));
      set_if(c_thm2->get_option("--rot-n"), "rot_n", std::to_string(rot_n));
    }
    return dispatch(cfg);
  } catch (const torsionlab::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

#include "torsionlab/artifacts.hpp"
#include "torsionlab/linking.hpp"
#include "torsionlab/runner.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace torsionlab;

TEST_SUITE_BEGIN("cli");

namespace {

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  REQUIRE(f);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

std::string temp_dir(const std::string& tag) {
  const auto dir = std::filesystem::temp_directory_path() / ("torsionlab_test_" + tag);
  std::filesystem::remove_all(dir);
  return dir.string();
}

}  // namespace

TEST_CASE("config parser: sections, comments, unknown keys, seed") {
  const std::string text =
      "# experiment\n"
      "[map]\n"
      "kind = double_shear\n"
      "a = 1.0\n"
      "b = 1.0\n"
      "[command]\n"
      "name = rotset\n"
      "grid = 16\n"
      "n = 10\n"
      "[output]\n"
      "dir = out\n"
      "[run]\n"
      "seed = 42\n";
  const ExperimentConfig cfg = parse_config_text(text);
  CHECK(cfg.seed == 42);
  CHECK(cfg.map.at("kind") == "double_shear");
  CHECK(get_int(cfg.command, "grid", 0) == 16);

  CHECK_THROWS_AS(parse_config_text("[map]\nbogus_key = 1\n"), UsageError);
  CHECK_THROWS_AS(parse_config_text("[bogus]\nx = 1\n"), UsageError);
  CHECK_THROWS_AS(parse_config_text("[map]\nkind = a\nkind = b\n"), UsageError);
  CHECK_THROWS_AS(parse_config_text("kind = orphan\n"), UsageError);
  CHECK_THROWS_AS(parse_config_text("[run]\nseed = notanumber\n"), UsageError);
}

TEST_CASE("config file: parse from disk and run") {
  const std::string dir = temp_dir("file");
  ensure_writable_dir(dir);
  const std::string path = dir + "/exp.ini";
  {
    std::ofstream f(path);
    f << "[map]\nkind = rotation\nomega0 = 0.3\n"
      << "[command]\nname = torsion\nn = 16\nx = 0.2\n"
      << "[output]\ndir = " << dir << "\n"
      << "[run]\nseed = 99\n";
  }
  const ExperimentConfig cfg = parse_config_file(path);
  CHECK(cfg.seed == 99);
  std::ostringstream log;
  REQUIRE(run_experiment(cfg, log).exit_code == 0);
  CHECK(slurp(dir + "/torsion.csv").find("# seed 99") != std::string::npos);
  CHECK_THROWS_AS(parse_config_file(dir + "/does_not_exist.ini"), UsageError);
}

TEST_CASE("config hash is stable and order-insensitive") {
  const ExperimentConfig a = parse_config_text("[map]\nkind = identity\n[command]\nname = torsion\n");
  const ExperimentConfig b = parse_config_text("[command]\nname = torsion\n[map]\nkind = identity\n");
  CHECK(a.hash() == b.hash());
  const ExperimentConfig c = parse_config_text("[map]\nkind = shear\n[command]\nname = torsion\n");
  CHECK(a.hash() != c.hash());
}

TEST_CASE("determinism: identical config and seed give byte-identical artifacts") {
  ExperimentConfig cfg;
  cfg.map = {{"kind", "double_shear"}, {"a", "1.0"}, {"b", "1.0"}};
  cfg.command = {{"name", "rotset"}, {"grid", "16"}, {"n", "20"}};
  cfg.seed = 9;

  const std::string dir1 = temp_dir("det1");
  const std::string dir2 = temp_dir("det2");
  cfg.output = {{"dir", dir1}};
  std::ostringstream log1;
  REQUIRE(run_experiment(cfg, log1).exit_code == 0);
  cfg.output = {{"dir", dir2}};
  std::ostringstream log2;
  REQUIRE(run_experiment(cfg, log2).exit_code == 0);
  CHECK(slurp(dir1 + "/rotset_vertices.csv") == slurp(dir2 + "/rotset_vertices.csv"));
  CHECK(slurp(dir1 + "/rotset.svg") == slurp(dir2 + "/rotset.svg"));
}

TEST_CASE("provenance: artifacts carry version, config hash and seed") {
  ExperimentConfig cfg;
  cfg.map = {{"kind", "rotation"}, {"omega0", "0.3"}};
  cfg.command = {{"name", "torsion"}, {"n", "16"}};
  cfg.seed = 17;
  const std::string dir = temp_dir("prov");
  cfg.output = {{"dir", dir}};
  std::ostringstream log;
  REQUIRE(run_experiment(cfg, log).exit_code == 0);
  const std::string text = slurp(dir + "/torsion.csv");
  CHECK(text.rfind("# torsionlab ", 0) == 0);
  CHECK(text.find("# config ") != std::string::npos);
  CHECK(text.find("# seed 17") != std::string::npos);
}

TEST_CASE("exit codes: usage, numeric failure, search-not-found") {
  std::ostringstream log;

  ExperimentConfig no_map;
  no_map.command = {{"name", "witness"}};
  no_map.output = {{"dir", temp_dir("u1")}};
  CHECK(run_experiment(no_map, log).exit_code == 1);

  ExperimentConfig no_name;
  no_name.output = {{"dir", temp_dir("u2")}};
  CHECK(run_experiment(no_name, log).exit_code == 1);

  // colliding pair: numeric failure
  ExperimentConfig collide;
  collide.map = {{"kind", "double_shear"}, {"a", "1.0"}, {"b", "1.0"}};
  collide.command = {{"name", "linking"}, {"xx", "0.2"}, {"xy", "0.2"},
                     {"yx", "0.2"},       {"yy", "0.2"}, {"n", "5"}};
  collide.output = {{"dir", temp_dir("u3")}};
  CHECK(run_experiment(collide, log).exit_code == 2);

  // identity isotopy never links: search-not-found
  ExperimentConfig zero;
  zero.map = {{"kind", "identity"}};
  zero.command = {{"name", "witness"}, {"xx", "0"}, {"xy", "0"}, {"yx", "1"}, {"yy", "0"},
                  {"n", "10"}};
  zero.output = {{"dir", temp_dir("u4")}};
  CHECK(run_experiment(zero, log).exit_code == 3);
}

TEST_CASE("torsion command writes the documented CSV columns") {
  ExperimentConfig cfg;
  cfg.map = {{"kind", "rotation"}, {"omega0", "0.25"}};
  cfg.command = {{"name", "torsion"}, {"x", "0.3"}, {"y", "0.1"}, {"n", "32"}};
  const std::string dir = temp_dir("cols");
  cfg.output = {{"dir", dir}};
  std::ostringstream log;
  REQUIRE(run_experiment(cfg, log).exit_code == 0);
  const std::string text = slurp(dir + "/torsion.csv");
  CHECK(text.find("x0x,x0y,xi_turns,n,torsion,diagnostic") != std::string::npos);
  CHECK(text.find("converged") != std::string::npos);
}

TEST_CASE("witness command emits the certificate row format") {
  ExperimentConfig cfg;
  cfg.map = {{"kind", "rotation"}, {"omega0", "0.3"}};
  cfg.command = {{"name", "witness"}, {"xx", "0"}, {"xy", "0"}, {"yx", "1"}, {"yy", "0"},
                 {"n", "10"}};
  const std::string dir = temp_dir("wit");
  cfg.output = {{"dir", dir}};
  std::ostringstream log;
  REQUIRE(run_experiment(cfg, log).exit_code == 0);
  const std::string text = slurp(dir + "/witness.csv");
  CHECK(text.find("xx,xy,yx,yy,n,epsilon,s0,zx,zy,torsion,bound") != std::string::npos);
}

TEST_CASE("linking command: curve mode round trip") {
  const std::string dir = temp_dir("curves");
  ensure_writable_dir(dir);
  {
    const Isotopy rot = rotation_isotopy(Vec2::Zero(), 0.3);
    std::ofstream fa(dir + "/a.csv"), fb(dir + "/b.csv");
    write_curve_csv(fa, sample_orbit_curve(rot, Vec2(0.1, 0.0), 10.0, 1.0 / 16.0));
    write_curve_csv(fb, sample_orbit_curve(rot, Vec2(0.5, 0.0), 10.0, 1.0 / 16.0));
  }
  ExperimentConfig cfg;
  cfg.command = {{"name", "linking"},
                 {"curve_a", dir + "/a.csv"},
                 {"curve_b", dir + "/b.csv"},
                 {"t", "10"}};
  cfg.output = {{"dir", dir}};
  std::ostringstream log;
  REQUIRE(run_experiment(cfg, log).exit_code == 0);
  CHECK(slurp(dir + "/linking.csv").find("T,linking,min_separation") != std::string::npos);
}

TEST_CASE("chain command produces relation, svg, chain text and an exact point") {
  ExperimentConfig cfg;
  cfg.command = {{"name", "chain"}, {"length", "4"}};
  cfg.seed = 11;
  const std::string dir = temp_dir("chain");
  cfg.output = {{"dir", dir}};
  std::ostringstream log;
  REQUIRE(run_experiment(cfg, log).exit_code == 0);
  CHECK(slurp(dir + "/relation.csv").find("from,to,vx,vy") != std::string::npos);
  CHECK(slurp(dir + "/partition.svg").find("<svg") != std::string::npos);
  CHECK(slurp(dir + "/periodic_point.csv").find("period") != std::string::npos);
  CHECK(!slurp(dir + "/chain.txt").empty());
}

TEST_SUITE_END();

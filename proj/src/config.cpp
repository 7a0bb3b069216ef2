#include "torsionlab/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

namespace torsionlab {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

const std::set<std::string> kSections = {"map", "command", "output", "run"};

const std::set<std::string> kMapKeys = {"kind", "a",    "b",     "vx",    "vy",        "cx",
                                        "cy",   "omega0", "rate", "lambda", "width",   "surface",
                                        "representation", "time_step"};
const std::set<std::string> kCommandKeys = {
    "name", "n",  "grid",    "x",  "y",  "xx",     "xy",      "yx",     "yy",   "xi_turns",
    "tol",  "q",  "px",      "py", "samples", "length", "rot_n", "rot_grid", "profile", "curve_a",
    "curve_b", "t", "schedule_max", "lambda", "width", "export_track"};
const std::set<std::string> kOutputKeys = {"dir", "formats"};
const std::set<std::string> kRunKeys = {"seed"};

void check_keys(const Section& s, const std::set<std::string>& allowed, const std::string& name) {
  for (const auto& kv : s)
    if (!allowed.count(kv.first))
      throw UsageError("config: unknown key '" + kv.first + "' in section [" + name + "]");
}

}  // namespace

std::string ExperimentConfig::canonical_text() const {
  // The hash records the experiment identity (map, command, seed); where the
  // artifacts land does not change what was computed.
  std::ostringstream os;
  auto dump = [&](const char* name, const Section& s) {
    for (const auto& kv : s) os << name << "." << kv.first << "=" << kv.second << "\n";
  };
  dump("map", map);
  dump("command", command);
  os << "run.seed=" << seed << "\n";
  return os.str();
}

std::uint64_t ExperimentConfig::hash() const {
  const std::string text = canonical_text();
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

ExperimentConfig parse_config_text(const std::string& text) {
  ExperimentConfig cfg;
  Section run;
  Section* current = nullptr;
  std::string current_name;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#' || t[0] == ';') continue;
    if (t.front() == '[') {
      if (t.back() != ']') throw UsageError("config: malformed section header at line " +
                                            std::to_string(lineno));
      current_name = trim(t.substr(1, t.size() - 2));
      if (!kSections.count(current_name))
        throw UsageError("config: unknown section [" + current_name + "]");
      if (current_name == "map")
        current = &cfg.map;
      else if (current_name == "command")
        current = &cfg.command;
      else if (current_name == "output")
        current = &cfg.output;
      else
        current = &run;
      continue;
    }
    const std::size_t eq = t.find('=');
    if (eq == std::string::npos)
      throw UsageError("config: expected key=value at line " + std::to_string(lineno));
    if (!current) throw UsageError("config: key=value before any [section] at line " +
                                   std::to_string(lineno));
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    if (current->count(key))
      throw UsageError("config: duplicate key '" + key + "' in [" + current_name + "]");
    (*current)[key] = value;
  }
  check_keys(cfg.map, kMapKeys, "map");
  check_keys(cfg.command, kCommandKeys, "command");
  check_keys(cfg.output, kOutputKeys, "output");
  check_keys(run, kRunKeys, "run");
  if (run.count("seed")) {
    try {
      cfg.seed = std::stoull(run.at("seed"));
    } catch (const std::exception&) {
      throw UsageError("config: seed must be a 64-bit integer");
    }
  }
  return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw UsageError("config: cannot open '" + path + "'");
  std::ostringstream buf;
  buf << f.rdbuf();
  return parse_config_text(buf.str());
}

double get_double(const Section& s, const std::string& key, double fallback) {
  auto it = s.find(key);
  if (it == s.end()) return fallback;
  try {
    std::size_t pos = 0;
    const double v = std::stod(it->second, &pos);
    if (pos != it->second.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw UsageError("config: key '" + key + "' is not a number: " + it->second);
  }
}

int get_int(const Section& s, const std::string& key, int fallback) {
  auto it = s.find(key);
  if (it == s.end()) return fallback;
  try {
    std::size_t pos = 0;
    const int v = std::stoi(it->second, &pos);
    if (pos != it->second.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw UsageError("config: key '" + key + "' is not an integer: " + it->second);
  }
}

std::string get_string(const Section& s, const std::string& key, const std::string& fallback) {
  auto it = s.find(key);
  return it == s.end() ? fallback : it->second;
}

Isotopy isotopy_from_section(const Section& section) {
  const std::string kind = get_string(section, "kind", "");
  if (kind.empty()) throw UsageError("config: [map] section needs a 'kind'");
  const std::string surface_name = get_string(section, "surface", "");
  auto surface_or = [&](SurfaceModel dflt) {
    if (surface_name.empty()) return dflt;
    if (surface_name == "plane") return SurfaceModel::plane();
    if (surface_name == "disc") return SurfaceModel::disc();
    if (surface_name == "annulus") return SurfaceModel::annulus();
    if (surface_name == "torus") return SurfaceModel::torus();
    throw UsageError("config: unknown surface '" + surface_name + "'");
  };

  if (kind == "identity") return identity_isotopy(surface_or(SurfaceModel::plane()));
  if (kind == "translation")
    return translation_isotopy(Vec2(get_double(section, "vx", 0.0), get_double(section, "vy", 0.0)),
                               surface_or(SurfaceModel::plane()));
  if (kind == "rotation")
    return rotation_isotopy(Vec2(get_double(section, "cx", 0.0), get_double(section, "cy", 0.0)),
                            get_double(section, "omega0", 0.5), surface_or(SurfaceModel::plane()));
  if (kind == "shear") return shear_isotopy(get_double(section, "rate", 1.0));
  if (kind == "double_shear")
    return double_shear_isotopy(get_double(section, "a", 1.0), get_double(section, "b", 1.0));
  if (kind == "radial_hamiltonian") {
    const HamiltonianProfile profile =
        cubic_profile(get_double(section, "lambda", 1.0), get_double(section, "width", 1.0));
    const std::string rep = get_string(section, "representation", "closed_form");
    if (rep == "closed_form")
      return radial_hamiltonian_isotopy(profile, FlowRepresentation::closed_form);
    if (rep == "rk4_flow")
      return radial_hamiltonian_isotopy(profile, FlowRepresentation::rk4_flow,
                                        get_double(section, "time_step", 1e-3));
    throw UsageError("config: unknown representation '" + rep + "'");
  }
  throw UsageError("config: unknown map kind '" + kind + "'");
}

}  // namespace torsionlab

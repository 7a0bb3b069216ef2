#pragma once

#include "torsionlab/isotopy.hpp"

#include <cstdint>
#include <map>
#include <string>

namespace torsionlab {

using Section = std::map<std::string, std::string>;

// Sectioned key=value experiment description. Unknown sections or keys are
// rejected; output paths are checked writable before a run starts.
struct ExperimentConfig {
  Section map;      // [map]     kind, params, representation, time_step
  Section command;  // [command] name + per-command flags
  Section output;   // [output]  dir, formats
  std::uint64_t seed = 0;

  std::string canonical_text() const;
  std::uint64_t hash() const;  // FNV-1a over the canonical text
};

ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig parse_config_file(const std::string& path);

/// Build a zoo isotopy from a [map] section. Keys: kind (identity,
/// translation, rotation, shear, double_shear, radial_hamiltonian), numeric
/// parameters (a, b, vx, vy, cx, cy, omega0, rate, lambda, width),
/// representation (closed_form | rk4_flow), time_step.
Isotopy isotopy_from_section(const Section& section);

double get_double(const Section& s, const std::string& key, double fallback);
int get_int(const Section& s, const std::string& key, int fallback);
std::string get_string(const Section& s, const std::string& key, const std::string& fallback);

}  // namespace torsionlab

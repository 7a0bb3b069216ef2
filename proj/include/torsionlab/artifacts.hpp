#pragma once

#include "torsionlab/common.hpp"
#include "torsionlab/config.hpp"

#include <fstream>
#include <string>
#include <vector>

namespace torsionlab {

std::string format_double(double v);  // shortest round-trip-stable form, locale-free

// CSV/SVG sink with the provenance header every artifact carries:
// tool version, config hash, seed.
class ArtifactWriter {
 public:
  ArtifactWriter(const std::string& dir, const std::string& name, const ExperimentConfig& cfg);

  std::ofstream& stream() { return out_; }
  const std::string& path() const { return path_; }

  void header_comment(const std::string& line);  // '#'-prefixed metadata
  void csv_header(const std::string& columns);
  void csv_row(const std::vector<std::string>& cells);

 private:
  std::string path_;
  std::ofstream out_;
};

/// Throws UsageError unless `dir` exists (or can be created) and is writable.
void ensure_writable_dir(const std::string& dir);

// Minimal static SVG: point cloud plus an optional polygon outline.
void write_scatter_svg(std::ostream& os, const std::vector<Vec2>& cloud,
                       const std::vector<Vec2>& polygon);

}  // namespace torsionlab

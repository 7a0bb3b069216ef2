#include "torsionlab/artifacts.hpp"

#include <cstdio>
#include <filesystem>

namespace torsionlab {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void ensure_writable_dir(const std::string& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec && !fs::exists(dir)) throw UsageError("output: cannot create directory '" + dir + "'");
  const fs::path probe = fs::path(dir) / ".writable_probe";
  std::ofstream f(probe);
  if (!f) throw UsageError("output: directory '" + dir + "' is not writable");
  f.close();
  fs::remove(probe, ec);
}

ArtifactWriter::ArtifactWriter(const std::string& dir, const std::string& name,
                               const ExperimentConfig& cfg) {
  ensure_writable_dir(dir);
  path_ = (std::filesystem::path(dir) / name).string();
  out_.open(path_, std::ios::binary | std::ios::trunc);
  if (!out_) throw UsageError("output: cannot open '" + path_ + "' for writing");
  char hash[32];
  std::snprintf(hash, sizeof(hash), "%016llx", static_cast<unsigned long long>(cfg.hash()));
  out_ << "# torsionlab " << TORSIONLAB_VERSION << "\n";
  out_ << "# config " << hash << "\n";
  out_ << "# seed " << cfg.seed << "\n";
}

void ArtifactWriter::header_comment(const std::string& line) { out_ << "# " << line << "\n"; }

void ArtifactWriter::csv_header(const std::string& columns) { out_ << columns << "\n"; }

void ArtifactWriter::csv_row(const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << cells[i];
  out_ << "\n";
}

void write_scatter_svg(std::ostream& os, const std::vector<Vec2>& cloud,
                       const std::vector<Vec2>& polygon) {
  double xmin = -1, xmax = 1, ymin = -1, ymax = 1;
  auto stretch = [&](const Vec2& p) {
    xmin = std::min(xmin, p.x());
    xmax = std::max(xmax, p.x());
    ymin = std::min(ymin, p.y());
    ymax = std::max(ymax, p.y());
  };
  for (const Vec2& p : cloud) stretch(p);
  for (const Vec2& p : polygon) stretch(p);
  const double pad = 0.05 * std::max(xmax - xmin, ymax - ymin) + 1e-9;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << format_double(xmin - pad) << " "
     << format_double(-(ymax + pad)) << " " << format_double(xmax - xmin + 2 * pad) << " "
     << format_double(ymax - ymin + 2 * pad) << "\" width=\"560\" height=\"560\">\n";
  const double r = 0.004 * std::max(xmax - xmin, ymax - ymin);
  for (const Vec2& p : cloud)
    os << "  <circle cx=\"" << format_double(p.x()) << "\" cy=\"" << format_double(-p.y())
       << "\" r=\"" << format_double(r) << "\" fill=\"#33557a\" fill-opacity=\"0.5\"/>\n";
  if (!polygon.empty()) {
    os << "  <polygon points=\"";
    for (const Vec2& p : polygon) os << format_double(p.x()) << "," << format_double(-p.y()) << " ";
    os << "\" fill=\"none\" stroke=\"#b03030\" stroke-width=\"" << format_double(2.0 * r) << "\"/>\n";
  }
  os << "</svg>\n";
}

}  // namespace torsionlab

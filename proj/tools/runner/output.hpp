#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace crossmetric::runner {

/// Writes to a sibling temporary file and renames it into place.
void write_atomic(const std::filesystem::path& path, const std::string& contents);

/// Shortest round-trip decimal form of a double.
std::string format_double(double v);

struct Series {
  std::string label;
  std::vector<std::pair<double, double>> points;
};

/// A self-contained SVG line plot. Output depends only on the inputs.
std::string svg_line_plot(const std::string& title, const std::string& x_label,
                          const std::string& y_label, const std::vector<Series>& series);

}  // namespace crossmetric::runner

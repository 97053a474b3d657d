#include "cli_commands.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <stdexcept>

namespace entgen::cli {

std::vector<BoundRow> bound_table(double transmittance, int grid) {
  if (grid < 2) throw std::domain_error("grid must have at least 2 points");
  std::vector<BoundRow> rows;
  rows.reserve(grid);
  for (int i = 0; i < grid; ++i) {
    const double ps = static_cast<double>(i) / (grid - 1);
    const double sym = bounds::f_sym(ps, transmittance);
    const double opt = bounds::f_opt(ps, transmittance);
    rows.push_back({ps, sym, opt, ps * opt});
  }
  return rows;
}

double transmittance_from_length(double length_km, double l0_km) {
  if (!(length_km > 0.0) || !(l0_km > 0.0)) {
    throw std::domain_error("channel length and attenuation length must be positive");
  }
  return std::exp(-length_km / l0_km);
}

std::vector<AttenuationCurve> attenuation_table(const std::vector<double>& lengths_km,
                                                double l0_km, int grid) {
  std::vector<AttenuationCurve> curves;
  curves.reserve(lengths_km.size());
  for (double length : lengths_km) {
    const double transmittance = transmittance_from_length(length, l0_km);
    curves.push_back({length, transmittance, bound_table(transmittance, grid)});
  }
  return curves;
}

std::vector<double> parse_range_spec(const std::string& spec) {
  double start = 0.0, stop = 0.0, step = 0.0;
  if (std::sscanf(spec.c_str(), "%lf:%lf:%lf", &start, &stop, &step) != 3 ||
      !(step > 0.0) || stop < start) {
    throw std::invalid_argument("malformed range '" + spec + "', expected start:stop:step");
  }
  std::vector<double> values;
  for (double v = start; v <= stop + 1e-9 * step; v += step) values.push_back(v);
  return values;
}

std::string format_double(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.12g", value);
  return buffer;
}

void write_output(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::filesystem::path target(path);
  if (target.is_relative()) {
    if (const char* dir = std::getenv("ENTGEN_OUT_DIR")) {
      target = std::filesystem::path(dir) / target;
    }
  }
  std::ofstream out(target);
  if (!out) throw std::runtime_error("cannot open output file " + target.string());
  out << text;
}

}  // namespace entgen::cli

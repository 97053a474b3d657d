#pragma once

#include <string>
#include <vector>

#include "entgen/bounds.hpp"

namespace entgen::cli {

struct BoundRow {
  double ps, f_sym, f_opt, psf_opt;
};

// Sampled bound curves at fixed transmittance; grid = number of points
// including both endpoints.
std::vector<BoundRow> bound_table(double transmittance, int grid);

struct AttenuationCurve {
  double length_km;
  double transmittance;
  std::vector<BoundRow> rows;
};

// One optimal curve per channel length, T = exp(-l / l0).
std::vector<AttenuationCurve> attenuation_table(const std::vector<double>& lengths_km,
                                                double l0_km, int grid);

double transmittance_from_length(double length_km, double l0_km);

// Inclusive start:stop:step range, e.g. "10:100:10".
std::vector<double> parse_range_spec(const std::string& spec);

// 12 significant digits, the CSV output contract.
std::string format_double(double value);

// Writes to stdout when path is empty or "-"; relative paths are resolved
// against ENTGEN_OUT_DIR when that variable is set.
void write_output(const std::string& text, const std::string& path);

}  // namespace entgen::cli

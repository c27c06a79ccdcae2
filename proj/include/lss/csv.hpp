#pragma once

#include <string>
#include <vector>

#include "lss/driver.hpp"
#include "lss/harness.hpp"
#include "lss/simulate.hpp"
#include "lss/variation.hpp"

namespace lss {

// Full-precision decimal rendering (round-trips doubles).
std::string format_double(double v);

// All writers emit "# key: value" comment headers followed by a column header
// row. write_* throw std::runtime_error on I/O failure.
void write_path_csv(const std::string& file, const LssPath& path);
LssPath read_path_csv(const std::string& file);
void write_jumps_csv(const std::string& file, const DriverPath& jumps);
void write_variation_csv(const std::string& file, const VariationSeries& series,
                         const std::vector<double>& normalized, const std::string& regime,
                         const PathProvenance& prov);
void write_mc_csv(const std::string& file, const McReport& report);
std::string render_mc_csv(const McReport& report);

} // namespace lss

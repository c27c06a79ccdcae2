#pragma once

#include <string>

#include "lss/driver.hpp"
#include "lss/kernel.hpp"
#include "lss/sigma.hpp"

namespace lss {

// Compact single-line renderings used in CSV headers and provenance fields.
std::string describe(const KernelSpec& spec);
std::string describe(const DriverSpec& spec);
std::string describe(const SigmaSpec& spec);

} // namespace lss

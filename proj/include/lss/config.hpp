#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "lss/driver.hpp"
#include "lss/kernel.hpp"
#include "lss/sigma.hpp"
#include "lss/simulate.hpp"

namespace lss {

// Flat key=value configuration. '#' starts a comment, blank lines are skipped,
// whitespace around keys and values is trimmed. Keys read through the typed
// accessors are tracked so leftovers can be rejected.
class KvConfig {
  public:
    static KvConfig parse_file(const std::string& path);
    static KvConfig parse_string(const std::string& text);

    void set(const std::string& key, const std::string& value);
    bool has(const std::string& key) const;

    std::string get_string(const std::string& key, const std::string& fallback) const;
    std::string require_string(const std::string& key) const;
    double get_double(const std::string& key, double fallback) const;
    double require_double(const std::string& key) const;
    long get_long(const std::string& key, long fallback) const;
    std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;
    std::vector<double> get_double_list(const std::string& key) const; // comma separated
    std::vector<long> get_long_list(const std::string& key) const;

    // Marks every key under the prefix as consumed (key groups meant for a
    // different subcommand).
    void allow_prefix(const std::string& prefix) const;

    // Throws ConfigInvalid listing keys never read by any accessor.
    void reject_unknown() const;

    // Sorted key=value lines; hash() is FNV-1a over that rendering.
    std::string canonical() const;
    std::uint64_t hash() const;

  private:
    std::map<std::string, std::string> kv_;
    mutable std::set<std::string> seen_;
};

KernelSpec kernel_from_config(const KvConfig& cfg);
DriverSpec driver_from_config(const KvConfig& cfg, const std::string& prefix = "driver.");
SigmaSpec sigma_from_config(const KvConfig& cfg);
SimConfig sim_from_config(const KvConfig& cfg);

} // namespace lss

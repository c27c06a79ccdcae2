#include "lss/csv.hpp"

#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace lss {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

std::string timestamp_utc() {
    std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void provenance_header(std::ostream& os, const PathProvenance& prov) {
    os << "# generated: " << timestamp_utc() << "\n";
    os << "# kernel: " << prov.kernel << "\n";
    os << "# driver: " << prov.driver << "\n";
    os << "# sigma: " << prov.sigma << "\n";
    os << "# seed: " << prov.seed << "\n";
    os << "# n: " << prov.n << "\n";
    os << "# burn_in: " << format_double(prov.burn_in) << "\n";
    os << "# fine_factor: " << prov.fine_factor << "\n";
}

std::ofstream open_or_throw(const std::string& file) {
    std::ofstream os(file);
    if (!os) throw std::runtime_error("cannot open for writing: " + file);
    return os;
}

} // namespace

void write_path_csv(const std::string& file, const LssPath& path) {
    std::ofstream os = open_or_throw(file);
    provenance_header(os, path.provenance);
    os << "t,x\n";
    for (std::size_t i = 0; i < path.values.size(); ++i)
        os << format_double(path.time_at(i)) << "," << format_double(path.values[i]) << "\n";
    if (!os) throw std::runtime_error("write failed: " + file);
}

LssPath read_path_csv(const std::string& file) {
    std::ifstream is(file);
    if (!is) throw std::runtime_error("cannot open for reading: " + file);
    LssPath path;
    std::string line;
    bool header_done = false;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            const auto colon = line.find(':');
            if (colon == std::string::npos) continue;
            auto strip = [](std::string s) {
                const auto a = s.find_first_not_of(" \t");
                const auto b = s.find_last_not_of(" \t\r");
                return (a == std::string::npos) ? std::string() : s.substr(a, b - a + 1);
            };
            const std::string key = strip(line.substr(1, colon - 1));
            const std::string value = strip(line.substr(colon + 1));
            if (key == "n") path.n = std::strtol(value.c_str(), nullptr, 10);
            else if (key == "kernel") path.provenance.kernel = value;
            else if (key == "driver") path.provenance.driver = value;
            else if (key == "sigma") path.provenance.sigma = value;
            else if (key == "seed") path.provenance.seed = std::strtoull(value.c_str(), nullptr, 10);
            else if (key == "burn_in") path.provenance.burn_in = std::strtod(value.c_str(), nullptr);
            else if (key == "fine_factor")
                path.provenance.fine_factor = static_cast<int>(std::strtol(value.c_str(), nullptr, 10));
            continue;
        }
        if (!header_done) { // column header row
            header_done = true;
            continue;
        }
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw std::runtime_error("path csv: malformed row");
        path.values.push_back(std::strtod(line.c_str() + comma + 1, nullptr));
    }
    if (path.values.size() < 2) throw std::runtime_error("path csv: no data rows");
    if (path.n < 1) throw std::runtime_error("path csv: missing n header");
    path.t_max = static_cast<double>(path.values.size() - 1) / static_cast<double>(path.n);
    path.provenance.n = path.n;
    return path;
}

void write_jumps_csv(const std::string& file, const DriverPath& jumps) {
    std::ofstream os = open_or_throw(file);
    os << "# generated: " << timestamp_utc() << "\n";
    os << "# window: [" << format_double(jumps.window_start) << ","
       << format_double(jumps.window_end) << "]\n";
    os << "time,size\n";
    for (const auto& j : jumps.jumps)
        os << format_double(j.time) << "," << format_double(j.size) << "\n";
    if (!os) throw std::runtime_error("write failed: " + file);
}

void write_variation_csv(const std::string& file, const VariationSeries& series,
                         const std::vector<double>& normalized, const std::string& regime,
                         const PathProvenance& prov) {
    if (!normalized.empty() && normalized.size() != series.values.size())
        throw std::runtime_error("variation csv: normalized column length mismatch");
    std::ofstream os = open_or_throw(file);
    provenance_header(os, prov);
    os << "# p: " << format_double(series.p) << "\n";
    os << "# k: " << series.k << "\n";
    os << "# regime: " << regime << "\n";
    os << (normalized.empty() ? "t,v" : "t,v,normalized") << "\n";
    for (std::size_t i = 0; i < series.values.size(); ++i) {
        os << format_double(static_cast<double>(i) / series.n) << ","
           << format_double(series.values[i]);
        if (!normalized.empty()) os << "," << format_double(normalized[i]);
        os << "\n";
    }
    if (!os) throw std::runtime_error("write failed: " + file);
}

std::string render_mc_csv(const McReport& report) {
    std::ostringstream os;
    os << "# mode: " << report.mode << "\n";
    os << "# seed: " << report.seed << "\n";
    os << "# replications: " << report.replications << "\n";
    os << "# config_hash: " << report.config_hash << "\n";
    for (const auto& note : report.notes) os << "# note: " << note << "\n";
    os << "n,statistic,mean,median,q05,q95,target,count\n";
    for (const auto& row : report.rows) {
        os << row.n << "," << row.statistic << "," << format_double(row.mean) << ","
           << format_double(row.median) << "," << format_double(row.q05) << ","
           << format_double(row.q95) << "," << format_double(row.target) << "," << row.count
           << "\n";
    }
    return os.str();
}

void write_mc_csv(const std::string& file, const McReport& report) {
    std::ofstream os = open_or_throw(file);
    os << "# generated: " << timestamp_utc() << "\n";
    os << render_mc_csv(report);
    if (!os) throw std::runtime_error("write failed: " + file);
}

} // namespace lss

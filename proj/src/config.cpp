#include "lss/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "lss/errors.hpp"

namespace lss {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

} // namespace

KvConfig KvConfig::parse_string(const std::string& text) {
    KvConfig cfg;
    std::istringstream is(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash_pos = line.find('#');
        if (hash_pos != std::string::npos) line = line.substr(0, hash_pos);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigInvalid("config line " + std::to_string(lineno) + ": expected key=value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigInvalid("config line " + std::to_string(lineno) + ": empty key");
        if (cfg.kv_.count(key))
            throw ConfigInvalid("config: duplicate key " + key);
        cfg.kv_[key] = value;
    }
    return cfg;
}

KvConfig KvConfig::parse_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ConfigInvalid("config: cannot read " + path);
    std::ostringstream buf;
    buf << is.rdbuf();
    return parse_string(buf.str());
}

void KvConfig::set(const std::string& key, const std::string& value) { kv_[key] = value; }

bool KvConfig::has(const std::string& key) const { return kv_.count(key) != 0; }

std::string KvConfig::get_string(const std::string& key, const std::string& fallback) const {
    seen_.insert(key);
    const auto it = kv_.find(key);
    return it == kv_.end() ? fallback : it->second;
}

std::string KvConfig::require_string(const std::string& key) const {
    seen_.insert(key);
    const auto it = kv_.find(key);
    if (it == kv_.end()) throw ConfigInvalid("config: missing required key " + key);
    return it->second;
}

namespace {
double to_double(const std::string& key, const std::string& v) {
    char* end = nullptr;
    const double d = std::strtod(v.c_str(), &end);
    if (end == v.c_str() || *end != '\0')
        throw ConfigInvalid("config: key " + key + " is not a number: " + v);
    return d;
}
} // namespace

double KvConfig::get_double(const std::string& key, double fallback) const {
    seen_.insert(key);
    const auto it = kv_.find(key);
    return it == kv_.end() ? fallback : to_double(key, it->second);
}

double KvConfig::require_double(const std::string& key) const {
    return to_double(key, require_string(key));
}

long KvConfig::get_long(const std::string& key, long fallback) const {
    const double d = get_double(key, static_cast<double>(fallback));
    const auto l = static_cast<long>(d);
    if (static_cast<double>(l) != d)
        throw ConfigInvalid("config: key " + key + " must be an integer");
    return l;
}

std::uint64_t KvConfig::get_u64(const std::string& key, std::uint64_t fallback) const {
    seen_.insert(key);
    const auto it = kv_.find(key);
    if (it == kv_.end()) return fallback;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(it->second.c_str(), &end, 10);
    if (end == it->second.c_str() || *end != '\0')
        throw ConfigInvalid("config: key " + key + " must be an unsigned integer");
    return v;
}

std::vector<double> KvConfig::get_double_list(const std::string& key) const {
    const std::string raw = get_string(key, "");
    std::vector<double> out;
    if (raw.empty()) return out;
    std::istringstream is(raw);
    std::string tok;
    while (std::getline(is, tok, ',')) out.push_back(to_double(key, trim(tok)));
    return out;
}

std::vector<long> KvConfig::get_long_list(const std::string& key) const {
    std::vector<long> out;
    for (double d : get_double_list(key)) {
        const auto l = static_cast<long>(d);
        if (static_cast<double>(l) != d)
            throw ConfigInvalid("config: key " + key + " must list integers");
        out.push_back(l);
    }
    return out;
}

void KvConfig::allow_prefix(const std::string& prefix) const {
    for (const auto& [k, v] : kv_)
        if (k.rfind(prefix, 0) == 0) seen_.insert(k);
}

void KvConfig::reject_unknown() const {
    std::string extra;
    for (const auto& [k, v] : kv_)
        if (!seen_.count(k)) extra += (extra.empty() ? "" : ", ") + k;
    if (!extra.empty()) throw ConfigInvalid("config: unknown keys: " + extra);
}

std::string KvConfig::canonical() const {
    std::ostringstream os;
    for (const auto& [k, v] : kv_) os << k << "=" << v << "\n";
    return os.str();
}

std::uint64_t KvConfig::hash() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : canonical()) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

KernelSpec kernel_from_config(const KvConfig& cfg) {
    KernelSpec spec;
    const std::string family = cfg.get_string("kernel.family", "gamma");
    if (family == "gamma")
        spec.family = KernelFamily::gamma;
    else if (family == "power")
        spec.family = KernelFamily::power;
    else
        throw ConfigInvalid("config: kernel.family must be gamma or power");
    spec.c0 = cfg.get_double("kernel.c0", 1.0);
    spec.alpha = cfg.require_double("kernel.alpha");
    spec.decay = cfg.get_double("kernel.decay", spec.family == KernelFamily::gamma ? 1.0 : 0.0);
    const std::string g0 = cfg.get_string(
        "kernel.g0", spec.family == KernelFamily::power ? "equal_g" : "zero");
    if (g0 == "zero")
        spec.g0_mode = G0Mode::zero;
    else if (g0 == "equal_g")
        spec.g0_mode = G0Mode::equal_g;
    else
        throw ConfigInvalid("config: kernel.g0 must be zero or equal_g");
    spec.delta = cfg.get_double("kernel.delta", 1.0);
    spec.validate();
    return spec;
}

namespace {

CompoundPoissonDriver compound_from_config(const KvConfig& cfg, const std::string& prefix) {
    CompoundPoissonDriver cp;
    cp.rate = cfg.require_double(prefix + "rate");
    const std::string law = cfg.get_string(prefix + "law", "rademacher");
    if (law == "rademacher") {
        cp.law = RademacherLaw{cfg.get_double(prefix + "size", 1.0)};
    } else if (law == "pareto") {
        cp.law = TwoSidedParetoLaw{cfg.require_double(prefix + "tail_index"),
                                   cfg.get_double(prefix + "min_size", 1.0)};
    } else if (law == "atoms") {
        AtomsLaw at;
        const std::string raw = cfg.require_string(prefix + "atoms");
        std::istringstream is(raw);
        std::string tok;
        while (std::getline(is, tok, ',')) {
            const auto colon = tok.find(':');
            if (colon == std::string::npos)
                throw ConfigInvalid("config: " + prefix + "atoms entries must be size:prob");
            at.atoms.emplace_back(std::strtod(tok.substr(0, colon).c_str(), nullptr),
                                  std::strtod(tok.substr(colon + 1).c_str(), nullptr));
        }
        cp.law = at;
    } else {
        throw ConfigInvalid("config: " + prefix + "law must be rademacher, pareto, or atoms");
    }
    return cp;
}

} // namespace

DriverSpec driver_from_config(const KvConfig& cfg, const std::string& prefix) {
    const std::string type = cfg.get_string(prefix + "type", "stable");
    DriverSpec spec;
    if (type == "stable") {
        StableDriver st;
        st.beta = cfg.require_double(prefix + "beta");
        st.gamma_scale = cfg.get_double(prefix + "scale", 1.0);
        spec = st;
    } else if (type == "cp") {
        spec = compound_from_config(cfg, prefix);
    } else {
        throw ConfigInvalid("config: " + prefix + "type must be stable or cp");
    }
    validate(spec);
    return spec;
}

SigmaSpec sigma_from_config(const KvConfig& cfg) {
    const std::string type = cfg.get_string("sigma.type", "constant");
    SigmaSpec spec;
    if (type == "constant") {
        spec = ConstantSigma{cfg.get_double("sigma.value", 1.0)};
    } else if (type == "linear" || type == "cosine") {
        DeterministicSigma d;
        d.shape = type;
        d.a = cfg.get_double("sigma.a", 1.0);
        d.b = cfg.get_double("sigma.b", 0.0);
        d.w = cfg.get_double("sigma.w", 1.0);
        spec = d;
    } else if (type == "ou") {
        OuSigma ou;
        ou.mean = cfg.get_double("sigma.mean", 1.0);
        ou.reversion = cfg.get_double("sigma.reversion", 1.0);
        ou.jumps = compound_from_config(cfg, "sigma.jump.");
        spec = ou;
    } else if (type == "step") {
        StepSigma st;
        st.times = cfg.get_double_list("sigma.times");
        st.levels = cfg.get_double_list("sigma.levels");
        spec = st;
    } else {
        throw ConfigInvalid("config: sigma.type must be constant, linear, cosine, ou, or step");
    }
    validate(spec);
    return spec;
}

SimConfig sim_from_config(const KvConfig& cfg) {
    SimConfig sim;
    sim.n = cfg.get_long("sim.n", sim.n);
    sim.t_max = cfg.get_double("sim.t_max", sim.t_max);
    sim.burn_in = cfg.get_double("sim.burn_in", sim.burn_in);
    sim.fine_factor = static_cast<int>(cfg.get_long("sim.fine_factor", sim.fine_factor));
    sim.tail_tol = cfg.get_double("sim.tail_tol", sim.tail_tol);
    sim.validate();
    return sim;
}

} // namespace lss

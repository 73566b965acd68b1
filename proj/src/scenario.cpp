#include "fsonoma/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace fsonoma::scenario {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& v) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(v);
    while (std::getline(in, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

double to_double(const std::string& key, const std::string& v) {
    double out = 0.0;
    const char* end = v.data() + v.size();
    const auto res = std::from_chars(v.data(), end, out);
    if (res.ec != std::errc() || res.ptr != end) throw ConfigError(key + ": '" + v + "' is not a number");
    return out;
}

std::uint64_t to_count(const std::string& key, const std::string& v) {
    std::uint64_t out = 0;
    const char* end = v.data() + v.size();
    const auto res = std::from_chars(v.data(), end, out);
    if (res.ec == std::errc() && res.ptr == end) return out;
    // Allow 1e6 style counts when the value is an exact integer.
    const double d = to_double(key, v);
    if (!(d >= 0.0 && d <= 9007199254740992.0) || d != std::floor(d)) {
        throw ConfigError(key + ": '" + v + "' is not a non-negative integer");
    }
    return static_cast<std::uint64_t>(d);
}

bool to_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ConfigError(key + ": '" + v + "' is not a boolean");
}

std::string format_g(double v, bool sign) {
    char buf[64];
    std::snprintf(buf, sizeof buf, sign ? "%+g" : "%g", v);
    return buf;
}

}  // namespace

std::vector<std::string> ScenarioConfig::problems() const {
    std::vector<std::string> out;
    auto check = [&](bool ok, const std::string& msg) {
        if (!ok) out.push_back(msg);
    };
    check(std::isfinite(power_start_dbm) && std::isfinite(power_stop_dbm), "power range must be finite");
    check(power_step_db > 0.0, "power_dbm_step must be > 0");
    check(power_start_dbm <= power_stop_dbm, "power_dbm_start must not exceed power_dbm_stop");
    check(d1_m > 0.0 && std::isfinite(d1_m), "d1_m must be positive");
    check(d2_m > 0.0 && std::isfinite(d2_m), "d2_m must be positive");
    check(!kappa_per_m.empty(), "kappa_per_m: no value given");
    for (double k : kappa_per_m) check(k >= 0.0 && std::isfinite(k), "kappa_per_m must be >= 0");
    try {
        optics.validate();
    } catch (const std::exception& e) {
        out.emplace_back(e.what());
    }
    try {
        turbulence.validate();
    } catch (const std::exception& e) {
        out.emplace_back(e.what());
    }
    if (explicit_rates) {
        check(rate1 >= 0.0 && rate2 >= 0.0, "rate1 and rate2 must be >= 0");
    } else {
        check(!rate_offsets.empty(), "rate_offset: no value given");
        const double crt = noma::critical_rate();
        for (double eps : rate_offsets) check(crt + eps >= 0.0, "rate_offset gives a negative rate");
    }
    try {
        quadrature.validate();
    } catch (const std::exception& e) {
        out.emplace_back(e.what());
    }
    check(!schemes.empty(), "schemes: list is empty");
    check(mc.n_samples >= 1, "samples must be >= 1");
    check(mc.chunk_size >= 1, "chunk_size must be >= 1");
    return out;
}

void ScenarioConfig::validate() const {
    const auto p = problems();
    if (p.empty()) return;
    std::string msg = "invalid scenario:";
    for (const auto& s : p) msg += "\n  - " + s;
    throw ConfigError(msg);
}

std::vector<double> ScenarioConfig::powers() const {
    std::vector<double> out;
    if (!(power_step_db > 0.0) || power_start_dbm > power_stop_dbm) return out;
    const double span = (power_stop_dbm - power_start_dbm) / power_step_db;
    const auto n = static_cast<long>(std::floor(span + 1e-9));
    for (long i = 0; i <= n; ++i) out.push_back(power_start_dbm + static_cast<double>(i) * power_step_db);
    return out;
}

std::vector<noma::SchemeSpec> ScenarioConfig::scheme_specs() const {
    std::vector<noma::SchemeSpec> out;
    for (auto s : schemes) out.push_back({s, sic});
    return out;
}

ScenarioConfig parse_scenario(const std::string& text) {
    ScenarioConfig cfg;
    std::set<std::string> seen;
    bool has_rate1 = false;
    bool has_rate2 = false;
    bool has_offset = false;
    bool has_start = false;
    bool has_stop = false;
    bool has_schemes = false;

    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value'");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (!seen.insert(key).second) throw ConfigError("line " + std::to_string(lineno) + ": duplicate key " + key);

        if (key == "power_dbm_start") {
            cfg.power_start_dbm = to_double(key, val);
            has_start = true;
        } else if (key == "power_dbm_stop") {
            cfg.power_stop_dbm = to_double(key, val);
            has_stop = true;
        } else if (key == "power_dbm_step") {
            cfg.power_step_db = to_double(key, val);
        } else if (key == "d1_m") {
            cfg.d1_m = to_double(key, val);
        } else if (key == "d2_m") {
            cfg.d2_m = to_double(key, val);
        } else if (key == "kappa_per_m") {
            cfg.kappa_per_m.clear();
            for (const auto& v : split_list(val)) cfg.kappa_per_m.push_back(to_double(key, v));
        } else if (key == "responsivity") {
            cfg.optics.responsivity = to_double(key, val);
        } else if (key == "aperture_radius_m") {
            cfg.optics.aperture_radius_m = to_double(key, val);
        } else if (key == "divergence_rad") {
            cfg.optics.divergence_rad = to_double(key, val);
        } else if (key == "noise_variance_a2") {
            cfg.optics.noise_variance = to_double(key, val);
        } else if (key == "alpha") {
            cfg.turbulence.alpha = to_double(key, val);
        } else if (key == "beta") {
            cfg.turbulence.beta = to_double(key, val);
        } else if (key == "rate1") {
            cfg.rate1 = to_double(key, val);
            has_rate1 = true;
        } else if (key == "rate2") {
            cfg.rate2 = to_double(key, val);
            has_rate2 = true;
        } else if (key == "rate_offset") {
            for (const auto& v : split_list(val)) cfg.rate_offsets.push_back(to_double(key, v));
            has_offset = true;
        } else if (key == "schemes") {
            for (const auto& v : split_list(val)) {
                try {
                    cfg.schemes.push_back(noma::parse_scheme(v));
                } catch (const std::invalid_argument& e) {
                    throw ConfigError(key + ": " + e.what());
                }
            }
            has_schemes = true;
        } else if (key == "sic") {
            try {
                cfg.sic = noma::parse_sic(val);
            } catch (const std::invalid_argument& e) {
                throw ConfigError(key + ": " + e.what());
            }
        } else if (key == "samples") {
            cfg.mc.n_samples = to_count(key, val);
        } else if (key == "seed") {
            cfg.mc.seed = to_count(key, val);
        } else if (key == "chunk_size") {
            cfg.mc.chunk_size = to_count(key, val);
        } else if (key == "workers") {
            cfg.mc.workers = static_cast<unsigned>(to_count(key, val));
        } else if (key == "quad_abs_tol") {
            cfg.quadrature.abs_tol = to_double(key, val);
        } else if (key == "quad_rel_tol") {
            cfg.quadrature.rel_tol = to_double(key, val);
        } else if (key == "quad_max_subdivisions") {
            cfg.quadrature.max_subdivisions = static_cast<int>(std::min<std::uint64_t>(to_count(key, val), 1u << 30));
        } else if (key == "analysis") {
            cfg.analysis = to_bool(key, val);
        } else {
            throw ConfigError("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
        }
    }
    if (!has_start || !has_stop) throw ConfigError("power_dbm_start and power_dbm_stop are required");
    if (!has_schemes) throw ConfigError("schemes is required");
    if (has_offset && (has_rate1 || has_rate2)) throw ConfigError("give either rate1/rate2 or rate_offset, not both");
    if (!has_offset && !(has_rate1 && has_rate2)) throw ConfigError("rate1 and rate2 (or rate_offset) are required");
    cfg.explicit_rates = !has_offset;
    return cfg;
}

ScenarioConfig load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read scenario file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

std::vector<ScenarioCase> expand_cases(const ScenarioConfig& cfg) {
    std::vector<ScenarioCase> out;
    const std::vector<double> offsets = cfg.explicit_rates ? std::vector<double>{0.0} : cfg.rate_offsets;
    const double crt = noma::critical_rate();
    for (double kappa : cfg.kappa_per_m) {
        for (double eps : offsets) {
            ScenarioCase c;
            c.kappa_per_m = kappa;
            c.has_offset = !cfg.explicit_rates;
            c.rate_offset = c.has_offset ? eps : 0.0;
            c.link.kappa_per_m = kappa;
            c.link.d1_m = cfg.d1_m;
            c.link.d2_m = cfg.d2_m;
            c.link.optics = cfg.optics;
            c.link.turbulence = cfg.turbulence;
            c.link.rate1 = c.has_offset ? crt + eps : cfg.rate1;
            c.link.rate2 = c.has_offset ? crt + eps : cfg.rate2;
            c.suffix = "_kappa" + format_g(kappa, false);
            if (c.has_offset) c.suffix += "_eps" + format_g(eps, true);
            out.push_back(std::move(c));
        }
    }
    if (out.size() == 1) out.front().suffix.clear();
    return out;
}

}  // namespace fsonoma::scenario

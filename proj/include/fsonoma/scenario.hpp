#pragma once

// Scenario files: flat `key = value` text, one entry per line, `#` starts a
// comment. List-valued keys take comma-separated values.
//
//   power_dbm_start, power_dbm_stop   dBm
//   power_dbm_step                    dB, default 2
//   d1_m, d2_m                        link distances, metres
//   kappa_per_m                       attenuation per metre (list)
//   responsivity                      photodetector scale factor
//   aperture_radius_m                 metres
//   divergence_rad                    radians
//   noise_variance_a2                 A^2
//   alpha, beta                       Gamma-Gamma shapes
//   rate1, rate2                      target rates, bits/symbol
//   rate_offset                       list of eps; both rates = R_crt + eps
//   schemes                           list of optimal, fixed, sorted, oma, bound
//   sic                               perfect | imperfect | worstcase
//   samples, seed, chunk_size, workers
//   analysis                          true | false: quadrature/asymptotic columns
//   quad_abs_tol, quad_rel_tol, quad_max_subdivisions
//
// Either rate1 and rate2 or rate_offset must be given. Each combination of
// kappa and rate pair is one case.

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "fsonoma/montecarlo.hpp"

namespace fsonoma::scenario {

/// Malformed file: unknown key, bad number, missing entry.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ScenarioConfig {
    double power_start_dbm = 0.0;
    double power_stop_dbm = 60.0;
    double power_step_db = 2.0;
    double d1_m = 1000.0;
    double d2_m = 2000.0;
    std::vector<double> kappa_per_m{4.2e-3};
    channel::OpticsParams optics;
    channel::TurbulenceParams turbulence;
    bool explicit_rates = true;
    double rate1 = 0.1;
    double rate2 = 0.5;
    std::vector<double> rate_offsets;
    std::vector<noma::Scheme> schemes;
    noma::SicAssumption sic = noma::SicAssumption::Imperfect;
    montecarlo::McConfig mc;
    bool analysis = true;
    analysis::QuadratureControl quadrature;

    /// Every invariant violation, one message each; empty when valid.
    [[nodiscard]] std::vector<std::string> problems() const;
    /// Throws ConfigError listing problems() when nonempty.
    void validate() const;

    [[nodiscard]] std::vector<double> powers() const;
    [[nodiscard]] std::vector<noma::SchemeSpec> scheme_specs() const;
};

struct ScenarioCase {
    std::string suffix;  // empty for single-case scenarios
    double kappa_per_m = 0.0;
    double rate_offset = 0.0;
    bool has_offset = false;
    montecarlo::LinkScenario link;
};

ScenarioConfig parse_scenario(const std::string& text);
ScenarioConfig load_scenario(const std::filesystem::path& path);

std::vector<ScenarioCase> expand_cases(const ScenarioConfig& cfg);

}  // namespace fsonoma::scenario

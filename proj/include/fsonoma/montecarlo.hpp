#pragma once

// Monte Carlo outage estimation.
//
// Samples are generated in chunks of chunk_size; chunk k draws from Philox
// stream (seed, k) with a fresh Gamma-Gamma sampler. Chunks are spread over
// worker threads and only integer event counts are reduced, so estimates
// depend on (seed, n_samples, chunk_size) and not on the worker count.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "fsonoma/analysis.hpp"
#include "fsonoma/channel.hpp"
#include "fsonoma/noma.hpp"
#include "fsonoma/rng.hpp"

namespace fsonoma::montecarlo {

struct McConfig {
    std::uint64_t n_samples = 1'000'000;
    std::uint64_t seed = 1;
    std::uint64_t chunk_size = 1u << 16;
    unsigned workers = 0;  // 0 = hardware concurrency

    void validate() const;
};

struct OutageEstimate {
    double p_hat = 0.0;
    double std_error = 0.0;  // sqrt(p (1 - p) / n); 3 / n when p is 0 or 1
    std::uint64_t events = 0;
    std::uint64_t n_samples = 0;
};

OutageEstimate make_estimate(std::uint64_t events, std::uint64_t n_samples);

using EstimatePair = std::pair<OutageEstimate, OutageEstimate>;

EstimatePair estimate_outage(const channel::LinkBudget& link1, const channel::LinkBudget& link2,
                             const noma::QosThresholds& thr, const channel::TurbulenceParams& t,
                             noma::Scheme scheme, noma::SicAssumption sic, const McConfig& mc);

/// estimate_outage for several schemes on one common set of draws.
std::vector<EstimatePair> estimate_outage(const channel::LinkBudget& link1, const channel::LinkBudget& link2,
                                          const noma::QosThresholds& thr, const channel::TurbulenceParams& t,
                                          const std::vector<noma::SchemeSpec>& schemes, const McConfig& mc);

/// Calls `visit(fade1, fade2)` for every draw of chunk
/// `chunk_index`, in draw order.
template <class Visit>
void for_each_draw_in_chunk(const channel::TurbulenceParams& t, const McConfig& mc, std::uint64_t chunk_index,
                            Visit&& visit);

/// Deterministic physical setup shared by all points of a power sweep.
struct LinkScenario {
    double kappa_per_m = 4.2e-3;
    double d1_m = 1000.0;
    double d2_m = 2000.0;
    channel::OpticsParams optics;
    channel::TurbulenceParams turbulence;
    double rate1 = 0.1;
    double rate2 = 0.5;

    void validate() const;
};

struct SweepRow {
    double power_dbm = 0.0;
    noma::SchemeSpec spec;
    int bs = 1;
    OutageEstimate mc;
    std::optional<double> quad;        // optimal scheme only
    std::optional<double> asymptotic;  // optimal scheme only
    bool tail_floor = false;           // fewer than 10 events: MC value not reported
};

struct SweepOptions {
    bool analysis = true;
    analysis::QuadratureControl quadrature;
};

/// One row per (power, scheme, BS), in that nesting order. Every power is
/// estimated with the same seed, so points share their fades.
std::vector<SweepRow> sweep_power(const LinkScenario& scenario, const std::vector<double>& powers_dbm,
                                  const std::vector<noma::SchemeSpec>& schemes, const McConfig& mc,
                                  const SweepOptions& options = {});

template <class Visit>
void for_each_draw_in_chunk(const channel::TurbulenceParams& t, const McConfig& mc, std::uint64_t chunk_index,
                            Visit&& visit) {
    const std::uint64_t begin = chunk_index * mc.chunk_size;
    if (begin >= mc.n_samples) return;
    const std::uint64_t end = std::min(mc.n_samples, begin + mc.chunk_size);
    rng::Philox rng(mc.seed, chunk_index);
    channel::GammaGammaSampler sampler(t);
    for (std::uint64_t i = begin; i < end; ++i) {
        const double h1 = sampler(rng);
        const double h2 = sampler(rng);
        visit(h1, h2);
    }
}

}  // namespace fsonoma::montecarlo

#include "fsonoma/montecarlo.hpp"

#include <array>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

namespace fsonoma::montecarlo {

namespace {

using Counts = std::vector<std::array<std::uint64_t, 2>>;

unsigned worker_count(const McConfig& mc, std::uint64_t chunks) {
    unsigned w = mc.workers != 0 ? mc.workers : std::max(1u, std::thread::hardware_concurrency());
    return static_cast<unsigned>(std::min<std::uint64_t>(w, chunks));
}

// Worker w handles chunks w, w + W, w + 2W, ... Each chunk writes its own
// slot, so the reduction below is independent of scheduling.
template <class ChunkFn>
void run_chunks(std::uint64_t chunks, unsigned workers, ChunkFn&& fn) {
    if (workers <= 1) {
        for (std::uint64_t k = 0; k < chunks; ++k) fn(k);
        return;
    }
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::uint64_t k = w; k < chunks; k += workers) fn(k);
            } catch (...) {
                const std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
}

}  // namespace

void McConfig::validate() const {
    if (n_samples < 1) throw DomainError("montecarlo: n_samples must be >= 1");
    if (chunk_size < 1) throw DomainError("montecarlo: chunk_size must be >= 1");
}

OutageEstimate make_estimate(std::uint64_t events, std::uint64_t n_samples) {
    if (n_samples == 0) throw DomainError("make_estimate: n_samples must be >= 1");
    if (events > n_samples) throw DomainError("make_estimate: more events than samples");
    const double n = static_cast<double>(n_samples);
    const double p = static_cast<double>(events) / n;
    const double se = (events == 0 || events == n_samples) ? 3.0 / n : std::sqrt(p * (1.0 - p) / n);
    return {p, se, events, n_samples};
}

std::vector<EstimatePair> estimate_outage(const channel::LinkBudget& link1, const channel::LinkBudget& link2,
                                          const noma::QosThresholds& thr, const channel::TurbulenceParams& t,
                                          const std::vector<noma::SchemeSpec>& schemes, const McConfig& mc) {
    mc.validate();
    t.validate();
    const std::uint64_t chunks = (mc.n_samples + mc.chunk_size - 1) / mc.chunk_size;
    const std::size_t m = schemes.size();
    // counts[k * m + j] = events of scheme j in chunk k
    Counts counts(static_cast<std::size_t>(chunks) * m, {0, 0});
    const double e1 = link1.e;
    const double e2 = link2.e;
    run_chunks(chunks, worker_count(mc, chunks), [&](std::uint64_t k) {
        auto* slot = counts.data() + static_cast<std::size_t>(k) * m;
        for_each_draw_in_chunk(t, mc, k, [&](double h1, double h2) {
            const noma::ChannelDraw draw{e1 * h1 * h1, e2 * h2 * h2};
            for (std::size_t j = 0; j < m; ++j) {
                const noma::OutageEvents ev = noma::outage_events(draw, thr, schemes[j].scheme, schemes[j].sic);
                slot[j][0] += ev.oe1;
                slot[j][1] += ev.oe2;
            }
        });
    });
    std::vector<EstimatePair> out;
    out.reserve(m);
    for (std::size_t j = 0; j < m; ++j) {
        std::uint64_t c1 = 0;
        std::uint64_t c2 = 0;
        for (std::uint64_t k = 0; k < chunks; ++k) {
            c1 += counts[static_cast<std::size_t>(k) * m + j][0];
            c2 += counts[static_cast<std::size_t>(k) * m + j][1];
        }
        out.emplace_back(make_estimate(c1, mc.n_samples), make_estimate(c2, mc.n_samples));
    }
    return out;
}

EstimatePair estimate_outage(const channel::LinkBudget& link1, const channel::LinkBudget& link2,
                             const noma::QosThresholds& thr, const channel::TurbulenceParams& t,
                             noma::Scheme scheme, noma::SicAssumption sic, const McConfig& mc) {
    return estimate_outage(link1, link2, thr, t, std::vector<noma::SchemeSpec>{{scheme, sic}}, mc).front();
}

void LinkScenario::validate() const {
    if (!(kappa_per_m >= 0.0) || !std::isfinite(kappa_per_m)) throw DomainError("scenario: kappa must be >= 0");
    if (!(d1_m > 0.0 && d2_m > 0.0) || !std::isfinite(d1_m) || !std::isfinite(d2_m)) {
        throw DomainError("scenario: distances must be positive");
    }
    if (!(rate1 >= 0.0 && rate2 >= 0.0)) throw DomainError("scenario: target rates must be non-negative");
    optics.validate();
    turbulence.validate();
}

std::vector<SweepRow> sweep_power(const LinkScenario& scenario, const std::vector<double>& powers_dbm,
                                  const std::vector<noma::SchemeSpec>& schemes, const McConfig& mc,
                                  const SweepOptions& options) {
    scenario.validate();
    mc.validate();
    if (powers_dbm.empty()) throw DomainError("sweep_power: power list is empty");
    if (schemes.empty()) throw DomainError("sweep_power: scheme list is empty");
    const noma::QosThresholds thr = noma::thresholds_from_rates(scenario.rate1, scenario.rate2);
    const analysis::QuadratureControl q =
        options.analysis ? analysis::resolve_cutoff(options.quadrature, scenario.turbulence) : options.quadrature;
    const double floor_events = 10.0;

    std::vector<SweepRow> rows;
    rows.reserve(powers_dbm.size() * schemes.size() * 2);
    for (const double p : powers_dbm) {
        const auto l1 = channel::link_budget(p, scenario.kappa_per_m, scenario.d1_m, scenario.optics);
        const auto l2 = channel::link_budget(p, scenario.kappa_per_m, scenario.d2_m, scenario.optics);
        const auto est = estimate_outage(l1, l2, thr, scenario.turbulence, schemes, mc);

        std::optional<analysis::OutagePair> exact;
        std::optional<std::pair<analysis::AsymptoticOutage, analysis::AsymptoticOutage>> asym;
        for (std::size_t j = 0; j < schemes.size(); ++j) {
            const bool optimal = schemes[j].scheme == noma::Scheme::OptimalDynamicNoma;
            if (optimal && options.analysis && !exact) {
                exact = analysis::outage_exact(l1, l2, thr, scenario.turbulence, q);
                asym = analysis::outage_asymptotic(l1, l2, thr, scenario.turbulence, q);
            }
            for (int bs = 1; bs <= 2; ++bs) {
                SweepRow row;
                row.power_dbm = p;
                row.spec = schemes[j];
                row.bs = bs;
                row.mc = bs == 1 ? est[j].first : est[j].second;
                row.tail_floor = static_cast<double>(row.mc.events) < floor_events;
                if (optimal && exact) {
                    row.quad = bs == 1 ? exact->bs1 : exact->bs2;
                    row.asymptotic = bs == 1 ? asym->first.value : asym->second.value;
                }
                rows.push_back(row);
            }
        }
    }
    return rows;
}

}  // namespace fsonoma::montecarlo

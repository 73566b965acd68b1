#include <doctest.h>

#include <cmath>
#include <vector>

#include "fsonoma/analysis.hpp"
#include "fsonoma/montecarlo.hpp"

using namespace fsonoma;
using namespace fsonoma::montecarlo;
using noma::Scheme;
using noma::SicAssumption;

namespace {

const channel::TurbulenceParams kBaseline{2.23, 1.54};
const channel::OpticsParams kOptics;

channel::LinkBudget link(double p_dbm, double d) { return channel::link_budget(p_dbm, 4.2e-3, d, kOptics); }

McConfig config(std::uint64_t n, std::uint64_t seed, unsigned workers = 1, std::uint64_t chunk = 4096) {
    McConfig mc;
    mc.n_samples = n;
    mc.seed = seed;
    mc.workers = workers;
    mc.chunk_size = chunk;
    return mc;
}

}  // namespace

TEST_SUITE("montecarlo") {
    TEST_CASE("standard error rules") {
        const auto zero = make_estimate(0, 1000);
        CHECK(zero.p_hat == 0.0);
        CHECK(zero.std_error == doctest::Approx(3e-3));
        const auto all = make_estimate(1000, 1000);
        CHECK(all.p_hat == 1.0);
        CHECK(all.std_error == doctest::Approx(3e-3));
        const auto mid = make_estimate(250, 1000);
        CHECK(mid.std_error == doctest::Approx(std::sqrt(0.25 * 0.75 / 1000.0)).epsilon(1e-14));
        CHECK_THROWS_AS(make_estimate(5, 4), DomainError);
        CHECK_THROWS_AS(make_estimate(0, 0), DomainError);
    }

    TEST_CASE("zero thresholds give no outage, zero SNR gives certain outage") {
        const auto none = estimate_outage(link(20.0, 1000.0), link(20.0, 2000.0), noma::thresholds_from_rates(0.0, 0.0),
                                          kBaseline, Scheme::OptimalDynamicNoma, SicAssumption::Imperfect,
                                          config(20000, 3));
        CHECK(none.first.events == 0);
        CHECK(none.second.events == 0);
        channel::LinkBudget dead;  // e = 0
        const auto all = estimate_outage(dead, dead, noma::thresholds_from_rates(0.1, 0.5), kBaseline,
                                         Scheme::OptimalDynamicNoma, SicAssumption::Imperfect, config(20000, 3));
        CHECK(all.first.p_hat == 1.0);
        CHECK(all.second.p_hat == 1.0);
    }

    TEST_CASE("results do not depend on the worker count") {
        const auto thr = noma::thresholds_from_rates(0.1, 0.5);
        const std::vector<noma::SchemeSpec> specs{{Scheme::OptimalDynamicNoma}, {Scheme::FixedNoma},
                                                  {Scheme::SortedDynamicNoma}, {Scheme::Oma},
                                                  {Scheme::InterferenceFreeBound}};
        const auto ref = estimate_outage(link(10.0, 1000.0), link(10.0, 2000.0), thr, kBaseline, specs,
                                         config(100000, 9, 1, 1000));
        for (unsigned w : {2u, 3u, 7u}) {
            const auto got = estimate_outage(link(10.0, 1000.0), link(10.0, 2000.0), thr, kBaseline, specs,
                                             config(100000, 9, w, 1000));
            for (std::size_t j = 0; j < specs.size(); ++j) {
                CAPTURE(w);
                CHECK(got[j].first.events == ref[j].first.events);
                CHECK(got[j].second.events == ref[j].second.events);
            }
        }
        const auto other = estimate_outage(link(10.0, 1000.0), link(10.0, 2000.0), thr, kBaseline, specs,
                                           config(100000, 10, 1, 1000));
        CHECK(other[0].first.events != ref[0].first.events);
    }

    TEST_CASE("chunk draws are reproducible and chunks are distinct") {
        const auto mc = config(10, 4, 1, 5);
        std::vector<double> a;
        std::vector<double> b;
        for_each_draw_in_chunk(kBaseline, mc, 0, [&](double h1, double h2) {
            a.push_back(h1);
            a.push_back(h2);
        });
        for_each_draw_in_chunk(kBaseline, mc, 0, [&](double h1, double h2) {
            b.push_back(h1);
            b.push_back(h2);
        });
        CHECK(a == b);
        CHECK(a.size() == 10);
        std::vector<double> c;
        for_each_draw_in_chunk(kBaseline, mc, 1, [&](double h1, double) { c.push_back(h1); });
        CHECK(c.size() == 5);
        CHECK(c.front() != a.front());
        int beyond = 0;
        for_each_draw_in_chunk(kBaseline, mc, 2, [&](double, double) { ++beyond; });
        CHECK(beyond == 0);
    }

    TEST_CASE("optimal scheme estimate agrees with the exact outage") {
        const auto thr = noma::thresholds_from_rates(0.1, 0.5);
        const auto l1 = link(20.0, 1000.0);
        const auto l2 = link(20.0, 2000.0);
        const auto exact = analysis::outage_exact(l1, l2, thr, kBaseline);
        for (auto sic : {SicAssumption::Imperfect, SicAssumption::WorstCase}) {
            const auto est = estimate_outage(l1, l2, thr, kBaseline, Scheme::OptimalDynamicNoma, sic, config(1000000, 5, 0));
            CHECK(std::fabs(est.first.p_hat - exact.bs1) <= 3.0 * est.first.std_error);
            CHECK(std::fabs(est.second.p_hat - exact.bs2) <= 3.0 * est.second.std_error);
        }
    }

    TEST_CASE("confidence intervals cover the exact outage at the nominal rate") {
        const auto thr = noma::thresholds_from_rates(0.1, 0.5);
        const auto l1 = link(10.0, 1000.0);
        const auto l2 = link(10.0, 2000.0);
        const auto exact = analysis::outage_exact(l1, l2, thr, kBaseline);
        int covered = 0;
        for (std::uint64_t seed = 1; seed <= 100; ++seed) {
            const auto est = estimate_outage(l1, l2, thr, kBaseline, Scheme::OptimalDynamicNoma,
                                             SicAssumption::Imperfect, config(10000, seed));
            covered += std::fabs(est.second.p_hat - exact.bs2) <= 1.96 * est.second.std_error;
        }
        // 95% nominal; the binomial 99.9% band for 100 trials is about [87, 100].
        CHECK(covered >= 87);
    }

    TEST_CASE("common draws order the schemes pointwise") {
        const auto thr = noma::thresholds_from_rates(0.1, 0.5);
        const std::vector<noma::SchemeSpec> specs{{Scheme::InterferenceFreeBound}, {Scheme::OptimalDynamicNoma},
                                                  {Scheme::FixedNoma}, {Scheme::SortedDynamicNoma}};
        for (double p : {0.0, 10.0, 20.0, 30.0}) {
            const auto est = estimate_outage(link(p, 1000.0), link(p, 2000.0), thr, kBaseline, specs,
                                             config(200000, 11, 0));
            CAPTURE(p);
            for (std::size_t j = 2; j < specs.size(); ++j) {
                CHECK(est[0].first.events <= est[1].first.events);
                CHECK(est[0].second.events <= est[1].second.events);
                CHECK(est[1].first.events <= est[j].first.events);
                CHECK(est[1].second.events <= est[j].second.events);
            }
        }
    }

    TEST_CASE("sweep rows") {
        LinkScenario sc;
        const std::vector<noma::SchemeSpec> specs{{Scheme::OptimalDynamicNoma}, {Scheme::Oma}};
        const auto mc = config(50000, 21, 0);
        const auto rows = sweep_power(sc, {0.0, 10.0, 20.0, 30.0}, specs, mc);
        REQUIRE(rows.size() == 4 * 2 * 2);
        CHECK(rows[0].power_dbm == 0.0);
        CHECK(rows[0].bs == 1);
        CHECK(rows[1].bs == 2);
        CHECK(rows[2].spec.scheme == Scheme::Oma);
        CHECK(rows[0].quad.has_value());
        CHECK(rows[0].asymptotic.has_value());
        CHECK_FALSE(rows[2].quad.has_value());

        const auto single = estimate_outage(channel::link_budget(10.0, sc.kappa_per_m, sc.d1_m, sc.optics),
                                            channel::link_budget(10.0, sc.kappa_per_m, sc.d2_m, sc.optics),
                                            noma::thresholds_from_rates(sc.rate1, sc.rate2), sc.turbulence,
                                            Scheme::OptimalDynamicNoma, SicAssumption::Imperfect, mc);
        CHECK(rows[4].mc.events == single.first.events);
        CHECK(rows[5].mc.events == single.second.events);

        // Shared fades make the estimates monotone in power.
        for (std::size_t i = 4; i < rows.size(); ++i) CHECK(rows[i].mc.events <= rows[i - 4].mc.events);
        for (const auto& r : rows) CHECK(r.tail_floor == (r.mc.events < 10));

        const auto no_analysis = sweep_power(sc, {10.0}, specs, mc, SweepOptions{false, {}});
        CHECK_FALSE(no_analysis[0].quad.has_value());
        CHECK_THROWS_AS(sweep_power(sc, {}, specs, mc), DomainError);
        CHECK_THROWS_AS(sweep_power(sc, {0.0}, {}, mc), DomainError);
    }

    TEST_CASE("tail floor flag at high power") {
        LinkScenario sc;
        const auto rows = sweep_power(sc, {60.0}, {{Scheme::OptimalDynamicNoma}}, config(10000, 2, 0));
        CHECK(rows[0].tail_floor);
        CHECK(rows[0].quad.value() > 0.0);
    }

    TEST_CASE("configuration validation") {
        CHECK_THROWS_AS(config(0, 1).validate(), DomainError);
        CHECK_THROWS_AS(config(10, 1, 1, 0).validate(), DomainError);
        LinkScenario sc;
        sc.d1_m = 0.0;
        CHECK_THROWS_AS(sc.validate(), DomainError);
        sc = {};
        sc.turbulence = {2.0, 1.0};
        CHECK_THROWS_AS(sc.validate(), DomainError);
    }
}

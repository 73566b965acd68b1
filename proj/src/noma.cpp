#include "fsonoma/noma.hpp"

#include <cctype>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "fsonoma/errors.hpp"

namespace fsonoma::noma {

namespace {

constexpr double kSnrScale = std::numbers::e / (2.0 * std::numbers::pi);

std::string lower(std::string_view s) {
    std::string out(s);
    for (char& ch : out) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    return out;
}

}  // namespace

double rate(double sinr) {
    if (!(sinr >= 0.0)) throw DomainError("rate: SINR must be non-negative");
    return 0.5 * std::log2(1.0 + kSnrScale * sinr);
}

double threshold_from_rate(double rate_bits) {
    if (!(rate_bits >= 0.0)) throw DomainError("threshold_from_rate: rate must be non-negative");
    return std::expm1(2.0 * rate_bits * std::numbers::ln2) / kSnrScale;
}

QosThresholds thresholds_from_rates(double rate1, double rate2) {
    return {threshold_from_rate(rate1), threshold_from_rate(rate2), rate1, rate2};
}

double critical_rate() { return 0.5 * std::log2(1.0 + kSnrScale); }

Sinr sinr(const ChannelDraw& draw, DecodingOrder order, SicAssumption sic, bool first_decoded) {
    const bool one_first = order.first == 1;
    const double g_first = one_first ? draw.gamma1 : draw.gamma2;
    const double g_second = one_first ? draw.gamma2 : draw.gamma1;
    const double s = first_decoded ? 1.0 : 0.0;
    const double sinr_first = g_first / (g_second + 1.0);
    double sinr_second = g_second;
    switch (sic) {
        case SicAssumption::Perfect:
            break;
        case SicAssumption::Imperfect:
            sinr_second = g_second / ((1.0 - s) * g_first + 1.0);
            break;
        case SicAssumption::WorstCase:
            sinr_second = s * g_second;
            break;
    }
    return one_first ? Sinr{sinr_first, sinr_second} : Sinr{sinr_second, sinr_first};
}

DecodingOrder optimal_order(const ChannelDraw& draw, const QosThresholds& thr) {
    const bool ok1 = draw.gamma1 / (draw.gamma2 + 1.0) >= thr.gamma1_thr;
    const bool ok2 = draw.gamma2 / (draw.gamma1 + 1.0) >= thr.gamma2_thr;
    if (!ok1 && ok2) return kOrder21;
    return kOrder12;
}

OutageEvents outage_with_order(const ChannelDraw& draw, const QosThresholds& thr, DecodingOrder order,
                               SicAssumption sic) {
    const bool one_first = order.first == 1;
    const double g_first = one_first ? draw.gamma1 : draw.gamma2;
    const double g_second = one_first ? draw.gamma2 : draw.gamma1;
    const double thr_first = one_first ? thr.gamma1_thr : thr.gamma2_thr;
    const bool decoded = g_first / (g_second + 1.0) >= thr_first;
    const Sinr g = sinr(draw, order, sic, decoded);
    return {g.bs1 < thr.gamma1_thr, g.bs2 < thr.gamma2_thr};
}

OutageEvents outage_events(const ChannelDraw& draw, const QosThresholds& thr, Scheme scheme, SicAssumption sic) {
    switch (scheme) {
        case Scheme::OptimalDynamicNoma:
            return outage_with_order(draw, thr, optimal_order(draw, thr), sic);
        case Scheme::FixedNoma:
            return outage_with_order(draw, thr, kOrder12, sic);
        case Scheme::SortedDynamicNoma:
            return outage_with_order(draw, thr, draw.gamma1 >= draw.gamma2 ? kOrder12 : kOrder21, sic);
        case Scheme::Oma:
            // Half the time per BS, so each must carry twice its target rate.
            return {draw.gamma1 < threshold_from_rate(2.0 * thr.rate1),
                    draw.gamma2 < threshold_from_rate(2.0 * thr.rate2)};
        case Scheme::InterferenceFreeBound:
            return {draw.gamma1 < thr.gamma1_thr, draw.gamma2 < thr.gamma2_thr};
    }
    throw std::logic_error("outage_events: unknown scheme");
}

std::string_view to_string(Scheme scheme) {
    switch (scheme) {
        case Scheme::OptimalDynamicNoma:
            return "optimal";
        case Scheme::FixedNoma:
            return "fixed";
        case Scheme::SortedDynamicNoma:
            return "sorted";
        case Scheme::Oma:
            return "oma";
        case Scheme::InterferenceFreeBound:
            return "bound";
    }
    return "unknown";
}

std::string_view to_string(SicAssumption sic) {
    switch (sic) {
        case SicAssumption::Perfect:
            return "perfect";
        case SicAssumption::Imperfect:
            return "imperfect";
        case SicAssumption::WorstCase:
            return "worstcase";
    }
    return "unknown";
}

Scheme parse_scheme(std::string_view name) {
    const std::string n = lower(name);
    if (n == "optimal" || n == "optimaldynamicnoma") return Scheme::OptimalDynamicNoma;
    if (n == "fixed" || n == "fixednoma") return Scheme::FixedNoma;
    if (n == "sorted" || n == "sorteddynamicnoma") return Scheme::SortedDynamicNoma;
    if (n == "oma") return Scheme::Oma;
    if (n == "bound" || n == "interferencefreebound") return Scheme::InterferenceFreeBound;
    throw std::invalid_argument("unknown scheme '" + std::string(name) + "'");
}

SicAssumption parse_sic(std::string_view name) {
    const std::string n = lower(name);
    if (n == "perfect") return SicAssumption::Perfect;
    if (n == "imperfect") return SicAssumption::Imperfect;
    if (n == "worstcase" || n == "worst-case" || n == "worst") return SicAssumption::WorstCase;
    throw std::invalid_argument("unknown SIC assumption '" + std::string(name) + "'");
}

}  // namespace fsonoma::noma

#pragma once

// Two-transmitter uplink NOMA at a single central unit: SINR per decoding
// order and SIC model, rate thresholds, the QoS-aware decoding-order policy,
// and per-scheme outage events for one channel realisation.

#include <string>
#include <string_view>
#include <vector>

namespace fsonoma::noma {

enum class SicAssumption { Perfect, Imperfect, WorstCase };

enum class Scheme { OptimalDynamicNoma, FixedNoma, SortedDynamicNoma, Oma, InterferenceFreeBound };

inline constexpr SicAssumption kAllSic[] = {SicAssumption::Perfect, SicAssumption::Imperfect,
                                            SicAssumption::WorstCase};
inline constexpr Scheme kAllSchemes[] = {Scheme::OptimalDynamicNoma, Scheme::FixedNoma, Scheme::SortedDynamicNoma,
                                         Scheme::Oma, Scheme::InterferenceFreeBound};

/// BS `first` is decoded first; {first, second} == {1, 2}.
struct DecodingOrder {
    int first = 1;
    int second = 2;

    friend bool operator==(const DecodingOrder&, const DecodingOrder&) = default;
};

inline constexpr DecodingOrder kOrder12{1, 2};
inline constexpr DecodingOrder kOrder21{2, 1};

/// Electrical SNRs gamma_i = e_i h_i^2 of one realisation; both >= 0.
struct ChannelDraw {
    double gamma1 = 0.0;
    double gamma2 = 0.0;
};

struct QosThresholds {
    double gamma1_thr = 0.0;
    double gamma2_thr = 0.0;
    double rate1 = 0.0;  // bits/symbol
    double rate2 = 0.0;
};

struct Sinr {
    double bs1 = 0.0;
    double bs2 = 0.0;
};

/// Scheme together with the SIC model its NOMA decoding assumes.
struct SchemeSpec {
    Scheme scheme = Scheme::OptimalDynamicNoma;
    SicAssumption sic = SicAssumption::Imperfect;
};

/// true = outage.
struct OutageEvents {
    bool oe1 = false;
    bool oe2 = false;

    friend bool operator==(const OutageEvents&, const OutageEvents&) = default;
};

/// IM/DD capacity lower bound (1/2) log2(1 + e Gamma / (2 pi)).
double rate(double sinr);

/// Inverse of rate(): (2 pi / e)(2^(2R) - 1). R >= 0.
double threshold_from_rate(double rate_bits);

/// Thresholds for target rates R1, R2 >= 0.
QosThresholds thresholds_from_rates(double rate1, double rate2);

/// Rate at which threshold_from_rate equals 1.
double critical_rate();

/// SINRs under decoding order `order`. `first_decoded` reports whether the
/// first decoding succeeded; it only affects the second-decoded BS:
///   Perfect:   gamma
///   Imperfect: gamma / ((1 - s) gamma_other + 1)
///   WorstCase: s * gamma
Sinr sinr(const ChannelDraw& draw, DecodingOrder order, SicAssumption sic, bool first_decoded);

/// (1,2) if only BS1 is decodable first, (2,1) if only BS2 is, else (1,2).
/// Decodable first means gamma_i / (gamma_other + 1) >= thr_i.
DecodingOrder optimal_order(const ChannelDraw& draw, const QosThresholds& thr);

/// Outage events of one realisation with the decoding order forced.
OutageEvents outage_with_order(const ChannelDraw& draw, const QosThresholds& thr, DecodingOrder order,
                               SicAssumption sic);

OutageEvents outage_events(const ChannelDraw& draw, const QosThresholds& thr, Scheme scheme, SicAssumption sic);

std::string_view to_string(Scheme scheme);
std::string_view to_string(SicAssumption sic);

/// Accepts the to_string names and the short aliases optimal, fixed,
/// sorted, oma, bound. Throws std::invalid_argument otherwise.
Scheme parse_scheme(std::string_view name);
SicAssumption parse_sic(std::string_view name);

}  // namespace fsonoma::noma

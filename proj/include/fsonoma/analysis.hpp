#pragma once

// Semi-analytical outage of the optimal dynamic NOMA policy: exact values
// from one-dimensional integrals over the Gamma-Gamma law, and high-SNR
// closed forms.

#include <utility>

#include "fsonoma/channel.hpp"
#include "fsonoma/noma.hpp"

namespace fsonoma::analysis {

/// Quadrature budget. upper_cutoff <= 0 selects the default: the point
/// where the Gamma-Gamma survival function drops to min(1e-12, abs_tol / 10).
struct QuadratureControl {
    double abs_tol = 1e-14;
    double rel_tol = 1e-9;
    int max_subdivisions = 2000;
    double upper_cutoff = 0.0;

    void validate() const;
};

/// Copy of `q` with upper_cutoff filled in for turbulence `t`.
QuadratureControl resolve_cutoff(const QuadratureControl& q, const channel::TurbulenceParams& t);

/// Pr(a X^2 / (b Y^2 + 1) >= c, b Y^2 < d) for iid Gamma-Gamma X, Y.
/// a, b > 0; c, d >= 0.
double f1_integral(double a, double b, double c, double d, const channel::TurbulenceParams& t,
                   const QuadratureControl& q = {});

/// Pr(a X^2 / (b Y^2 + 1) <= c, b Y^2 / (a X^2 + 1) <= d). For fixed Y = y the
/// admissible X form the interval (l(y), u(y)], nonempty for y below
/// zeta = sqrt(d (1 + c) / (b (1 - c d))) when c d < 1 and for every y
/// otherwise.
double f2_integral(double a, double b, double c, double d, const channel::TurbulenceParams& t,
                   const QuadratureControl& q = {});

struct OutagePair {
    double bs1 = 0.0;
    double bs2 = 0.0;
};

/// Outage of both BSs under the optimal policy (any SIC model that puts
/// both BSs in outage when neither is decodable first). e_i > 0.
OutagePair outage_exact(const channel::LinkBudget& link1, const channel::LinkBudget& link2,
                        const noma::QosThresholds& thr, const channel::TurbulenceParams& t,
                        const QuadratureControl& q = {});

/// Small-argument Gamma-Gamma CDF, x = alpha beta h:
/// [G(b-a) x^a / a + G(a-b) x^b / b] / (G(a) G(b)).
double F1_series(double x, const channel::TurbulenceParams& t);

/// Pr(X / Y <= x) for iid Gamma-Gamma X, Y.
double F2_ratio_cdf(double x, const channel::TurbulenceParams& t, const QuadratureControl& q = {});

enum class Regime { NoFloor, Floor };

struct AsymptoticOutage {
    Regime regime = Regime::NoFloor;
    double value = 0.0;
};

/// Regime from the threshold product: Floor iff thr1 * thr2 >= 1, allowing
/// 1e-12 of rounding.
Regime classify(const noma::QosThresholds& thr);

/// High-SNR outage for equal transmit powers (e_i / c_i equal for both
/// links, else DomainError).
///   NoFloor: P_i ~ F1(alpha beta sqrt(thr_i / e_i))
///   Floor:   P_1 = P_2 = F2(sqrt(k thr1)) - F2(sqrt(k / thr2)), k = c2 / c1
std::pair<AsymptoticOutage, AsymptoticOutage> outage_asymptotic(const channel::LinkBudget& link1,
                                                                const channel::LinkBudget& link2,
                                                                const noma::QosThresholds& thr,
                                                                const channel::TurbulenceParams& t,
                                                                const QuadratureControl& q = {});

}  // namespace fsonoma::analysis

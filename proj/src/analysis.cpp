#include "fsonoma/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fsonoma/quadrature.hpp"

namespace fsonoma::analysis {

namespace {

// Rounding allowance so that rates at exactly the critical rate classify
// as Floor.
constexpr double kRegimeSlack = 1e-12;

quad::Options options(const QuadratureControl& q) { return {q.abs_tol, q.rel_tol, q.max_subdivisions}; }

void check_coefficients(double a, double b, double c, double d) {
    if (!(a > 0.0 && b > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
        throw DomainError("region integral: SNR coefficients must be positive and finite");
    }
    if (!(c >= 0.0 && d >= 0.0)) throw DomainError("region integral: thresholds must be non-negative");
}

// Integral over [lo, hi] clipped to [0, cutoff].
template <class F>
double integrate_clipped(F&& f, double lo, double hi, const QuadratureControl& q) {
    lo = std::max(lo, 0.0);
    hi = std::min(hi, q.upper_cutoff);
    if (!(hi > lo)) return 0.0;
    return quad::integrate(f, lo, hi, options(q)).value;
}

}  // namespace

void QuadratureControl::validate() const {
    if (!(abs_tol > 0.0 && abs_tol < 1.0)) throw DomainError("quadrature: abs_tol must lie in (0, 1)");
    if (!(rel_tol > 0.0 && rel_tol < 1.0)) throw DomainError("quadrature: rel_tol must lie in (0, 1)");
    if (max_subdivisions < 1) throw DomainError("quadrature: max_subdivisions must be >= 1");
    if (!std::isfinite(upper_cutoff)) throw DomainError("quadrature: upper_cutoff must be finite");
}

QuadratureControl resolve_cutoff(const QuadratureControl& q, const channel::TurbulenceParams& t) {
    q.validate();
    if (q.upper_cutoff > 0.0) return q;
    QuadratureControl out = q;
    out.upper_cutoff = channel::GammaGamma(t).upper_quantile(std::min(1e-12, q.abs_tol / 10.0));
    return out;
}

double f1_integral(double a, double b, double c, double d, const channel::TurbulenceParams& t,
                   const QuadratureControl& q_in) {
    check_coefficients(a, b, c, d);
    if (d == 0.0) return 0.0;
    const QuadratureControl q = resolve_cutoff(q_in, t);
    const channel::GammaGamma gg(t);
    const double y_max = std::sqrt(d / b);
    if (c == 0.0) return y_max >= q.upper_cutoff ? 1.0 : gg.cdf(y_max);
    auto integrand = [&](double y) {
        if (!(y > 0.0)) return 0.0;
        return gg.survival(std::sqrt(c * (b * y * y + 1.0) / a)) * gg.pdf(y);
    };
    return std::clamp(integrate_clipped(integrand, 0.0, y_max, q), 0.0, 1.0);
}

double f2_integral(double a, double b, double c, double d, const channel::TurbulenceParams& t,
                   const QuadratureControl& q_in) {
    check_coefficients(a, b, c, d);
    if (c == 0.0 || d == 0.0) return 0.0;
    const QuadratureControl q = resolve_cutoff(q_in, t);
    const channel::GammaGamma gg(t);
    const double kink = std::sqrt(d / b);
    const double zeta = c * d < 1.0 ? std::sqrt(d * (1.0 + c) / (b * (1.0 - c * d))) : q.upper_cutoff;
    auto integrand = [&](double y) {
        if (!(y > 0.0)) return 0.0;
        const double by2 = b * y * y;
        const double upper = std::sqrt(c * (by2 + 1.0) / a);
        const double lower = by2 > d ? std::sqrt((by2 / d - 1.0) / a) : 0.0;
        return gg.between(lower, upper) * gg.pdf(y);
    };
    // The lower limit l(y) has a kink where b y^2 = d.
    const double inner = integrate_clipped(integrand, 0.0, std::min(kink, zeta), q);
    const double outer = integrate_clipped(integrand, kink, zeta, q);
    return std::clamp(inner + outer, 0.0, 1.0);
}

OutagePair outage_exact(const channel::LinkBudget& link1, const channel::LinkBudget& link2,
                        const noma::QosThresholds& thr, const channel::TurbulenceParams& t,
                        const QuadratureControl& q_in) {
    const QuadratureControl q = resolve_cutoff(q_in, t);
    const double e1 = link1.e;
    const double e2 = link2.e;
    const double t1 = thr.gamma1_thr;
    const double t2 = thr.gamma2_thr;
    const double none_first = f2_integral(e1, e2, t1, t2, t, q);
    const double only_bs2_first = f1_integral(e2, e1, t2, t1, t, q);
    const double only_bs1_first = f1_integral(e1, e2, t1, t2, t, q);
    return {std::min(1.0, none_first + only_bs2_first), std::min(1.0, none_first + only_bs1_first)};
}

double F1_series(double x, const channel::TurbulenceParams& t) { return channel::GammaGamma(t).leading_terms(x); }

double F2_ratio_cdf(double x, const channel::TurbulenceParams& t, const QuadratureControl& q_in) {
    if (!(x >= 0.0)) throw DomainError("F2_ratio_cdf: argument must be non-negative");
    if (x == 0.0) return 0.0;
    if (std::isinf(x)) return 1.0;
    const QuadratureControl q = resolve_cutoff(q_in, t);
    const channel::GammaGamma gg(t);
    // Integrate whichever tail of X is small so that the result keeps
    // relative accuracy on both sides of x = 1.
    const bool upper = x > 1.0;
    auto integrand = [&](double y) {
        if (!(y > 0.0)) return 0.0;
        const double h = x * y;
        return (upper ? gg.survival(h) : gg.cdf(h)) * gg.pdf(y);
    };
    // Most of the mass of Y lies well below 4; split there to help the
    // adaptive rule find the peak.
    const double split = std::min(4.0, q.upper_cutoff);
    const double v = integrate_clipped(integrand, 0.0, split, q) + integrate_clipped(integrand, split, q.upper_cutoff, q);
    return std::clamp(upper ? 1.0 - v : v, 0.0, 1.0);
}

Regime classify(const noma::QosThresholds& thr) {
    return thr.gamma1_thr * thr.gamma2_thr >= 1.0 - kRegimeSlack ? Regime::Floor : Regime::NoFloor;
}

std::pair<AsymptoticOutage, AsymptoticOutage> outage_asymptotic(const channel::LinkBudget& link1,
                                                                const channel::LinkBudget& link2,
                                                                const noma::QosThresholds& thr,
                                                                const channel::TurbulenceParams& t,
                                                                const QuadratureControl& q) {
    if (!(link1.c > 0.0 && link2.c > 0.0 && link1.e > 0.0 && link2.e > 0.0)) {
        throw DomainError("outage_asymptotic: link coefficients must be positive");
    }
    const double snr1 = link1.e / link1.c;
    const double snr2 = link2.e / link2.c;
    if (std::fabs(snr1 - snr2) > 1e-9 * std::max(snr1, snr2)) {
        throw DomainError("outage_asymptotic: transmit powers must be equal (e/c differs: " + std::to_string(snr1) +
                          " vs " + std::to_string(snr2) + ")");
    }
    const Regime regime = classify(thr);
    if (regime == Regime::NoFloor) {
        const double ab = t.alpha * t.beta;
        const channel::GammaGamma gg(t);
        const double p1 = gg.leading_terms(ab * std::sqrt(thr.gamma1_thr / link1.e));
        const double p2 = gg.leading_terms(ab * std::sqrt(thr.gamma2_thr / link2.e));
        return {{regime, p1}, {regime, p2}};
    }
    const double k = link2.c / link1.c;
    const double floor = F2_ratio_cdf(std::sqrt(k * thr.gamma1_thr), t, q) -
                         F2_ratio_cdf(std::sqrt(k / thr.gamma2_thr), t, q);
    return {{regime, floor}, {regime, floor}};
}

}  // namespace fsonoma::analysis

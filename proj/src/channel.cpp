#include "fsonoma/channel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "fsonoma/quadrature.hpp"

namespace fsonoma::channel {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

bool positive_finite(double v) { return v > 0.0 && std::isfinite(v); }

}  // namespace

void OpticsParams::validate() const {
    if (!positive_finite(responsivity)) throw DomainError("optics: responsivity must be positive");
    if (!positive_finite(aperture_radius_m)) throw DomainError("optics: aperture radius must be positive");
    if (!positive_finite(divergence_rad)) throw DomainError("optics: divergence angle must be positive");
    if (!positive_finite(noise_variance)) throw DomainError("optics: noise variance must be positive");
}

void TurbulenceParams::validate() const {
    if (!positive_finite(alpha) || !positive_finite(beta)) {
        throw DomainError("turbulence: alpha and beta must be positive");
    }
    const double diff = alpha - beta;
    if (std::fabs(diff - std::nearbyint(diff)) < specfun::kIntegerOrderGuard) {
        throw DomainError("turbulence: alpha - beta must not be an integer (alpha = " + std::to_string(alpha) +
                          ", beta = " + std::to_string(beta) + ")");
    }
}

double path_loss(double kappa_per_m, double distance_m) {
    if (!(kappa_per_m >= 0.0) || !(distance_m >= 0.0)) {
        throw DomainError("path_loss: attenuation and distance must be non-negative");
    }
    return std::pow(10.0, -kappa_per_m * distance_m / 10.0);
}

double geometric_loss(double aperture_radius_m, double divergence_rad, double distance_m) {
    if (!(aperture_radius_m > 0.0) || !(divergence_rad > 0.0) || !(distance_m > 0.0)) {
        throw DomainError("geometric_loss: radius, divergence and distance must be positive");
    }
    const double arg =
        std::sqrt(std::numbers::pi) * aperture_radius_m / (std::sqrt(2.0) * divergence_rad * distance_m);
    const double v = specfun::erf(arg);
    return v * v;
}

double dbm_to_watt(double power_dbm) { return std::pow(10.0, (power_dbm - 30.0) / 10.0); }

LinkBudget link_budget(double power_dbm, double kappa_per_m, double distance_m, const OpticsParams& optics) {
    optics.validate();
    if (!std::isfinite(power_dbm)) throw DomainError("link_budget: power must be finite");
    LinkBudget lb;
    lb.path_loss = path_loss(kappa_per_m, distance_m);
    lb.geo_loss = geometric_loss(optics.aperture_radius_m, optics.divergence_rad, distance_m);
    const double gain = optics.responsivity * lb.path_loss * lb.geo_loss;
    lb.c = gain * gain;
    const double watt = dbm_to_watt(power_dbm);
    lb.e = watt * watt * lb.c / optics.noise_variance;
    return lb;
}

GammaGamma::GammaGamma(TurbulenceParams params, specfun::SeriesControl ctrl) : params_(params), ctrl_(ctrl) {
    params_.validate();
    ctrl_.validate();
    const double a = params_.alpha;
    const double b = params_.beta;
    nu_ = a - b;
    ab_ = a * b;
    const double lga = specfun::ln_gamma(a);
    const double lgb = specfun::ln_gamma(b);
    log_norm_ = std::log(2.0) + 0.5 * (a + b) * std::log(ab_) - lga - lgb;
    const double inv_norm = std::exp(-(lga + lgb));
    coef_alpha_ = specfun::gamma(b - a) / a * inv_norm;
    coef_beta_ = specfun::gamma(a - b) / b * inv_norm;
}

double GammaGamma::pdf(double h) const {
    if (!(h > 0.0)) throw DomainError("gg_pdf: fade must be positive, got " + std::to_string(h));
    if (std::isinf(h)) return 0.0;
    const double x = 2.0 * std::sqrt(ab_ * h);
    const double log_power = (0.5 * (params_.alpha + params_.beta) - 1.0) * std::log(h);
    if (x < 1e-10) {
        // K_nu(x) ~ Gamma(|nu|)/2 (2/x)^|nu|
        const double nu = std::fabs(nu_);
        const double log_k = specfun::ln_gamma(nu) - std::log(2.0) + nu * std::log(2.0 / x);
        return std::exp(log_norm_ + log_power + log_k);
    }
    const double k = specfun::bessel_k(nu_, x);
    if (k == 0.0) return 0.0;
    return std::exp(log_norm_ + log_power) * k;
}

double GammaGamma::leading_terms(double x) const {
    if (!(x >= 0.0)) throw DomainError("leading_terms: argument must be non-negative");
    if (x == 0.0) return 0.0;
    return coef_alpha_ * std::pow(x, params_.alpha) + coef_beta_ * std::pow(x, params_.beta);
}

bool GammaGamma::series_cdf(double h, double& value) const {
    const double a = params_.alpha;
    const double b = params_.beta;
    const double z = ab_ * h;
    // The two terms have opposite signs, so each is summed to machine
    // precision; rel_tol applies to the combined value.
    const specfun::SeriesControl full{ctrl_.max_terms, kEps};
    try {
        const auto sa = specfun::hyp1f2_sum(a, a + 1.0, a - b + 1.0, z, full);
        const auto sb = specfun::hyp1f2_sum(b, b + 1.0, b - a + 1.0, z, full);
        const double pa = coef_alpha_ * std::pow(z, a);
        const double pb = coef_beta_ * std::pow(z, b);
        value = pa * sa.value + pb * sb.value;
        const double cancellation = 8.0 * kEps * (std::fabs(pa) * sa.abs_sum + std::fabs(pb) * sb.abs_sum);
        return std::isfinite(value) && cancellation <= ctrl_.rel_tol * std::fabs(value);
    } catch (const ConvergenceError&) {
        return false;
    }
}

double GammaGamma::tail_integral(double h) const {
    quad::Options opt;
    opt.abs_tol = 0.0;
    opt.rel_tol = std::max(ctrl_.rel_tol * 0.1, 1e-13);
    opt.max_subdivisions = 4000;
    auto density = [this](double y) { return y > 0.0 ? pdf(y) : 0.0; };
    return quad::integrate_to_infinity(density, h, opt).value;
}

GammaGamma::Tails GammaGamma::tails(double h) const {
    double f = 0.0;
    if (series_cdf(h, f)) {
        f = std::clamp(f, 0.0, 1.0);
        if (f <= 0.5 || 1.0 - f >= 1e-3) return {f, 1.0 - f};
    }
    const double s = std::clamp(tail_integral(h), 0.0, 1.0);
    return {1.0 - s, s};
}

double GammaGamma::cdf(double h) const {
    if (!(h >= 0.0)) throw DomainError("gg_cdf: fade must be non-negative, got " + std::to_string(h));
    if (h == 0.0) return 0.0;
    if (std::isinf(h)) return 1.0;
    return tails(h).cdf;
}

double GammaGamma::survival(double h) const {
    if (!(h >= 0.0)) throw DomainError("gg_survival: fade must be non-negative, got " + std::to_string(h));
    if (h == 0.0) return 1.0;
    if (std::isinf(h)) return 0.0;
    return tails(h).survival;
}

double GammaGamma::between(double lo, double hi) const {
    if (!(hi > lo)) return 0.0;
    const Tails low = lo > 0.0 ? tails(lo) : Tails{0.0, 1.0};
    if (low.cdf < 0.5) return std::max(0.0, cdf(hi) - low.cdf);
    return std::max(0.0, low.survival - survival(hi));
}

double GammaGamma::upper_quantile(double tail) const {
    if (!(tail > 0.0 && tail < 1.0)) throw DomainError("upper_quantile: tail probability must lie in (0, 1)");
    double lo = 0.0;
    double hi = 1.0;
    while (survival(hi) > tail) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e12) throw ConvergenceError("upper_quantile: bracket search failed");
    }
    for (int i = 0; i < 200 && hi - lo > 1e-12 * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        (survival(mid) > tail ? lo : hi) = mid;
    }
    return hi;
}

double gg_pdf(double h, const TurbulenceParams& t) { return GammaGamma(t).pdf(h); }

double gg_cdf(double h, const TurbulenceParams& t, const specfun::SeriesControl& ctrl) {
    return GammaGamma(t, ctrl).cdf(h);
}

}  // namespace fsonoma::channel

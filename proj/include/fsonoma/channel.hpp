#pragma once

// FSO link budget (responsivity, path loss, geometric loss) and the
// Gamma-Gamma turbulence distribution.

#include <random>

#include "fsonoma/errors.hpp"
#include "fsonoma/specfun.hpp"

namespace fsonoma::channel {

/// Receiver and beam optics. All fields strictly positive.
struct OpticsParams {
    double responsivity = 0.5;       // photodetector scale factor rho
    double aperture_radius_m = 0.1;  // receive aperture radius r
    double divergence_rad = 2e-3;    // beam divergence angle phi
    double noise_variance = 1e-14;   // shot-noise variance at the receiver, A^2

    void validate() const;
};

/// Gamma-Gamma shape parameters. alpha - beta must be non-integer: the
/// distribution function is evaluated through a residue expansion that is
/// singular at integer differences.
struct TurbulenceParams {
    double alpha = 2.23;
    double beta = 1.54;

    void validate() const;
};

/// Deterministic per-link constants. The electrical SNR of a realisation
/// with turbulence fade h is gamma = e * h^2.
struct LinkBudget {
    double path_loss = 1.0;  // h_bar in (0, 1]
    double geo_loss = 1.0;   // h_hat in (0, 1]
    double e = 0.0;          // P^2 rho^2 h_bar^2 h_hat^2 / noise_variance
    double c = 0.0;          // rho^2 h_bar^2 h_hat^2, independent of power
};

/// 10^(-kappa d / 10). kappa is the attenuation per metre, d in metres.
double path_loss(double kappa_per_m, double distance_m);

/// Fraction of the beam collected by the aperture,
/// erf(sqrt(pi) r / (sqrt(2) phi d))^2.
double geometric_loss(double aperture_radius_m, double divergence_rad, double distance_m);

double dbm_to_watt(double power_dbm);

/// Link constants for optical transmit power `power_dbm`.
LinkBudget link_budget(double power_dbm, double kappa_per_m, double distance_m, const OpticsParams& optics);

/// Unit-mean Gamma-Gamma distribution with cached normalisation constants.
///
/// The distribution function uses the two-term residue expansion of the
/// Meijer-G representation,
///   F(h) = [G(b-a) z^a/a 1F2(a; a+1, a-b+1; z) + G(a-b) z^b/b 1F2(b; b+1, b-a+1; z)] / (G(a) G(b)),
/// z = a b h. For large z the two terms cancel; once the cancellation bound
/// exceeds the series tolerance the complement is integrated from the tail
/// of the density instead.
class GammaGamma {
public:
    explicit GammaGamma(TurbulenceParams params, specfun::SeriesControl ctrl = {});

    [[nodiscard]] const TurbulenceParams& params() const noexcept { return params_; }
    [[nodiscard]] const specfun::SeriesControl& series_control() const noexcept { return ctrl_; }

    [[nodiscard]] double pdf(double h) const;
    [[nodiscard]] double cdf(double h) const;
    /// 1 - cdf(h), accurate to relative precision deep in the upper tail.
    [[nodiscard]] double survival(double h) const;
    /// Pr(lo < H <= hi) without cancellation when both ends sit in the tail.
    [[nodiscard]] double between(double lo, double hi) const;
    /// Smallest h with survival(h) <= tail, by bisection.
    [[nodiscard]] double upper_quantile(double tail) const;

    /// Leading small-argument terms of the residue expansion,
    /// [G(b-a) x^a / a + G(a-b) x^b / b] / (G(a) G(b)), with x = a b h.
    [[nodiscard]] double leading_terms(double x) const;

private:
    struct Tails {
        double cdf;
        double survival;
    };

    [[nodiscard]] bool series_cdf(double h, double& value) const;
    [[nodiscard]] double tail_integral(double h) const;
    [[nodiscard]] Tails tails(double h) const;

    TurbulenceParams params_;
    specfun::SeriesControl ctrl_;
    double nu_ = 0.0;
    double ab_ = 0.0;
    double log_norm_ = 0.0;
    double coef_alpha_ = 0.0;
    double coef_beta_ = 0.0;
};

double gg_pdf(double h, const TurbulenceParams& t);
double gg_cdf(double h, const TurbulenceParams& t, const specfun::SeriesControl& ctrl = {});

/// Draws H = X Y with X ~ Gamma(alpha, 1/alpha) and Y ~ Gamma(beta, 1/beta)
/// independent, which is exactly Gamma-Gamma distributed with unit mean.
/// Holds distribution state; use one sampler per random stream.
class GammaGammaSampler {
public:
    explicit GammaGammaSampler(const TurbulenceParams& t)
        : large_scale_(t.alpha, 1.0 / t.alpha), small_scale_(t.beta, 1.0 / t.beta) {
        t.validate();
    }

    template <class Urbg>
    double operator()(Urbg& rng) {
        const double x = large_scale_(rng);
        return x * small_scale_(rng);
    }

private:
    std::gamma_distribution<double> large_scale_;
    std::gamma_distribution<double> small_scale_;
};

/// One Gamma-Gamma draw from `rng`.
template <class Urbg>
double gg_sample(const TurbulenceParams& t, Urbg& rng) {
    GammaGammaSampler sampler(t);
    return sampler(rng);
}

}  // namespace fsonoma::channel

#pragma once

// Real-valued special functions used by the turbulence model and the outage
// analysis. Everything here is pure and thread-safe.

#include "fsonoma/errors.hpp"

namespace fsonoma::specfun {

/// Convergence budget for the power-series evaluations.
struct SeriesControl {
    int max_terms = 500;
    double rel_tol = 1e-10;

    /// Throws DomainError unless max_terms >= 1 and 0 < rel_tol < 1.
    void validate() const;
};

/// ln Gamma(x) for x > 0.
///
/// Lanczos approximation (g = 607/128, 15 terms), with dedicated Taylor
/// expansions around the zeros at x = 1 and x = 2 so that the result keeps
/// full relative precision there.
double ln_gamma(double x);

/// Gamma(x) for any real x that is not a pole (0, -1, -2, ...). Negative
/// arguments go through the reflection formula.
double gamma(double x);

/// Error function. Maclaurin-type series for |x| < 3, continued fraction
/// for the complement beyond, saturating at +-1 for |x| >= 6.
double erf(double x);

/// Smallest distance |nu - round(nu)| accepted by bessel_k.
inline constexpr double kIntegerOrderGuard = 1e-6;

/// Arguments above this underflow K_nu to zero for every order.
inline constexpr double kBesselKUnderflowX = 705.0;

/// Modified Bessel function of the second kind K_nu(x), real order, x > 0.
///
/// Non-integer orders only: |nu - round(nu)| < kIntegerOrderGuard is a
/// DomainError. The order is reduced to mu in [-1/2, 1/2]; K_mu and K_{mu+1}
/// come from Temme's series for x <= 2 and Steed's continued fraction
/// otherwise, then forward recurrence reaches nu. K_{-nu} = K_nu.
///
/// Returns 0 for x > kBesselKUnderflowX. Throws OverflowError when the
/// small-x behaviour Gamma(|nu|)/2 (2/x)^|nu| exceeds the double range.
double bessel_k(double nu, double x);

/// Generalised hypergeometric 1F2(a; b1, b2; z) for z >= 0 by direct
/// summation. Stops once a term falls below rel_tol of the partial sum on
/// the decreasing side of the series; ConvergenceError after max_terms.
double hyp1f2(double a, double b1, double b2, double z, const SeriesControl& ctrl = {});

/// Value of a series together with the sum of absolute term magnitudes,
/// which bounds the floating-point cancellation incurred by the sum.
struct SeriesSum {
    double value = 0.0;
    double abs_sum = 0.0;
    int terms = 0;
};

/// hyp1f2 with cancellation bookkeeping.
SeriesSum hyp1f2_sum(double a, double b1, double b2, double z, const SeriesControl& ctrl = {});

}  // namespace fsonoma::specfun

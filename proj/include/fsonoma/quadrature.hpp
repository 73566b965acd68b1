#pragma once

// Globally adaptive 15-point Gauss-Kronrod quadrature (QUADPACK QAG style):
// the interval with the largest error estimate is bisected until the total
// estimate meets max(abs_tol, rel_tol * |I|).

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "fsonoma/errors.hpp"

namespace fsonoma::quad {

struct Options {
    double abs_tol = 1e-12;
    double rel_tol = 1e-10;
    int max_subdivisions = 2000;
};

struct Result {
    double value = 0.0;
    double abs_error = 0.0;
    int intervals = 0;
    int evaluations = 0;
};

namespace detail {

// Kronrod abscissae (descending, last is the centre) and weights; Gauss
// 7-point weights for the odd-indexed abscissae.
inline constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000,
};
inline constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
};
inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327,
};

struct Segment {
    double a, b, value, error;
};

template <class F>
Segment gk15(F& f, double a, double b) {
    constexpr double kEps = std::numeric_limits<double>::epsilon();
    constexpr double kUflow = std::numeric_limits<double>::min();
    const double centre = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double f_centre = f(centre);
    double res_g = f_centre * kWg[3];
    double res_k = f_centre * kWgk[7];
    double res_abs = std::fabs(res_k);
    std::array<double, 7> fv1{};
    std::array<double, 7> fv2{};
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        const double f1 = f(centre - dx);
        const double f2 = f(centre + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        res_k += kWgk[j] * (f1 + f2);
        res_abs += kWgk[j] * (std::fabs(f1) + std::fabs(f2));
        if (j % 2 == 1) res_g += kWg[j / 2] * (f1 + f2);
    }
    const double mean = res_k * 0.5;
    double res_asc = kWgk[7] * std::fabs(f_centre - mean);
    for (int j = 0; j < 7; ++j) res_asc += kWgk[j] * (std::fabs(fv1[j] - mean) + std::fabs(fv2[j] - mean));

    const double abs_half = std::fabs(half);
    const double value = res_k * half;
    res_abs *= abs_half;
    res_asc *= abs_half;
    double err = std::fabs((res_k - res_g) * half);
    if (res_asc != 0.0 && err != 0.0) err = res_asc * std::min(1.0, std::pow(200.0 * err / res_asc, 1.5));
    if (res_abs > kUflow / (50.0 * kEps)) err = std::max(kEps * 50.0 * res_abs, err);
    return {a, b, value, err};
}

}  // namespace detail

/// Integral of f over the finite interval [a, b]. Throws ConvergenceError
/// when max_subdivisions is exhausted before the tolerance is met.
template <class F>
Result integrate(F&& f, double a, double b, const Options& opt = {}) {
    if (!(std::isfinite(a) && std::isfinite(b))) throw DomainError("quad::integrate: limits must be finite");
    if (a == b) return {};
    if (opt.max_subdivisions < 1) throw DomainError("quad::integrate: max_subdivisions must be >= 1");

    std::vector<detail::Segment> segments;
    segments.reserve(static_cast<std::size_t>(std::min(opt.max_subdivisions, 4096)));
    segments.push_back(detail::gk15(f, a, b));
    double total = segments.front().value;
    double error = segments.front().error;
    int evaluations = 15;

    auto tolerance = [&] { return std::max(opt.abs_tol, opt.rel_tol * std::fabs(total)); };
    auto by_error = [](const detail::Segment& l, const detail::Segment& r) { return l.error < r.error; };

    while (error > tolerance()) {
        if (static_cast<int>(segments.size()) >= opt.max_subdivisions) {
            throw ConvergenceError("quadrature tolerance not met on [" + std::to_string(a) + ", " +
                                   std::to_string(b) + "] after " + std::to_string(segments.size()) +
                                   " subdivisions (error estimate " + std::to_string(error) + ")");
        }
        std::pop_heap(segments.begin(), segments.end(), by_error);
        const detail::Segment worst = segments.back();
        segments.pop_back();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            // Interval cannot be split further in double precision; accept it.
            segments.push_back({worst.a, worst.b, worst.value, 0.0});
            std::push_heap(segments.begin(), segments.end(), by_error);
            error -= worst.error;
            continue;
        }
        const detail::Segment left = detail::gk15(f, worst.a, mid);
        const detail::Segment right = detail::gk15(f, mid, worst.b);
        evaluations += 30;
        segments.push_back(left);
        std::push_heap(segments.begin(), segments.end(), by_error);
        segments.push_back(right);
        std::push_heap(segments.begin(), segments.end(), by_error);
        total += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        // Re-sum periodically to contain drift in the running totals.
        if (segments.size() % 64 == 0) {
            total = 0.0;
            error = 0.0;
            for (const auto& s : segments) {
                total += s.value;
                error += s.error;
            }
        }
    }
    total = 0.0;
    error = 0.0;
    for (const auto& s : segments) {
        total += s.value;
        error += s.error;
    }
    return {total, error, static_cast<int>(segments.size()), evaluations};
}

/// Integral of f over [a, inf) via the map y = a + t / (1 - t), t in [0, 1).
template <class F>
Result integrate_to_infinity(F&& f, double a, const Options& opt = {}) {
    auto mapped = [&f, a](double t) {
        const double one_minus = 1.0 - t;
        const double y = a + t / one_minus;
        const double fy = f(y);
        return fy == 0.0 ? 0.0 : fy / (one_minus * one_minus);
    };
    return integrate(mapped, 0.0, 1.0, opt);
}

}  // namespace fsonoma::quad

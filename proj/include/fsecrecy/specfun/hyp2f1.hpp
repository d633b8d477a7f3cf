#pragma once

// Gauss hypergeometric 2F1(a, b; c; z) restricted to real parameters and
// z <= 0 (every call site in this library has a non-positive argument;
// positive z would need analytic continuation machinery we deliberately
// do not carry).
//
// Routes:
//   * direct power series -- accurate only while its terms do not grow,
//     since growth followed by alternating decay cancels catastrophically;
//     a peak-term/sum guard turns that loss into a detected failure.
//   * Pfaff transformation 2F1(a,b;c;z) = (1-z)^{-a} 2F1(a, c-b; c; z/(z-1)),
//     mapping z < 0 to an argument in (0,1) where the series has positive
//     terms (no cancellation) whenever a > 0 and c - b > 0, which covers
//     every production shape here.  A log-space variant survives the
//     (1-z)^{-a} underflow at deep arguments.

#include <cmath>
#include <cstdint>
#include <limits>

#include "../errors.hpp"

namespace fsecrecy {

namespace detail {

inline constexpr std::int64_t hyp2f1_max_terms = 2'000'000;

inline bool is_non_positive_integer(double x) {
    return x <= 0.0 && x == std::floor(x);
}

struct hyp2f1_series_eval {
    double value;
    double peak_over_sum; // max |term| / |sum|: cancellation severity
};

// Plain series sum_k (a)_k (b)_k / ((c)_k k!) z^k, |z| < 1.
inline hyp2f1_series_eval hyp2f1_series_core(double a, double b, double c,
                                             double z) {
    long double term = 1.0L, sum = 1.0L, peak = 1.0L;
    for (std::int64_t k = 0; k < hyp2f1_max_terms; ++k) {
        term *= (a + k) * (b + k) / ((c + k) * (k + 1.0L)) * z;
        sum += term;
        peak = std::max(peak, std::abs(term));
        if (std::abs(double(term)) <= 1e-17 * std::abs(double(sum)) && k > 2) {
            const double s = double(sum);
            const double severity =
                s == 0.0 ? std::numeric_limits<double>::infinity()
                         : double(peak) / std::abs(s);
            return {s, severity};
        }
    }
    throw convergence_error("gauss_2f1: series did not converge");
}

// Direct series, failing loudly when cancellation has destroyed the result.
inline double hyp2f1_series(double a, double b, double c, double z) {
    const auto r = hyp2f1_series_core(a, b, c, z);
    if (r.peak_over_sum > 1e6)
        throw convergence_error(
            "gauss_2f1: direct series lost to cancellation");
    return r.value;
}

// Pfaff-transformed series; returns ln of the (positive) result.
// Requires a > 0 and c - b > 0 so the transformed series has positive terms.
inline double hyp2f1_pfaff_log(double a, double b, double c, double z) {
    const double w = z / (z - 1.0); // in (0, 1) for z < 0
    const double b2 = c - b;
    if (!(a > 0.0) || !(b2 > 0.0))
        throw domain_error("gauss_2f1: Pfaff path needs a > 0 and c - b > 0");
    long double term = 1.0L, sum = 1.0L;
    for (std::int64_t k = 0; k < hyp2f1_max_terms; ++k) {
        term *= (a + k) * (b2 + k) / ((c + k) * (k + 1.0L)) * w;
        sum += term;
        if (double(term) <= 1e-17 * double(sum) && k > 2)
            return -a * std::log1p(-z) + std::log(double(sum));
    }
    throw convergence_error("gauss_2f1: Pfaff series did not converge");
}

inline void hyp2f1_check_args(double a, double b, double c, double z) {
    if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c) ||
        !std::isfinite(z))
        throw domain_error("gauss_2f1: non-finite input");
    if (z > 0.0)
        throw domain_error("gauss_2f1: argument must satisfy z <= 0");
    if (is_non_positive_integer(c))
        throw pole_error("gauss_2f1: c at a non-positive integer");
}

inline double hyp2f1_dispatch(double a, double b, double c, double z,
                              bool want_log) {
    const bool pfaff_ok = a > 0.0 && c - b > 0.0;
    auto from_series = [&](double v) {
        return want_log ? std::log(v) : v;
    };
    if (z > -0.05) {
        // Tiny argument: the direct series has at most mild term growth.
        try {
            return from_series(hyp2f1_series(a, b, c, z));
        } catch (const convergence_error&) {
            if (!pfaff_ok) throw;
        }
    }
    if (pfaff_ok) {
        const double lg = hyp2f1_pfaff_log(a, b, c, z);
        return want_log ? lg : std::exp(lg);
    }
    if (z > -1.0) return from_series(hyp2f1_series(a, b, c, z));
    throw convergence_error(
        "gauss_2f1: no stable evaluation route for these parameters");
}

} // namespace detail

// 2F1(a, b; c; z) for z <= 0.
inline double gauss_2f1(double a, double b, double c, double z) {
    detail::hyp2f1_check_args(a, b, c, z);
    if (z == 0.0) return 1.0;
    return detail::hyp2f1_dispatch(a, b, c, z, /*want_log=*/false);
}

// ln 2F1(a, b; c; z) for z <= 0 and a positive result (guaranteed on the
// Pfaff route; the tiny-|z| series is safely positive for production
// parameter shapes).
inline double log_gauss_2f1(double a, double b, double c, double z) {
    detail::hyp2f1_check_args(a, b, c, z);
    if (z == 0.0) return 0.0;
    return detail::hyp2f1_dispatch(a, b, c, z, /*want_log=*/true);
}

} // namespace fsecrecy

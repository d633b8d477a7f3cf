#pragma once

// Fisher-Snedecor F fading channel model: instantaneous-SNR density and
// distribution, first moment, gamma-ratio sampling, and the Nakagami-m
// limiting density.
//
// With shape parameters m (multipath) and m_s (shadowing), mean-SNR
// parameter gamma_bar, and Xi = m / (m_s * gamma_bar):
//
//   pdf(g) = Xi^m / B(m, m_s) * g^(m-1) * (1 + Xi*g)^-(m+m_s)
//   cdf(g) = (Xi*g)^m / (m * B(m, m_s)) * 2F1(m+m_s, m; 1+m; -Xi*g)
//
// Equivalently, Xi*g is a ratio X/Y of Gamma(m,1) and Gamma(m_s,1)
// variates, which gives both the sampler and a reciprocal symmetry:
// 1/g follows the same family with (m, m_s, Xi) -> (m_s, m, 1/Xi).  The
// CDF complement through that symmetry is the numerically stable route
// for the upper tail, where the direct 2F1 form loses digits.

#include <cmath>
#include <cstdint>
#include <vector>

#include "errors.hpp"
#include "rng.hpp"
#include "specfun/gamma.hpp"
#include "specfun/hyp2f1.hpp"

namespace fsecrecy {

enum class channel_role { D, E };

struct fading_params {
    double m;         // multipath shape, > 0
    double m_s;       // shadowing shape, > 0
    double gamma_bar; // average SNR, linear scale, > 0
    double xi;        // m / (m_s * gamma_bar), recomputed on construction

    fading_params(double m_, double m_s_, double gamma_bar_)
        : m(m_), m_s(m_s_), gamma_bar(gamma_bar_),
          xi(m_ / (m_s_ * gamma_bar_)) {
        if (!(m > 0.0) || !std::isfinite(m))
            throw domain_error("fading_params: m must be positive and finite");
        if (!(m_s > 0.0) || !std::isfinite(m_s))
            throw domain_error("fading_params: m_s must be positive and finite");
        if (!(gamma_bar > 0.0) || !std::isfinite(gamma_bar))
            throw domain_error("fading_params: gamma_bar must be positive and finite");
    }
};

inline double pdf(const fading_params& p, double gamma) {
    if (!(gamma >= 0.0))
        throw domain_error("pdf: gamma must be non-negative");
    if (gamma == 0.0) {
        if (p.m < 1.0)
            throw singularity_error("pdf: density diverges at gamma = 0 for m < 1");
        if (p.m == 1.0) return p.xi * p.m_s; // B(1, m_s) = 1/m_s
        return 0.0;
    }
    const double lb = log_beta(p.m, p.m_s);
    const double lv = p.m * std::log(p.xi) + (p.m - 1.0) * std::log(gamma) -
                      (p.m + p.m_s) * std::log1p(p.xi * gamma) - lb;
    return std::exp(lv);
}

namespace detail {

// Raw CDF before the [0,1] assertion.  Direct 2F1 route for moderate
// Xi*gamma; reciprocal-symmetry complement for the upper tail.
inline double cdf_raw(const fading_params& p, double gamma) {
    if (gamma == 0.0) return 0.0;
    const double u = p.xi * gamma;
    if (u > 50.0) {
        // P[g <= gamma] = 1 - P[1/g < 1/gamma]; 1/g follows the swapped-shape
        // family with rate 1/Xi, so the complement reuses the direct form at
        // the reciprocal argument, where it is well conditioned.
        const double us = 1.0 / u;
        const double lb = log_beta(p.m_s, p.m);
        const double l2f1 = log_gauss_2f1(p.m_s + p.m, p.m_s, 1.0 + p.m_s, -us);
        return 1.0 - std::exp(p.m_s * std::log(us) - std::log(p.m_s) - lb + l2f1);
    }
    const double lb = log_beta(p.m, p.m_s);
    const double l2f1 = log_gauss_2f1(p.m + p.m_s, p.m, 1.0 + p.m, -u);
    return std::exp(p.m * std::log(u) - std::log(p.m) - lb + l2f1);
}

} // namespace detail

inline double cdf(const fading_params& p, double gamma) {
    if (!(gamma >= 0.0))
        throw domain_error("cdf: gamma must be non-negative");
    const double raw = detail::cdf_raw(p, gamma);
    if (raw < -1e-9 || raw > 1.0 + 1e-9)
        throw convergence_error("cdf: raw value outside [0,1] beyond tolerance");
    return raw < 0.0 ? 0.0 : (raw > 1.0 ? 1.0 : raw);
}

// First moment E[gamma] = gamma_bar * m_s / (m_s - 1), divergent for m_s <= 1.
struct snr_mean {
    double value;   // meaningful only when !divergent
    bool divergent; // heavy-tail moment nonexistence for m_s <= 1
};

inline snr_mean mean_snr(const fading_params& p) {
    if (p.m_s <= 1.0) return {0.0, true};
    return {p.gamma_bar * p.m_s / (p.m_s - 1.0), false};
}

// One draw: gamma = (X/Y)/Xi, X ~ Gamma(m,1) drawn first, then Y ~ Gamma(m_s,1).
inline double sample_one(const fading_params& p, xoshiro256pp& g) {
    const double x = gamma_draw(g, p.m);
    const double y = gamma_draw(g, p.m_s);
    return (x / y) / p.xi;
}

inline std::vector<double> sample(const fading_params& p, xoshiro256pp& g,
                                  std::size_t n) {
    std::vector<double> out(n);
    for (auto& v : out) v = sample_one(p, g);
    return out;
}

// Nakagami-m (Gamma) SNR density: the m_s -> infinity limit of pdf().
inline double nakagami_limit_pdf(double m, double gamma_bar, double gamma) {
    if (!(m > 0.0) || !(gamma_bar > 0.0))
        throw domain_error("nakagami_limit_pdf: m and gamma_bar must be positive");
    if (!(gamma > 0.0))
        throw domain_error("nakagami_limit_pdf: gamma must be positive");
    const double lv = m * std::log(m / gamma_bar) + (m - 1.0) * std::log(gamma) -
                      m * gamma / gamma_bar - log_gamma(m);
    return std::exp(lv);
}

} // namespace fsecrecy

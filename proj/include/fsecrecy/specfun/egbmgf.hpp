#pragma once

// Extended generalized bivariate Meijer G-function (EGBMGF):
//
//   G(x, y) = (1/(2*pi*i))^2 \int\int Phi1(s+t) Phi2(s) Phi3(t) x^s y^t ds dt
//
// with each Phi a univariate Mellin-Barnes kernel (see meijer_g.hpp) and the
// two contours vertical lines Re s = c1, Re t = c2 separating the pole
// families of their kernels, with c1 + c2 separating the outer kernel's.
// With s = c1 + iu, t = c2 + iv the measure becomes +du dv / (4*pi^2).
//
// Evaluation is trapezoidal quadrature on both (truncated) lines.  Because
// u and v share one step h, the double sum is a discrete convolution:
//
//   A_j = Phi2(c1 + i j h) x^{c1 + i j h},  B_k = Phi3(c2 + i k h) y^{...},
//   C_w = sum_{j+k=w} A_j B_k,
//   G  ~= (h^2 / 4 pi^2) sum_w Phi1(c1 + c2 + i w h) C_w,
//
// computed with per-factor max-log scaling so huge or tiny magnitudes pass
// through as (mantissa, log_scale) pairs.  The integrands are analytic in
// strips around the lines, so the trapezoid rule converges geometrically in
// the node density; refinement doubles nodes_per_unit until two successive
// estimates agree to relative 1e-6.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <vector>

#include "../errors.hpp"
#include "gamma.hpp"
#include "meijer_g.hpp"

namespace fsecrecy {

// Parameter blocks of the three kernels plus the two positive weights.
// The blocks' own `argument` members are ignored; x and y are the weights.
struct egbmgf_spec {
    meijer_g_spec outer;  // Phi1, evaluated at s + t
    meijer_g_spec inner1; // Phi2, evaluated at s   (paired with x^s)
    meijer_g_spec inner2; // Phi3, evaluated at t   (paired with y^t)
    double x = 1.0;
    double y = 1.0;
};

struct contour_settings {
    double half_width = 40.0; // truncation T of both vertical contours
    int nodes_per_unit = 32;  // initial density (doubled on refinement)
    // Contour abscissae; NaN means choose automatically (margin-maximizing
    // point of the separation polygon, which reduces to the midpoint rule
    // whenever the windows are plain intervals).
    double shift1 = std::numeric_limits<double>::quiet_NaN();
    double shift2 = std::numeric_limits<double>::quiet_NaN();
    int max_refinements = 3;
};

// value = mantissa * exp(log_scale); split so downstream prefactors can be
// applied in log space without overflow.
struct egbmgf_result {
    double mantissa = 0.0;
    double log_scale = 0.0;
    double abs_error_estimate = 0.0; // on the mantissa, at log_scale
};

namespace detail {

inline void check_egbmgf_spec(const egbmgf_spec& s) {
    check_meijer_spec(s.outer);
    check_meijer_spec(s.inner1);
    check_meijer_spec(s.inner2);
    if (!(s.x > 0.0) || !std::isfinite(s.x) || !(s.y > 0.0) ||
        !std::isfinite(s.y))
        throw domain_error("egbmgf: weights x, y must be positive and finite");
}

inline void check_contour_settings(const contour_settings& c) {
    if (!(c.half_width > 0.0) || !std::isfinite(c.half_width))
        throw domain_error("egbmgf: half_width must be positive");
    if (c.nodes_per_unit < 8)
        throw domain_error("egbmgf: nodes_per_unit must be >= 8");
    if (c.max_refinements < 0)
        throw domain_error("egbmgf: max_refinements must be >= 0");
}

// Distance of (c1, c2) to the nearest boundary of the separation polygon
//   w1.lo < c1 < w1.hi,  w2.lo < c2 < w2.hi,  w12.lo < c1+c2 < w12.hi
// (infinite sides never bind).  Negative means infeasible.
inline double contour_margin(double c1, double c2, const pole_window& w1,
                             const pole_window& w2, const pole_window& w12) {
    double m = std::numeric_limits<double>::infinity();
    auto side = [&m](double d) { m = std::min(m, d); };
    if (std::isfinite(w1.lo)) side(c1 - w1.lo);
    if (std::isfinite(w1.hi)) side(w1.hi - c1);
    if (std::isfinite(w2.lo)) side(c2 - w2.lo);
    if (std::isfinite(w2.hi)) side(w2.hi - c2);
    if (std::isfinite(w12.lo)) side(c1 + c2 - w12.lo);
    if (std::isfinite(w12.hi)) side(w12.hi - (c1 + c2));
    return m;
}

// Margin-maximizing abscissa pair (Chebyshev-center style grid search with
// shrink refinement); explicit shifts are honored after a feasibility check.
inline std::pair<double, double> choose_contours(const egbmgf_spec& s,
                                                 const contour_settings& set) {
    const pole_window w1 = separation_window(s.inner1);
    const pole_window w2 = separation_window(s.inner2);
    const pole_window w12 = separation_window(s.outer);
    const double min_margin = 2e-6;

    const bool have1 = std::isfinite(set.shift1);
    const bool have2 = std::isfinite(set.shift2);
    if (have1 && have2) {
        if (contour_margin(set.shift1, set.shift2, w1, w2, w12) <= min_margin)
            throw contour_error(
                "egbmgf: requested shifts do not separate the pole families");
        return {set.shift1, set.shift2};
    }

    // Finite search box per free axis, centered on the axis window when it
    // has finite sides (any feasible interior point does; optimality only
    // sharpens the aliasing margin).
    auto axis_seed = [](const pole_window& w) {
        const bool lo = std::isfinite(w.lo), hi = std::isfinite(w.hi);
        if (lo && hi) return 0.5 * (w.lo + w.hi);
        if (lo) return w.lo + 1.0;
        if (hi) return w.hi - 1.0;
        return 0.0;
    };
    double L1 = have1 ? set.shift1 : axis_seed(w1) - 25.0;
    double R1 = have1 ? set.shift1 : axis_seed(w1) + 25.0;
    double L2 = have2 ? set.shift2 : axis_seed(w2) - 25.0;
    double R2 = have2 ? set.shift2 : axis_seed(w2) + 25.0;

    double best1 = 0.5 * (L1 + R1), best2 = 0.5 * (L2 + R2);
    double best = -std::numeric_limits<double>::infinity();
    for (int round = 0; round < 4; ++round) {
        const int grid = 120;
        for (int i = 0; i <= grid; ++i) {
            const double c1 = (L1 == R1) ? L1 : L1 + (R1 - L1) * i / grid;
            for (int k = 0; k <= grid; ++k) {
                const double c2 = (L2 == R2) ? L2 : L2 + (R2 - L2) * k / grid;
                const double m = contour_margin(c1, c2, w1, w2, w12);
                if (m > best) {
                    best = m;
                    best1 = c1;
                    best2 = c2;
                }
            }
            if (L1 == R1) break;
        }
        const double s1 = (R1 - L1) / grid, s2 = (R2 - L2) / grid;
        if (L1 != R1) {
            L1 = best1 - 1.5 * s1;
            R1 = best1 + 1.5 * s1;
        }
        if (L2 != R2) {
            L2 = best2 - 1.5 * s2;
            R2 = best2 + 1.5 * s2;
        }
    }
    if (!(best > min_margin))
        throw contour_error(
            "egbmgf: no contour pair separates the pole families");
    return {best1, best2};
}

struct egbmgf_pass {
    double re = 0.0;       // mantissa, real part
    double im = 0.0;       // mantissa, imaginary residue (diagnostic)
    double log_scale = 0.0;
    double edge_ratio = 0.0; // outer-grid integrand: edge / peak magnitude
};

// One trapezoid pass at node spacing h = 1/npu, truncation T on both lines.
inline egbmgf_pass egbmgf_single_pass(const egbmgf_spec& s, double c1,
                                      double c2, double T, int npu) {
    const double h = 1.0 / npu;
    const std::size_t N = std::size_t(std::llround(T * npu));
    const double lx = std::log(s.x), ly = std::log(s.y);

    // Scaled line samples of Phi2 x^s and Phi3 y^t.
    auto line = [&](const meijer_g_spec& k, double c, double lw,
                    std::vector<std::complex<double>>& out) {
        std::vector<std::complex<double>> logs(2 * N + 1);
        double top = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i <= 2 * N; ++i) {
            const std::complex<double> z(c, (double(i) - double(N)) * h);
            logs[i] = log_mb_kernel(k, z) + z * lw;
            top = std::max(top, logs[i].real());
        }
        out.resize(2 * N + 1);
        for (std::size_t i = 0; i <= 2 * N; ++i)
            out[i] = std::exp(logs[i] - top);
        return top;
    };
    std::vector<std::complex<double>> A, B;
    const double LA = line(s.inner1, c1, lx, A);
    const double LB = line(s.inner2, c2, ly, B);

    // Full linear convolution C_w = sum_j A_j B_{w-j}.
    const std::size_t M = 4 * N + 1;
    std::vector<std::complex<double>> C(M, {0.0, 0.0});
    for (std::size_t j = 0; j < A.size(); ++j) {
        const std::complex<double> aj = A[j];
        for (std::size_t k = 0; k < B.size(); ++k) C[j + k] += aj * B[k];
    }

    // Outer kernel on the sum grid, then the weighted sum.
    const double c12 = c1 + c2;
    std::vector<std::complex<double>> lo_logs(M);
    double LO = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < M; ++i) {
        const std::complex<double> z(c12, (double(i) - double(2 * N)) * h);
        lo_logs[i] = log_mb_kernel(s.outer, z);
        LO = std::max(LO, lo_logs[i].real());
    }
    long double acc_re = 0.0L, acc_im = 0.0L;
    double peak = 0.0, edge = 0.0;
    for (std::size_t i = 0; i < M; ++i) {
        const std::complex<double> term = std::exp(lo_logs[i] - LO) * C[i];
        acc_re += term.real();
        acc_im += term.imag();
        const double mag = std::abs(term);
        peak = std::max(peak, mag);
        if (i == 0 || i == M - 1) edge = std::max(edge, mag);
    }
    const double measure = h * h / (4.0 * std::numbers::pi * std::numbers::pi);
    egbmgf_pass p;
    p.re = double(acc_re) * measure;
    p.im = double(acc_im) * measure;
    p.log_scale = LA + LB + LO;
    p.edge_ratio = (peak > 0.0) ? edge / peak : 1.0;
    return p;
}

inline egbmgf_result evaluate_egbmgf(const egbmgf_spec& s,
                                     const contour_settings& set) {
    check_egbmgf_spec(s);
    check_contour_settings(set);
    const auto [c1, c2] = choose_contours(s, set);

    // Truncation: grow T until the outer-grid integrand has decayed at the
    // ends (covers all three factors at once -- the product is what must
    // vanish).  A persistent fat edge means a non-decaying configuration.
    const double target_rel = 1e-6;
    int npu = set.nodes_per_unit;
    double T = set.half_width;
    egbmgf_pass prev = egbmgf_single_pass(s, c1, c2, T, npu);
    while (prev.edge_ratio > 1e-10 && T < 4.0 * set.half_width) {
        T *= 1.5;
        prev = egbmgf_single_pass(s, c1, c2, T, npu);
    }
    if (prev.edge_ratio > 1e-3)
        throw contour_error(
            "egbmgf: contour integrand does not decay within the truncation");

    for (int it = 0; it < set.max_refinements; ++it) {
        npu *= 2;
        const egbmgf_pass cur = egbmgf_single_pass(s, c1, c2, T, npu);
        // Compare on a common scale (the per-pass log offsets drift a bit).
        const double shift = std::exp(prev.log_scale - cur.log_scale);
        const double prev_re = prev.re * shift;
        const double diff = std::abs(cur.re - prev_re);
        const double scale = std::max(std::abs(cur.re), 1e-300);
        if (diff <= target_rel * scale) {
            egbmgf_result r;
            r.mantissa = cur.re;
            r.log_scale = cur.log_scale;
            r.abs_error_estimate = diff + std::abs(cur.im);
            return r;
        }
        prev = cur;
    }
    throw convergence_error("egbmgf: refinement did not settle");
}

} // namespace detail

// Split (mantissa, log_scale) form; preferred when prefactors may overflow.
inline egbmgf_result egbmgf_log(const egbmgf_spec& spec,
                                const contour_settings& settings = {}) {
    return detail::evaluate_egbmgf(spec, settings);
}

// Plain value.
inline double egbmgf(const egbmgf_spec& spec,
                     const contour_settings& settings = {}) {
    const egbmgf_result r = detail::evaluate_egbmgf(spec, settings);
    return r.mantissa * std::exp(r.log_scale);
}

} // namespace fsecrecy

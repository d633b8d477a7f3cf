#pragma once

// Univariate Meijer G-function over real parameters and positive real
// argument, for the small shapes (p, q <= 4) this library needs.
//
//   G^{m,n}_{p,q}(z | a; b)
//     = (1/2*pi*i) \int Phi(s) z^s ds,
//   Phi(s) = prod_{j<=m} Gamma(b_j - s) prod_{j<=n} Gamma(1 - a_j + s)
//          / [ prod_{j>m} Gamma(1 - b_j + s) prod_{j>n} Gamma(a_j - s) ],
// the contour separating the increasing pole family {b_j + k} from the
// decreasing family {a_j - 1 - k}.
//
// Two evaluation paths:
//   * residue series over the poles of Gamma(b_j - s), the textbook
//     expansion; converges for |z| < 1 when p = q (any z when p < q),
//     with the inversion identity handling the reciprocal regime.
//     Coincident pole families (integer b_i - b_j) get an automatic
//     epsilon separation, flagged in the result.
//   * direct trapezoid quadrature along the vertical contour, spectrally
//     accurate whenever 2(m+n) - p - q >= 1 (true for every shape used
//     here), argument regime irrelevant.  This is the workhorse near
//     |z| = 1 -- where the series cannot converge -- and for coincident
//     parameters, where it needs no perturbation at all.
// The automatic strategy picks the series when it is clean and fast and
// the contour otherwise.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <vector>

#include "../errors.hpp"
#include "gamma.hpp"

namespace fsecrecy {

// Parameter block of one Mellin-Barnes kernel.  For the univariate G the
// block plus `argument` is the complete problem statement; the bivariate
// evaluator reuses the block type for its three kernels.
struct meijer_g_spec {
    std::vector<double> a_top;    // length n
    std::vector<double> a_rest;   // length p - n
    std::vector<double> b_bottom; // length m
    std::vector<double> b_rest;   // length q - m
    double argument = 1.0;        // z > 0
};

struct meijer_g_options {
    enum class strategy { automatic, residue_series, contour };
    strategy strat = strategy::automatic;
    double epsilon = 1e-6;          // coincident-pole nudge
    int max_separation_attempts = 4;
    double target_rel = 1e-8;
    double half_width = 40.0;       // contour truncation
    int nodes_per_unit = 64;        // contour density (doubled on refine)
    int max_refinements = 3;
};

struct meijer_g_result {
    double value = 0.0;
    double abs_error_estimate = 0.0;
    bool perturbed = false;    // epsilon separation fired
    bool used_contour = false;
};

namespace detail {

inline void check_meijer_spec(const meijer_g_spec& s) {
    const std::size_t p = s.a_top.size() + s.a_rest.size();
    const std::size_t q = s.b_bottom.size() + s.b_rest.size();
    if (p > 4 || q > 4)
        throw domain_error("meijer_g: p, q <= 4 supported");
    if (!(s.argument > 0.0) || !std::isfinite(s.argument))
        throw domain_error("meijer_g: argument must be positive and finite");
}

// log kernel at complex s (sum of log-gammas; branch offsets cancel on exp).
inline std::complex<double> log_mb_kernel(const meijer_g_spec& k,
                                          std::complex<double> s) {
    std::complex<double> acc(0.0, 0.0);
    for (double b : k.b_bottom) acc += log_gamma(std::complex<double>(b) - s);
    for (double a : k.a_top) acc += log_gamma(1.0 - a + s);
    for (double b : k.b_rest) acc -= log_gamma(1.0 - b + s);
    for (double a : k.a_rest) acc -= log_gamma(std::complex<double>(a) - s);
    return acc;
}

// Exponential decay rate of |kernel| along a vertical line is
// (pi/2) * (2(m+n) - p - q) * |Im s|.
inline int contour_decay_index(const meijer_g_spec& s) {
    return int(2 * (s.b_bottom.size() + s.a_top.size())) -
           int(s.a_top.size() + s.a_rest.size() + s.b_bottom.size() +
               s.b_rest.size());
}

// Strip of abscissae separating the two pole families.
struct pole_window {
    double lo; // sup of the decreasing family: max(a_top) - 1   (-inf if none)
    double hi; // inf of the increasing family: min(b_bottom)    (+inf if none)
};

inline pole_window separation_window(const meijer_g_spec& s) {
    pole_window w{-std::numeric_limits<double>::infinity(),
                  std::numeric_limits<double>::infinity()};
    for (double a : s.a_top) w.lo = std::max(w.lo, a - 1.0);
    for (double b : s.b_bottom) w.hi = std::min(w.hi, b);
    return w;
}

// Midpoint abscissa of the separating strip (simple default rule).
inline double default_abscissa(const pole_window& w, double min_gap) {
    const bool lo_inf = !std::isfinite(w.lo), hi_inf = !std::isfinite(w.hi);
    if (lo_inf && hi_inf) return 0.0;
    if (lo_inf) return w.hi - 1.0;
    if (hi_inf) return w.lo + 1.0;
    if (!(w.hi - w.lo > min_gap))
        throw contour_error("meijer_g: pole families leave no contour gap");
    return 0.5 * (w.lo + w.hi);
}

// Abscissa minimizing the integrand magnitude at t = 0.  log|integrand|
// restricted to the real axis is a sum of convex log-gamma walls (rising
// toward each pole family) plus a linear term, so a grid-and-shrink search
// finds the global minimum.  Placing the line at this saddle keeps the
// quadrature well conditioned even when the integral's value is
// exponentially smaller than a mid-strip integrand would be (e.g. the
// G-representation of exp(-x) at large x).
inline double saddle_abscissa(const meijer_g_spec& s, const pole_window& w,
                              double min_gap) {
    const double lz = std::log(s.argument);
    auto f = [&](double c) {
        return log_mb_kernel(s, std::complex<double>(c, 0.0)).real() + c * lz;
    };
    const bool lo_inf = !std::isfinite(w.lo), hi_inf = !std::isfinite(w.hi);
    if (!lo_inf && !hi_inf && !(w.hi - w.lo > min_gap))
        throw contour_error("meijer_g: pole families leave no contour gap");
    const double margin = std::max(min_gap, 1e-6);
    double L, R;
    if (lo_inf && hi_inf) {
        L = -80.0;
        R = 80.0;
    } else if (lo_inf) {
        L = w.hi - 80.0;
        R = w.hi - margin;
    } else if (hi_inf) {
        L = w.lo + margin;
        R = w.lo + 80.0;
    } else {
        const double pad = std::min(margin, 0.25 * (w.hi - w.lo));
        L = w.lo + pad;
        R = w.hi - pad;
    }
    double best = 0.5 * (L + R);
    for (int round = 0; round < 4; ++round) {
        const int grid = 64;
        double fbest = std::numeric_limits<double>::infinity();
        for (int i = 0; i <= grid; ++i) {
            const double c = L + (R - L) * i / grid;
            const double fc = f(c);
            if (fc < fbest) {
                fbest = fc;
                best = c;
            }
        }
        const double step = (R - L) / grid;
        L = std::max(L, best - 1.5 * step);
        R = std::min(R, best + 1.5 * step);
    }
    return best;
}

// G^{n,m}_{q,p}(1/z | 1-b; 1-a): parameter lists of the inverted problem.
inline meijer_g_spec invert_spec(const meijer_g_spec& s) {
    meijer_g_spec r;
    auto flip = [](const std::vector<double>& v) {
        std::vector<double> o;
        o.reserve(v.size());
        for (double x : v) o.push_back(1.0 - x);
        return o;
    };
    r.a_top = flip(s.b_bottom);
    r.a_rest = flip(s.b_rest);
    r.b_bottom = flip(s.a_top);
    r.b_rest = flip(s.a_rest);
    r.argument = 1.0 / s.argument;
    return r;
}

inline bool is_integer(double x, double tol) {
    return std::abs(x - std::round(x)) <= tol;
}

// Any integer difference inside b_bottom, or a_top - b_bottom hitting a
// positive integer, makes the residue series degenerate.
inline bool series_is_degenerate(const meijer_g_spec& s, double tol) {
    const auto& b = s.b_bottom;
    for (std::size_t i = 0; i < b.size(); ++i)
        for (std::size_t j = i + 1; j < b.size(); ++j)
            if (is_integer(b[i] - b[j], tol)) return true;
    for (double a : s.a_top)
        for (double bb : b) {
            const double d = a - bb;
            if (d > 0.5 && is_integer(d, tol)) return true;
        }
    return false;
}

// Residue series over the poles of Gamma(b_j - s), b_j in b_bottom.
// Caller guarantees non-degenerate parameters and a convergent regime
// (p < q, or p == q with |z| < 1).  peak_guard bounds the tolerated
// cancellation: past it the sum has lost too many digits to trust and we
// bail out.  Both the largest single term and the largest pole-family
// subtotal are checked against the final sum -- the families can cancel
// each other to many digits even when each one is summed cleanly.
inline double residue_series_value(const meijer_g_spec& s, double target_rel,
                                   double peak_guard) {
    const double lz = std::log(s.argument);
    const std::size_t m = s.b_bottom.size();
    // Geometric tail bound: for p == q the term ratio tends to z (< 1
    // here), so the tail after term k is ~|term| * z / (1 - z); for p < q
    // the decay is eventually factorial.  Stopping must charge for that.
    const std::size_t p = s.a_top.size() + s.a_rest.size();
    const std::size_t q = m + s.b_rest.size();
    const double ratio =
        (p == q) ? std::min(s.argument, 0.99) : 0.5;
    const double tail_factor = 1.0 / (1.0 - ratio);
    long double total = 0.0L, peak = 0.0L, family_peak = 0.0L;
    for (std::size_t h = 0; h < m; ++h) {
        const double bh = s.b_bottom[h];
        // Terms behave like z^k * k^nu / (k!)^(q-p) with nu read off the
        // gamma shifts, so they can climb for hundreds of terms before the
        // decay wins.  No smallness test is meaningful on the rising side
        // of that hump; bound its location and hold off until past it.
        double nu = 0.0;
        for (double a : s.a_top) nu += bh - a;
        for (double a : s.a_rest) nu += bh - a;
        for (double b : s.b_rest) nu -= bh - b;
        for (std::size_t j = 0; j < m; ++j)
            if (j != h) nu -= bh - s.b_bottom[j];
        double hump = 0.0;
        if (p == q)
            hump = 1.25 * std::max(nu, 0.0) / std::max(std::abs(lz), 0.05);
        else
            hump = std::max(nu, 0.0) / double(q - p) +
                   std::pow(s.argument, 1.0 / double(q - p));
        const int k_min = 8 + int(std::min(hump, 90000.0));
        int calm = 0;
        long double branch = 0.0L;
        double prev_lt = std::numeric_limits<double>::infinity();
        for (int k = 0; k < 100000; ++k) {
            double lt = (bh + k) * lz - log_gamma(double(k) + 1.0);
            int sign = (k % 2 == 0) ? 1 : -1;
            bool transient_zero = false, permanent_zero = false;
            for (std::size_t j = 0; j < m && !transient_zero; ++j) {
                if (j == h) continue;
                const double arg = s.b_bottom[j] - bh - k;
                if (arg <= 0.0 && arg == std::floor(arg))
                    throw degenerate_parameter_error(
                        "meijer_g: residue series hit a numerator pole");
                lt += log_gamma(arg);
                sign *= gamma_sign(arg);
            }
            for (double a : s.a_top) {
                const double arg = 1.0 - a + bh + k;
                if (arg <= 0.0 && arg == std::floor(arg))
                    throw degenerate_parameter_error(
                        "meijer_g: residue series hit a numerator pole");
                lt += log_gamma(arg);
                sign *= gamma_sign(arg);
            }
            for (double b : s.b_rest) {
                // 1 - b + b_h + k grows with k, so a pole here only blanks
                // an initial stretch of terms -- never the whole tail.
                const double arg = 1.0 - b + bh + k;
                if (arg <= 0.0 && arg == std::floor(arg)) { transient_zero = true; break; }
                lt -= log_gamma(arg);
                sign *= gamma_sign(arg);
            }
            if (!transient_zero)
                for (double a : s.a_rest) {
                    // a - b_h - k falls with k: once it lands on a
                    // nonpositive integer every later term vanishes too.
                    const double arg = a - bh - k;
                    if (arg <= 0.0 && arg == std::floor(arg)) { permanent_zero = true; break; }
                    lt -= log_gamma(arg);
                    sign *= gamma_sign(arg);
                }
            if (transient_zero) continue;
            if (permanent_zero) { ++calm; if (calm >= 4 && k > 2) break; continue; }
            if (lt > 690.0)
                throw convergence_error("meijer_g: residue term overflow");
            const long double term = sign * std::exp((long double)lt);
            branch += term;
            peak = std::max(peak, std::abs(term));
            const bool descending = lt <= prev_lt + 1e-9;
            prev_lt = lt;
            if (k >= k_min && descending &&
                std::abs(double(term)) * tail_factor <=
                    0.001 * target_rel *
                        std::max(std::abs(double(branch)), 1e-300)) {
                if (++calm >= 4) break;
            } else {
                calm = 0;
            }
            if (k == 99999)
                throw convergence_error("meijer_g: residue series stalled");
        }
        total += branch;
        family_peak = std::max(family_peak, std::abs(branch));
    }
    const double floor_scale = std::max(std::abs(double(total)), 1e-300);
    if (peak > peak_guard * floor_scale || family_peak > peak_guard * floor_scale)
        throw convergence_error("meijer_g: residue series cancellation loss");
    return double(total);
}

// Single trapezoid pass along Re s = c.  The truncation grows from
// min_half_width until the integrand has dropped 46 e-folds below its
// running peak (capped at 10x), so slowly-decaying shapes are not cut off.
inline double contour_pass(const meijer_g_spec& s, double c,
                           double min_half_width, int nodes_per_unit) {
    const double lz = std::log(s.argument);
    const double h = 1.0 / nodes_per_unit;
    const double t_cap = 10.0 * min_half_width;
    std::vector<std::complex<double>> vals;
    vals.reserve(std::size_t(min_half_width * nodes_per_unit) + 1);
    double peak = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0;; ++j) {
        const double t = j * h;
        const std::complex<double> sj(c, t);
        const std::complex<double> lf = log_mb_kernel(s, sj) + sj * lz;
        vals.push_back(lf);
        peak = std::max(peak, lf.real());
        if (t >= min_half_width && lf.real() < peak - 46.0) break;
        if (t >= t_cap) break;
    }
    // real integrand symmetry: F(conj s) = conj F(s)
    long double acc = 0.5L * std::exp((long double)(vals[0].real() - peak)) *
                      std::cos((long double)vals[0].imag());
    for (std::size_t j = 1; j < vals.size(); ++j)
        acc += std::exp((long double)(vals[j].real() - peak)) *
               std::cos((long double)vals[j].imag());
    return double(acc) * 2.0 * h / (2.0 * std::numbers::pi) * std::exp(peak);
}

inline meijer_g_result contour_value(const meijer_g_spec& s,
                                     const meijer_g_options& o) {
    if (contour_decay_index(s) < 1)
        throw contour_error(
            "meijer_g: contour integrand does not decay for this shape");
    const pole_window w = separation_window(s);
    const double c = saddle_abscissa(s, w, 2.0 * o.epsilon);
    meijer_g_result r;
    r.used_contour = true;
    int npu = o.nodes_per_unit;
    double prev = contour_pass(s, c, o.half_width, npu);
    for (int it = 0; it < o.max_refinements; ++it) {
        npu *= 2;
        const double cur = contour_pass(s, c, o.half_width, npu);
        const double diff = std::abs(cur - prev);
        if (diff <= o.target_rel * std::max(std::abs(cur), 1e-300)) {
            r.value = cur;
            r.abs_error_estimate = diff;
            return r;
        }
        prev = cur;
    }
    throw convergence_error("meijer_g: contour refinement did not settle");
}

inline meijer_g_result evaluate_meijer_g(const meijer_g_spec& spec,
                                         const meijer_g_options& o) {
    check_meijer_spec(spec);
    using strategy = meijer_g_options::strategy;

    // Pick the orientation whose residue series can converge.
    const std::size_t p = spec.a_top.size() + spec.a_rest.size();
    const std::size_t q = spec.b_bottom.size() + spec.b_rest.size();
    const double z = spec.argument;
    meijer_g_spec series_spec = spec;
    bool series_regime = true;
    if (p < q) {
        // fine at any z
    } else if (p == q) {
        if (z > 1.0) series_spec = invert_spec(spec);
        // |ln z| small: series converges too slowly to be trusted
        if (std::abs(std::log(z)) < 0.05) series_regime = false;
    } else {
        series_spec = invert_spec(spec);
    }

    if (o.strat == strategy::contour)
        return contour_value(spec, o);

    if (o.strat == strategy::automatic) {
        // Near-coincident parameters are also better served by the contour:
        // reflection factors in the series blow up as the gap closes.
        const bool nearly_degenerate = series_is_degenerate(series_spec, 1e-3);
        if (!series_regime || nearly_degenerate)
            return contour_value(spec, o);
        try {
            meijer_g_result r;
            // Tight cancellation budget: the contour handles alternating
            // sums far better, so route anything that loses > 3 digits.
            r.value = residue_series_value(series_spec, o.target_rel, 1e3);
            r.abs_error_estimate =
                o.target_rel * std::abs(r.value);
            return r;
        } catch (const convergence_error&) {
            return contour_value(spec, o);
        } catch (const degenerate_parameter_error&) {
            return contour_value(spec, o);
        }
    }

    // strategy::residue_series -- honor the epsilon-separation protocol.
    if (!series_regime)
        throw convergence_error(
            "meijer_g: residue series cannot converge at this argument");
    const bool degenerate_input = series_is_degenerate(series_spec, 1e-9);
    meijer_g_spec work = series_spec;
    meijer_g_result r;
    auto nudged = [&](double eps) {
        meijer_g_spec w = series_spec;
        for (std::size_t j = 0; j < w.b_bottom.size(); ++j)
            w.b_bottom[j] += double(j + 1) * eps;
        return w;
    };
    for (int attempt = 0; attempt <= o.max_separation_attempts; ++attempt) {
        const double eps = o.epsilon * attempt;
        if (attempt > 0) {
            // nudge pole-generating parameters apart by distinct multiples
            // of epsilon (growing each retry)
            work = nudged(eps);
            r.perturbed = true;
        }
        if (series_is_degenerate(work, 1e-9)) continue;
        try {
            r.value = residue_series_value(work, o.target_rel, 1e8);
            r.abs_error_estimate = o.target_rel * std::abs(r.value);
            if (r.perturbed) {
                // Probe the perturbation sensitivity with a second pass at
                // 2*eps: |v(eps) - v(2*eps)| captures both the O(eps) bias
                // slope and the cancellation noise floor, either of which
                // may dominate.  The value stays at the protocol's eps.
                const meijer_g_spec work2 = nudged(2.0 * eps);
                if (!series_is_degenerate(work2, 1e-9)) {
                    const double v2 =
                        residue_series_value(work2, o.target_rel, 1e8);
                    r.abs_error_estimate += 2.0 * std::abs(r.value - v2);
                } else {
                    r.abs_error_estimate +=
                        1e3 * eps * (std::abs(r.value) + 1e-30);
                }
            }
            return r;
        } catch (const degenerate_parameter_error&) {
            continue; // widen the nudge and retry
        } catch (const convergence_error&) {
            // A too-tight separation shows up as catastrophic cancellation
            // between the nearly-merged pole towers; widening the nudge is
            // the cure, so stay on the ladder.  For a spec that was clean
            // to begin with, cancellation is a real verdict -- report it.
            if (!degenerate_input) throw;
            continue;
        }
    }
    throw degenerate_parameter_error(
        "meijer_g: epsilon separation failed after max attempts");
}

} // namespace detail

// Full-diagnostics entry point.
inline meijer_g_result meijer_g_full(const meijer_g_spec& spec,
                                     const meijer_g_options& opts = {}) {
    return detail::evaluate_meijer_g(spec, opts);
}

// Value-only convenience wrapper.
inline double meijer_g(const meijer_g_spec& spec) {
    return detail::evaluate_meijer_g(spec, {}).value;
}

} // namespace fsecrecy

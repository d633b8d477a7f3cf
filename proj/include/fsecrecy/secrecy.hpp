#pragma once

// Secrecy metrics for a two-channel wiretap setup over Fisher-Snedecor F
// fading: average secrecy capacity (ASC), secrecy outage probability (SOP),
// its analytical lower bound (SOP^L), and the probability of strictly
// positive secrecy capacity (SPSC).
//
// Every metric is available through two independent evaluation paths that
// cross-validate each other:
//   *_closed     -- closed forms built from univariate Meijer G functions
//                   and the extended generalized bivariate Meijer G.
//   *_quadrature -- adaptive quadrature of the defining SNR integrals using
//                   the fading-model pdf/cdf directly.
//
// Conventions: ASC is in nats; theta = exp(r_s) with the target secrecy
// rate r_s in nats; channel D is the legitimate link, channel E the
// eavesdropper.  Subscripts D/E on shapes (m, m_s) and on Xi follow the
// fading module.
//
// The closed forms used here are regular at integer m_E: the bivariate
// representations below carry no reflection factor with a pole there, so
// the parameter-shift machinery the API advertises (perturbed_parameters)
// fires only for the rho -> 1 clamp in sop_closed, never for m_E itself.

#include <cmath>
#include <string>

#include "errors.hpp"
#include "fading.hpp"
#include "quadrature.hpp"
#include "specfun/egbmgf.hpp"
#include "specfun/gamma.hpp"
#include "specfun/meijer_g.hpp"

namespace fsecrecy {

struct wiretap_scenario {
    fading_params main; // channel D (legitimate)
    fading_params eve;  // channel E (eavesdropper)
    double r_s;         // target secrecy rate, nats
    double theta;       // exp(r_s), derived, always >= 1

    wiretap_scenario(const fading_params& main_, const fading_params& eve_,
                     double r_s_ = 0.0)
        : main(main_), eve(eve_), r_s(r_s_), theta(std::exp(r_s_)) {
        if (!(r_s >= 0.0) || !std::isfinite(r_s))
            throw domain_error("wiretap_scenario: r_s must be non-negative and finite");
    }
};

enum class eval_method { closed_form, quadrature, monte_carlo };

struct metric_flags {
    bool perturbed_parameters = false;
    bool near_singular_theta = false;
    bool slow_convergence = false;

    bool any() const {
        return perturbed_parameters || near_singular_theta || slow_convergence;
    }
    // Semicolon-joined flag names, empty when clean (CSV-friendly).
    std::string to_string() const {
        std::string out;
        auto add = [&out](const char* name) {
            if (!out.empty()) out += ';';
            out += name;
        };
        if (perturbed_parameters) add("perturbed_parameters");
        if (near_singular_theta) add("near_singular_theta");
        if (slow_convergence) add("slow_convergence");
        return out;
    }
};

struct metric_result {
    double value = 0.0;
    eval_method method = eval_method::closed_form;
    double abs_error_estimate = 0.0;
    metric_flags flags;
};

namespace detail {

// u-range for the log-transformed half-line integrals: the integrand head
// behaves like e^(m u) and the tail like e^(-m_s u), so these cutoffs keep
// the truncated mass far below 1e-12 even for shape 0.5 heavy tails.
inline double u_head(double m) { return std::fmin(-46.0, -(35.0 / m + 25.0)); }
inline double u_tail(double m_s) { return std::fmax(46.0, 35.0 / m_s + 25.0); }

// I1 of the ASC decomposition: integral of ln(1+g) f_D(g) F_E(g), evaluated
// through the bivariate Meijer G representation.  I2 is the same object with
// the channel labels swapped.
inline double asc_cross_term(const fading_params& d, const fading_params& e,
                             double& abs_err) {
    egbmgf_spec eg;
    eg.outer = {{1.0 - d.m - e.m}, {}, {d.m_s - e.m}, {}, 1.0};
    eg.inner1 = {{1.0, 1.0}, {}, {1.0}, {0.0}, 1.0};
    eg.inner2 = {{1.0 - e.m - e.m_s, 1.0 - e.m}, {}, {0.0}, {-e.m}, 1.0};
    eg.x = 1.0 / d.xi;
    eg.y = e.xi / d.xi;
    const egbmgf_result r = egbmgf_log(eg);
    const double lpref =
        e.m * std::log(e.xi / d.xi) -
        (log_gamma(d.m) + log_gamma(d.m_s) + log_gamma(e.m) + log_gamma(e.m_s));
    const double scale = std::exp(r.log_scale + lpref);
    abs_err = r.abs_error_estimate * scale;
    return r.mantissa * scale;
}

// I3 of the ASC decomposition: integral of ln(1+g) f_E(g), via univariate
// Meijer G (a G^{2,3}_{3,3} at argument 1/Xi_E).
inline double asc_eve_term(const fading_params& e, double& abs_err,
                           bool& perturbed) {
    meijer_g_spec spec{{1.0 - e.m, 1.0, 1.0}, {}, {e.m_s, 1.0}, {0.0},
                       1.0 / e.xi};
    const meijer_g_result r = meijer_g_full(spec);
    const double scale = std::exp(-(log_gamma(e.m) + log_gamma(e.m_s)));
    abs_err = r.abs_error_estimate * scale;
    perturbed = r.perturbed;
    return r.value * scale;
}

} // namespace detail

// ASC = I1 + I2 - I3 in nats, all three terms by their closed forms.
inline metric_result asc_closed(const wiretap_scenario& s) {
    metric_result out;
    out.method = eval_method::closed_form;
    double e1 = 0.0, e2 = 0.0, e3 = 0.0;
    bool pert = false;
    const double i1 = detail::asc_cross_term(s.main, s.eve, e1);
    const double i2 = detail::asc_cross_term(s.eve, s.main, e2);
    const double i3 = detail::asc_eve_term(s.eve, e3, pert);
    out.value = i1 + i2 - i3;
    out.abs_error_estimate = e1 + e2 + e3;
    out.flags.perturbed_parameters = pert;
    return out;
}

// ASC by adaptive quadrature of the defining integrals:
//   I1 = int ln(1+g) f_D(g) F_E(g) dg,  I2 = labels swapped,
//   I3 = int ln(1+g) f_E(g) dg.
inline metric_result asc_quadrature(const wiretap_scenario& s) {
    metric_result out;
    out.method = eval_method::quadrature;
    const auto& d = s.main;
    const auto& e = s.eve;
    auto f1 = [&](double g) { return std::log1p(g) * pdf(d, g) * cdf(e, g); };
    auto f2 = [&](double g) { return std::log1p(g) * pdf(e, g) * cdf(d, g); };
    auto f3 = [&](double g) { return std::log1p(g) * pdf(e, g); };
    const double lo = std::fmin(detail::u_head(d.m), detail::u_head(e.m));
    const double hi = std::fmax(detail::u_tail(d.m_s), detail::u_tail(e.m_s));
    const quad_result q1 = integrate_half_line(f1, 1e-10, 1e-10, lo, hi);
    const quad_result q2 = integrate_half_line(f2, 1e-10, 1e-10, lo, hi);
    const quad_result q3 = integrate_half_line(f3, 1e-10, 1e-10, lo, hi);
    out.value = q1.value + q2.value - q3.value;
    out.abs_error_estimate = q1.abs_error + q2.abs_error + q3.abs_error + 1e-12;
    out.flags.slow_convergence = !(q1.converged && q2.converged && q3.converged);
    return out;
}

// SOP^L closed form: theta^{m_D} (Xi_D/Xi_E)^{m_D} x G^{2,3}_{3,3} / (product
// of the four shape Gammas), regular for every theta >= 1 including 1.
inline metric_result sop_lower_closed(const wiretap_scenario& s) {
    metric_result out;
    out.method = eval_method::closed_form;
    const auto& d = s.main;
    const auto& e = s.eve;
    const double z = s.theta * d.xi / e.xi;
    meijer_g_spec spec{{1.0 - e.m - d.m, 1.0 - d.m - d.m_s, 1.0 - d.m},
                       {},
                       {e.m_s - d.m, 0.0},
                       {-d.m},
                       z};
    const meijer_g_result r = meijer_g_full(spec);
    const double lpref =
        d.m * std::log(z) - (log_gamma(d.m) + log_gamma(d.m_s) +
                             log_gamma(e.m) + log_gamma(e.m_s));
    const double scale = std::exp(lpref);
    out.value = r.value * scale;
    out.abs_error_estimate = r.abs_error_estimate * scale;
    out.flags.perturbed_parameters = r.perturbed;
    return out;
}

// SOP^L by quadrature: int F_D(theta g) f_E(g) dg.
inline metric_result sop_lower_quadrature(const wiretap_scenario& s) {
    metric_result out;
    out.method = eval_method::quadrature;
    const auto& d = s.main;
    const auto& e = s.eve;
    const double theta = s.theta;
    auto f = [&](double g) { return cdf(d, theta * g) * pdf(e, g); };
    const quad_result q =
        integrate_half_line(f, 1e-10, 1e-10, detail::u_head(e.m),
                            detail::u_tail(e.m_s));
    out.value = q.value;
    out.abs_error_estimate = q.abs_error + 1e-12;
    out.flags.slow_convergence = !q.converged;
    return out;
}

// SOP closed form.  The bivariate representation comes in two algebraically
// equivalent shapes selected by rho = theta / ((theta-1) Xi_E): an expansion
// valid for rho > 1 and a transformed one for rho < 1.  At rho = 1 exactly
// the representation degenerates; the parameter is nudged to the rho > 1
// side and the result flagged as perturbed.  At theta = 1 exactly the
// defining integral coincides with SOP^L's, which is regular there, so that
// route is used instead of the (theta-1)-singular expansion.
inline metric_result sop_closed(const wiretap_scenario& s) {
    const auto& d = s.main;
    const auto& e = s.eve;
    if (s.theta == 1.0) {
        metric_result out = sop_lower_closed(s);
        out.flags.near_singular_theta = true;
        return out;
    }
    metric_result out;
    out.method = eval_method::closed_form;
    out.flags.near_singular_theta = s.theta < 1.0 + 1e-3;
    const double beta = s.theta - 1.0;
    double rho = s.theta / (beta * e.xi);
    if (std::fabs(rho - 1.0) < 1e-13) {
        rho = 1.0 + 1e-13;
        out.flags.perturbed_parameters = true;
    }
    egbmgf_spec eg;
    double lpref;
    if (rho > 1.0) {
        eg.outer = {{1.0 - e.m - e.m_s}, {}, {0.0}, {}, 1.0};
        eg.inner1 = {{1.0 + d.m - e.m_s}, {}, {}, {1.0 + d.m - e.m - e.m_s},
                     1.0};
        eg.inner2 = {{1.0 - d.m - d.m_s, 1.0 - d.m}, {}, {0.0}, {-d.m}, 1.0};
        eg.x = rho - 1.0;
        eg.y = d.xi * beta * (rho - 1.0);
        lpref = d.m * std::log(d.xi * beta) + e.m_s * std::log(rho) -
                (log_gamma(d.m) + log_gamma(d.m_s) + log_gamma(e.m_s));
    } else {
        eg.outer = {{}, {}, {}, {1.0 + d.m - e.m - e.m_s}, 1.0};
        eg.inner1 = {{1.0 - e.m - e.m_s, 1.0 - e.m}, {}, {0.0}, {}, 1.0};
        eg.inner2 = {{1.0, 1.0 + d.m - e.m_s},
                     {1.0 + d.m},
                     {d.m + d.m_s, d.m},
                     {},
                     1.0};
        eg.x = (1.0 - rho) / rho;
        eg.y = 1.0 / (d.xi * beta);
        lpref = d.m * std::log(d.xi * beta) - e.m * std::log(rho) -
                (log_gamma(d.m) + log_gamma(d.m_s) + log_gamma(e.m) +
                 log_gamma(e.m_s));
    }
    const egbmgf_result r = egbmgf_log(eg);
    const double scale = std::exp(r.log_scale + lpref);
    out.value = r.mantissa * scale;
    out.abs_error_estimate = r.abs_error_estimate * scale;
    return out;
}

// SOP by quadrature: int F_D(theta g + theta - 1) f_E(g) dg.
inline metric_result sop_quadrature(const wiretap_scenario& s) {
    metric_result out;
    out.method = eval_method::quadrature;
    const auto& d = s.main;
    const auto& e = s.eve;
    const double theta = s.theta;
    auto f = [&](double g) {
        return cdf(d, theta * g + theta - 1.0) * pdf(e, g);
    };
    const quad_result q =
        integrate_half_line(f, 1e-10, 1e-10, detail::u_head(e.m),
                            detail::u_tail(e.m_s));
    out.value = q.value;
    out.abs_error_estimate = q.abs_error + 1e-12;
    out.flags.slow_convergence = !q.converged;
    return out;
}

// SPSC = 1 - SOP^L at theta = 1 (the two outage integrals coincide there);
// r_s is ignored.  Falls back to the quadrature path if the closed form
// reports an evaluation error.
inline metric_result spsc(const wiretap_scenario& s) {
    const wiretap_scenario unit(s.main, s.eve, 0.0);
    metric_result inner;
    try {
        inner = sop_lower_closed(unit);
    } catch (const std::runtime_error&) {
        // convergence / contour / degeneracy failures; domain errors (bad
        // inputs, std::logic_error family) still propagate.
        inner = sop_lower_quadrature(unit);
    }
    metric_result out = inner;
    out.value = 1.0 - inner.value;
    return out;
}

// Quadrature companion to spsc() for cross-path checks and sweeps.
inline metric_result spsc_quadrature(const wiretap_scenario& s) {
    const wiretap_scenario unit(s.main, s.eve, 0.0);
    metric_result out = sop_lower_quadrature(unit);
    out.value = 1.0 - out.value;
    return out;
}

} // namespace fsecrecy

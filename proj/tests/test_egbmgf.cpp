#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "fsecrecy/specfun/egbmgf.hpp"
#include "fsecrecy/specfun/gamma.hpp"
#include "oracles.hpp"

using namespace fsecrecy;
using Catch::Approx;

namespace {

// Cross-channel average-capacity term at shapes (2.5, 5 | 1, 2) with mean
// SNRs 10 and 10^0.5: the bivariate kernel paired with the log block.
egbmgf_spec cross_term_spec() {
    const double xi_d = 2.5 / (5.0 * 10.0);
    const double xi_e = 1.0 / (2.0 * std::sqrt(10.0));
    egbmgf_spec eg;
    eg.outer = {{1.0 - 2.5 - 1.0}, {}, {5.0 - 1.0}, {}, 1.0};
    eg.inner1 = {{1.0, 1.0}, {}, {1.0}, {0.0}, 1.0};
    eg.inner2 = {{1.0 - 1.0 - 2.0, 1.0 - 1.0}, {}, {0.0}, {-1.0}, 1.0};
    eg.x = 1.0 / xi_d;
    eg.y = xi_e / xi_d;
    return eg;
}

double cross_term_value(const egbmgf_result& r) {
    const double xi_d = 2.5 / (5.0 * 10.0);
    const double xi_e = 1.0 / (2.0 * std::sqrt(10.0));
    const double lpref = 1.0 * std::log(xi_e / xi_d) -
                         (log_gamma(2.5) + log_gamma(5.0) + log_gamma(1.0) +
                          log_gamma(2.0));
    return r.mantissa * std::exp(r.log_scale + lpref);
}

} // namespace

TEST_CASE("egbmgf reproduces the cross-channel capacity term", "[egbmgf]") {
    const auto r = egbmgf_log(cross_term_spec());
    CHECK(cross_term_value(r) == Approx(oracles::p1_i1).epsilon(1e-9));
    CHECK(r.abs_error_estimate < 1e-6 * std::fabs(r.mantissa));
    // The plain wrapper is the split form recombined.
    CHECK(egbmgf(cross_term_spec()) ==
          Approx(r.mantissa * std::exp(r.log_scale)).epsilon(1e-12));
}

TEST_CASE("egbmgf is stable under node doubling", "[egbmgf]") {
    contour_settings coarse;
    coarse.nodes_per_unit = 32;
    contour_settings fine;
    fine.nodes_per_unit = 64;
    const auto a = egbmgf_log(cross_term_spec(), coarse);
    const auto b = egbmgf_log(cross_term_spec(), fine);
    const double va = a.mantissa * std::exp(a.log_scale);
    const double vb = b.mantissa * std::exp(b.log_scale);
    CHECK(va == Approx(vb).epsilon(1e-6));
}

TEST_CASE("egbmgf honors feasible explicit shifts", "[egbmgf]") {
    contour_settings s;
    s.shift1 = 0.5;   // inside the log-block window (0, 1)
    s.shift2 = -0.5;  // inside the density-block window (-1, 0)
    const auto pinned = egbmgf_log(cross_term_spec(), s);
    const auto autos = egbmgf_log(cross_term_spec());
    CHECK(cross_term_value(pinned) ==
          Approx(cross_term_value(autos)).epsilon(1e-6));
}

TEST_CASE("egbmgf reproduces the outage Euler form", "[egbmgf]") {
    // Outage probability at shapes (2.5, 5 | 1.5, 2.5), mean SNR ratio
    // 10 dB over a 5 dB eavesdropper, threshold theta = e.
    const double theta = std::numbers::e;
    const double beta = theta - 1.0;
    const double g_e = std::sqrt(10.0);
    const double g_d = 10.0 * g_e;
    const double xi_d = 2.5 / (5.0 * g_d);
    const double xi_e = 1.5 / (2.5 * g_e);
    const double rho = theta / (beta * xi_e);
    REQUIRE(rho > 1.0);

    egbmgf_spec eg;
    eg.outer = {{1.0 - 1.5 - 2.5}, {}, {0.0}, {}, 1.0};
    eg.inner1 = {{1.0 + 2.5 - 2.5}, {}, {}, {1.0 + 2.5 - 1.5 - 2.5}, 1.0};
    eg.inner2 = {{1.0 - 2.5 - 5.0, 1.0 - 2.5}, {}, {0.0}, {-2.5}, 1.0};
    eg.x = rho - 1.0;
    eg.y = xi_d * beta * (rho - 1.0);
    const auto r = egbmgf_log(eg);
    const double lpref =
        2.5 * std::log(xi_d * beta) + 2.5 * std::log(rho) -
        (log_gamma(2.5) + log_gamma(5.0) + log_gamma(2.5));
    const double sop = r.mantissa * std::exp(r.log_scale + lpref);
    CHECK(sop == Approx(oracles::p2_sop).epsilon(1e-9));
}

TEST_CASE("egbmgf rejects invalid settings and weights", "[egbmgf]") {
    contour_settings bad;
    bad.nodes_per_unit = 4;
    CHECK_THROWS_AS(egbmgf_log(cross_term_spec(), bad), domain_error);

    contour_settings flat;
    flat.half_width = 0.0;
    CHECK_THROWS_AS(egbmgf_log(cross_term_spec(), flat), domain_error);

    contour_settings neg;
    neg.max_refinements = -1;
    CHECK_THROWS_AS(egbmgf_log(cross_term_spec(), neg), domain_error);

    auto zero_x = cross_term_spec();
    zero_x.x = 0.0;
    CHECK_THROWS_AS(egbmgf_log(zero_x), domain_error);
    auto neg_y = cross_term_spec();
    neg_y.y = -1.0;
    CHECK_THROWS_AS(egbmgf_log(neg_y), domain_error);
}

TEST_CASE("egbmgf rejects non-separating shifts", "[egbmgf]") {
    contour_settings s;
    s.shift1 = 5.0;   // beyond the log-block window (0, 1)
    s.shift2 = -0.5;
    CHECK_THROWS_AS(egbmgf_log(cross_term_spec(), s), contour_error);
}

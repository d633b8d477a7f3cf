#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "fsecrecy/secrecy.hpp"
#include "fsecrecy/sweep.hpp"
#include "oracles.hpp"

using namespace fsecrecy;
using Catch::Approx;

namespace {

const double kSqrt10 = std::sqrt(10.0);

// Mean-SNR convention used throughout: the eavesdropper sits at 5 dB and
// the main channel is offset by a dB ratio.
wiretap_scenario ratio_scenario(double m_d, double ms_d, double m_e,
                                double ms_e, double lambda_db, double r_s) {
    const double g_e = kSqrt10;
    const double g_d = std::pow(10.0, lambda_db / 10.0) * g_e;
    return wiretap_scenario(fading_params(m_d, ms_d, g_d),
                            fading_params(m_e, ms_e, g_e), r_s);
}

wiretap_scenario case_scenario(const regression_case& c) {
    return ratio_scenario(c.shapes[0], c.shapes[1], c.shapes[2], c.shapes[3],
                          c.lambda_db, c.r_s);
}

} // namespace

TEST_CASE("secrecy metrics match reference pins", "[secrecy]") {
    // Shapes (2.5, 5 | 1, 2), absolute mean SNRs 10 and 10^0.5, rate 1.
    const wiretap_scenario s1(fading_params(2.5, 5.0, 10.0),
                              fading_params(1.0, 2.0, kSqrt10), 1.0);
    CHECK(asc_closed(s1).value == Approx(oracles::p1_asc).epsilon(1e-9));
    CHECK(asc_quadrature(s1).value ==
          Approx(oracles::p1_asc).epsilon(1e-9));
    CHECK(sop_closed(s1).value == Approx(oracles::p1_sop).epsilon(1e-9));
    CHECK(sop_quadrature(s1).value ==
          Approx(oracles::p1_sop).epsilon(1e-9));

    // Shapes (2.5, 5 | 1.5, 2.5), 10 dB ratio, rate 1.
    const wiretap_scenario s2 = ratio_scenario(2.5, 5.0, 1.5, 2.5, 10.0, 1.0);
    CHECK(sop_closed(s2).value == Approx(oracles::p2_sop).epsilon(1e-9));
    CHECK(sop_quadrature(s2).value ==
          Approx(oracles::p2_sop).epsilon(1e-9));
    CHECK(sop_lower_closed(s2).value ==
          Approx(oracles::p2_sopl).epsilon(1e-9));
    CHECK(sop_lower_quadrature(s2).value ==
          Approx(oracles::p2_sopl).epsilon(1e-9));

    // Shapes (2.5, 5 | 0.5, 50), 10 dB ratio: probability of strictly
    // positive secrecy capacity.
    const wiretap_scenario s3 = ratio_scenario(2.5, 5.0, 0.5, 50.0, 10.0, 0.0);
    CHECK(spsc(s3).value == Approx(oracles::p3_spsc).epsilon(1e-9));
    CHECK(spsc_quadrature(s3).value ==
          Approx(oracles::p3_spsc).epsilon(1e-9));
}

TEST_CASE("secrecy closed forms agree with quadrature on the grid",
          "[secrecy]") {
    for (const auto& c : regression_grid()) {
        const wiretap_scenario s = case_scenario(c);
        INFO("shapes=(" << c.shapes[0] << "," << c.shapes[1] << "|"
                        << c.shapes[2] << "," << c.shapes[3]
                        << ") lambda=" << c.lambda_db << " rs=" << c.r_s);
        const double asc_c = asc_closed(s).value;
        const double asc_q = asc_quadrature(s).value;
        CHECK(std::fabs(asc_c - asc_q) <=
              1e-4 * std::fmax(std::fabs(asc_q), 1e-12));
        const double sop_c = sop_closed(s).value;
        const double sop_q = sop_quadrature(s).value;
        CHECK(std::fabs(sop_c - sop_q) <=
              1e-4 * std::fmax(std::fabs(sop_q), 1e-12));
        const double sl_c = sop_lower_closed(s).value;
        const double sl_q = sop_lower_quadrature(s).value;
        CHECK(std::fabs(sl_c - sl_q) <=
              1e-4 * std::fmax(std::fabs(sl_q), 1e-12));
        const double ps_c = spsc(s).value;
        const double ps_q = spsc_quadrature(s).value;
        CHECK(std::fabs(ps_c - ps_q) <=
              1e-4 * std::fmax(std::fabs(ps_q), 1e-12));

        // Probability bounds and the lower-bound ordering.
        for (const double v : {sop_c, sl_c, ps_c}) {
            CHECK(v >= -1e-6);
            CHECK(v <= 1.0 + 1e-6);
        }
        CHECK(asc_c >= -1e-6);
        CHECK(sl_c <= sop_c + 1e-6);
    }
}

TEST_CASE("secrecy outage at theta = 1 collapses to the lower bound",
          "[secrecy]") {
    const wiretap_scenario s = ratio_scenario(2.5, 5.0, 1.5, 2.5, 10.0, 0.0);
    const auto full = sop_closed(s);
    const auto lower = sop_lower_closed(s);
    CHECK(full.value == lower.value);  // same formula, delegated exactly
    CHECK(full.flags.near_singular_theta);
    CHECK_FALSE(lower.flags.near_singular_theta);

    const auto full_q = sop_quadrature(s);
    const auto lower_q = sop_lower_quadrature(s);
    CHECK(full_q.value == Approx(lower_q.value).margin(1e-9));
}

TEST_CASE("secrecy near-singular threshold flag", "[secrecy]") {
    const auto flagged =
        sop_closed(ratio_scenario(2.5, 5.0, 1.5, 2.5, 10.0, 1e-4));
    CHECK(flagged.flags.near_singular_theta);
    const auto clean =
        sop_closed(ratio_scenario(2.5, 5.0, 1.5, 2.5, 10.0, 1.0));
    CHECK_FALSE(clean.flags.near_singular_theta);
}

TEST_CASE("secrecy degenerate outage ratio is perturbed, not fatal",
          "[secrecy]") {
    // With unit eavesdropper shapes and mean SNR beta/theta, the internal
    // ratio lands exactly on its branch point; the evaluator must nudge
    // it and say so.
    const double theta = std::exp(1.0);
    const double beta = theta - 1.0;
    const wiretap_scenario s(fading_params(2.5, 5.0, 31.623),
                             fading_params(1.0, 1.0, beta / theta), 1.0);
    const auto r = sop_closed(s);
    CHECK(r.flags.perturbed_parameters);
    CHECK(r.value >= -1e-6);
    CHECK(r.value <= 1.0 + 1e-6);
    // The nudge must not move the value measurably.
    const auto q = sop_quadrature(s);
    CHECK(r.value == Approx(q.value).epsilon(1e-4));
}

TEST_CASE("secrecy handles integer eavesdropper multipath cleanly",
          "[secrecy]") {
    // m_E = 1 and 2 make classic Gamma-function prefactors singular in
    // naive formulations; these evaluations must be plain and accurate.
    for (const double m_e : {1.0, 2.0}) {
        const wiretap_scenario s =
            ratio_scenario(2.5, 5.0, m_e, 2.5, 10.0, 1.0);
        INFO("m_e=" << m_e);
        const auto c = sop_closed(s);
        CHECK_FALSE(c.flags.perturbed_parameters);
        CHECK(c.value == Approx(sop_quadrature(s).value).epsilon(1e-6));
        CHECK(asc_closed(s).value ==
              Approx(asc_quadrature(s).value).epsilon(1e-6));
        CHECK(sop_lower_closed(s).value ==
              Approx(sop_lower_quadrature(s).value).epsilon(1e-6));
    }
}

TEST_CASE("secrecy metrics are monotone in the mean-SNR ratio",
          "[secrecy]") {
    const double slack = 1e-7;
    double prev_asc = -1e300, prev_sop = 1e300, prev_spsc = -1e300;
    for (int i = 0; i <= 40; ++i) {
        const double ldb = -5.0 + 35.0 * i / 40.0;
        const wiretap_scenario s =
            ratio_scenario(2.5, 5.0, 1.5, 2.5, ldb, 0.5);
        const double a = asc_closed(s).value;
        const double o = sop_closed(s).value;
        const double p = spsc(s).value;
        INFO("lambda_db=" << ldb);
        CHECK(a >= prev_asc - slack);
        CHECK(o <= prev_sop + slack);
        CHECK(p >= prev_spsc - slack);
        prev_asc = a;
        prev_sop = o;
        prev_spsc = p;
    }
}

TEST_CASE("secrecy balanced channels give even odds", "[secrecy]") {
    // Identical main and eavesdropper channels: capacity advantage is a
    // fair coin, so SPSC = 1/2 and the theta = 1 lower bound is its
    // complement.
    const fading_params p(2.5, 5.0, 3.1623);
    const wiretap_scenario s(p, p, 0.0);
    const auto ps = spsc(s);
    CHECK(ps.value == Approx(0.5).margin(1e-6));
    const auto sl = sop_lower_closed(s);
    CHECK(ps.value + sl.value == Approx(1.0).margin(1e-12));
}

TEST_CASE("secrecy scenario validation", "[secrecy]") {
    const fading_params p(2.5, 5.0, 1.0);
    CHECK_THROWS_AS(wiretap_scenario(p, p, -0.1), domain_error);
    CHECK_THROWS_AS(wiretap_scenario(p, p, std::nan("")), domain_error);
}

TEST_CASE("secrecy flag formatting", "[secrecy]") {
    metric_flags none;
    CHECK_FALSE(none.any());
    CHECK(none.to_string().empty());
    metric_flags some;
    some.perturbed_parameters = true;
    some.slow_convergence = true;
    CHECK(some.any());
    const std::string txt = some.to_string();
    CHECK(txt.find("perturbed_parameters") != std::string::npos);
    CHECK(txt.find("slow_convergence") != std::string::npos);
    CHECK(txt.find("near_singular_theta") == std::string::npos);
}

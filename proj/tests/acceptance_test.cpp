// Acceptance harness: one self-contained check per criterion, one printed
// line each, non-zero exit when anything fails.  Each check states its own
// numeric gate in the detail string so the log is reviewable on its own.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "fsecrecy/fsecrecy.hpp"

using namespace fsecrecy;

namespace {

struct criterion_result {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

wiretap_scenario make_scenario(const scenario_shapes& sc, double lambda_db,
                               double eve_db, double r_s) {
    const double g_e = db_to_linear(eve_db);
    const double g_d = db_to_linear(lambda_db) * g_e;
    return wiretap_scenario(fading_params(sc[0], sc[1], g_d),
                            fading_params(sc[2], sc[3], g_e), r_s);
}

// A1: heavy-vs-light eavesdropper shadowing changes the average secrecy
// capacity by 15..35% at a mean-SNR ratio of 6, under at least one reading
// (dB or linear) of the ratio axis.
criterion_result check_a1() {
    const double g_e = db_to_linear(5.0);
    auto ratio_for = [&](double g_d) {
        const fading_params d(2.5, 5.0, g_d);
        const wiretap_scenario light(d, fading_params(0.5, 50.0, g_e), 0.0);
        const wiretap_scenario heavy(d, fading_params(0.5, 0.5, g_e), 0.0);
        return asc_closed(light).value / asc_closed(heavy).value;
    };
    const double r_db = ratio_for(db_to_linear(6.0) * g_e);
    const double r_lin = ratio_for(6.0 * g_e);
    auto in_band = [](double r) { return r >= 1.15 && r <= 1.35; };
    criterion_result out;
    out.pass = in_band(r_db) || in_band(r_lin);
    out.detail = fmt("capacity ratio light/heavy shadowing at ratio 6: "
                     "db-reading %.6f%s, linear-reading %.6f%s, band "
                     "[1.15, 1.35]",
                     r_db, in_band(r_db) ? " (in band)" : "", r_lin,
                     in_band(r_lin) ? " (in band)" : "");
    return out;
}

// A2: on the full figure grids (36 ratio points x 4 eavesdropper shape
// pairs, rate 1), the outage probability never falls below its analytic
// lower bound by more than 1e-6.
criterion_result check_a2() {
    const sweep_config grid = preset_config("fig2").expansion;
    double worst = 1e300;
    for (const double ldb : grid.lambda.expand())
        for (const auto& sc : grid.scenarios) {
            const wiretap_scenario s =
                make_scenario(sc, ldb, grid.eve_snr_db, grid.r_s);
            const double gap =
                sop_closed(s).value - sop_lower_closed(s).value;
            worst = std::fmin(worst, gap);
        }
    criterion_result out;
    out.pass = worst >= -1e-6;
    out.detail = fmt("min(sop - sop_lower) over 144 grid points = %.3e "
                     "(gate >= -1e-6)",
                     worst);
    return out;
}

// A3: closed forms against direct quadrature over the 12-scenario
// regression grid, relative disagreement < 1e-4 for all three integral
// metrics.
criterion_result check_a3() {
    double worst = 0.0;
    auto rel = [](double a, double b) {
        return std::fabs(a - b) / std::fmax(std::fabs(b), 1e-12);
    };
    for (const auto& rc : regression_grid()) {
        const wiretap_scenario s =
            make_scenario(rc.shapes, rc.lambda_db, 5.0, rc.r_s);
        worst = std::fmax(worst,
                          rel(asc_closed(s).value, asc_quadrature(s).value));
        worst = std::fmax(worst,
                          rel(sop_closed(s).value, sop_quadrature(s).value));
        worst = std::fmax(worst, rel(sop_lower_closed(s).value,
                                     sop_lower_quadrature(s).value));
    }
    criterion_result out;
    out.pass = worst < 1e-4;
    out.detail =
        fmt("worst closed-vs-quadrature relative gap = %.3e (gate 1e-4)",
            worst);
    return out;
}

// A4: at n = 10^7 samples, every closed-form value on the regression grid
// sits within 3 standard errors of its Monte Carlo estimate.
criterion_result check_a4() {
    sim_config c;
    c.n_samples = 10000000;
    c.seed = 20260819;
    double worst = 0.0;
    for (const auto& rc : regression_grid()) {
        const wiretap_scenario s =
            make_scenario(rc.shapes, rc.lambda_db, 5.0, rc.r_s);
        const mc_metrics m = mc_all_metrics(s, c);
        const double closed[4] = {asc_closed(s).value, sop_closed(s).value,
                                  sop_lower_closed(s).value, spsc(s).value};
        const mc_estimate est[4] = {m.asc, m.sop, m.sop_lower, m.spsc};
        for (int k = 0; k < 4; ++k) {
            const double se =
                est[k].std_error > 0.0 ? est[k].std_error : 1e-300;
            worst = std::fmax(worst, std::fabs(est[k].mean - closed[k]) / se);
        }
    }
    criterion_result out;
    out.pass = worst < 3.0;
    out.detail = fmt("worst |z| over 12 scenarios x 4 metrics at n=10^7 = "
                     "%.2f (gate 3.0)",
                     worst);
    return out;
}

// A5: for every (m, m_s, mean SNR) triple on the shape grid, the sampler's
// empirical distribution matches the analytic CDF (two-sided KS < 0.002 at
// n = 10^6) and the density integrates to 1 within 1e-8.
criterion_result check_a5() {
    const double shapes[] = {0.5, 1.0, 2.5, 5.0, 50.0};
    const double scales[] = {0.5, 3.1623, 10.0};
    struct triple {
        double m, ms, gb;
    };
    std::vector<triple> triples;
    for (double m : shapes)
        for (double ms : shapes)
            for (double gb : scales) triples.push_back({m, ms, gb});

    std::vector<double> ks(triples.size(), 0.0);
    std::vector<double> norm_err(triples.size(), 0.0);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= triples.size()) return;
            const triple& tr = triples[i];
            const fading_params p(tr.m, tr.ms, tr.gb);

            const double lo = std::fmin(-46.0, -(35.0 / tr.m + 25.0));
            const double hi = std::fmax(46.0, 35.0 / tr.ms + 25.0);
            const auto q = integrate_half_line(
                [&p](double g) { return pdf(p, g); }, 1e-12, 1e-12, lo, hi);
            norm_err[i] = std::fabs(q.value - 1.0);

            xoshiro256pp g(424200 + std::uint64_t(i));
            const std::size_t n = 1000000;
            std::vector<double> xs = sample(p, g, n);
            std::sort(xs.begin(), xs.end());
            double d = 0.0;
            for (std::size_t k = 0; k < n; ++k) {
                const double f = cdf(p, xs[k]);
                d = std::fmax(d, std::fabs(f - double(k + 1) / double(n)));
                d = std::fmax(d, std::fabs(f - double(k) / double(n)));
            }
            ks[i] = d;
        }
    };
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    const unsigned workers = std::min<unsigned>(hw, 8);
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    const double worst_ks = *std::max_element(ks.begin(), ks.end());
    const double worst_norm =
        *std::max_element(norm_err.begin(), norm_err.end());
    criterion_result out;
    out.pass = worst_ks < 0.002 && worst_norm < 1e-8;
    out.detail = fmt("75 parameter triples: worst KS(n=10^6) = %.5f (gate "
                     "0.002), worst |norm - 1| = %.2e (gate 1e-8)",
                     worst_ks, worst_norm);
    return out;
}

// A6: with shadowing shape 10^4 the density is within 1e-3 (sup norm on
// gamma in [0.01, 20]) of the pure Nakagami-m SNR density.
criterion_result check_a6() {
    double worst = 0.0;
    for (const double m : {1.0, 2.5}) {
        const fading_params p(m, 1e4, 2.0);
        for (int i = 0; i < 400; ++i) {
            const double g = 0.01 + (20.0 - 0.01) * i / 399.0;
            worst = std::fmax(
                worst, std::fabs(pdf(p, g) - nakagami_limit_pdf(m, 2.0, g)));
        }
    }
    criterion_result out;
    out.pass = worst < 1e-3;
    out.detail = fmt("sup |f_F(m_s=10^4) - f_Nakagami| on [0.01, 20] = "
                     "%.2e (gate 1e-3)",
                     worst);
    return out;
}

// A7: identical main and eavesdropper channels give even odds exactly:
// SPSC = 1/2 and the theta = 1 outage lower bound = 1/2, both to 1e-6.
criterion_result check_a7() {
    const fading_params p(2.5, 5.0, 3.1623);
    const wiretap_scenario s(p, p, 0.0);
    const double ps = spsc(s).value;
    const double sl = sop_lower_closed(s).value;
    criterion_result out;
    out.pass = std::fabs(ps - 0.5) <= 1e-6 && std::fabs(sl - 0.5) <= 1e-6;
    out.detail = fmt("identical channels: spsc = %.9f, sop_lower(theta=1) "
                     "= %.9f (gates 0.5 +- 1e-6)",
                     ps, sl);
    return out;
}

// A8: special-function identity sweeps at 1e-10 over 100 random arguments,
// plus bivariate-kernel stability to 1e-6 under contour density doubling.
criterion_result check_a8() {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> U(0.01, 50.0);
    double worst_exp = 0.0, worst_pow = 0.0, worst_ln = 0.0;
    for (int i = 0; i < 100; ++i) {
        const double x = U(rng);
        const meijer_g_spec es{{}, {}, {0.0}, {}, x};
        worst_exp = std::fmax(
            worst_exp, std::fabs(meijer_g(es) - std::exp(-x)) / std::exp(-x));
        const double a = 0.3 + 4.0 * (i % 17) / 16.0;
        const meijer_g_spec ps{{1.0 - a}, {}, {0.0}, {}, x};
        const double pref = std::exp(log_gamma(a)) * std::pow(1.0 + x, -a);
        worst_pow =
            std::fmax(worst_pow, std::fabs(meijer_g(ps) - pref) / pref);
        const double lref = std::log1p(x) / x;
        worst_ln = std::fmax(
            worst_ln,
            std::fabs(gauss_2f1(1.0, 1.0, 2.0, -x) - lref) / lref);
    }

    const fading_params d(2.5, 5.0, 10.0);
    const fading_params e(1.0, 2.0, db_to_linear(5.0));
    egbmgf_spec eg;
    eg.outer = {{1.0 - d.m - e.m}, {}, {d.m_s - e.m}, {}, 1.0};
    eg.inner1 = {{1.0, 1.0}, {}, {1.0}, {0.0}, 1.0};
    eg.inner2 = {{1.0 - e.m - e.m_s, 1.0 - e.m}, {}, {0.0}, {-e.m}, 1.0};
    eg.x = 1.0 / d.xi;
    eg.y = e.xi / d.xi;
    contour_settings coarse;
    coarse.nodes_per_unit = 32;
    contour_settings fine;
    fine.nodes_per_unit = 64;
    const egbmgf_result r1 = egbmgf_log(eg, coarse);
    const egbmgf_result r2 = egbmgf_log(eg, fine);
    const double rel_eg =
        std::fabs(r1.mantissa * std::exp(r1.log_scale - r2.log_scale) -
                  r2.mantissa) /
        std::fabs(r2.mantissa);

    criterion_result out;
    out.pass = worst_exp < 1e-10 && worst_pow < 1e-10 && worst_ln < 1e-10 &&
               rel_eg < 1e-6;
    out.detail = fmt("identity worst rels: exp %.1e, power %.1e, ln %.1e "
                     "(gates 1e-10); kernel doubling %.1e (gate 1e-6)",
                     worst_exp, worst_pow, worst_ln, rel_eg);
    return out;
}

} // namespace

int main() {
    struct entry {
        const char* id;
        criterion_result (*fn)();
    };
    const entry checks[] = {
        {"A1", check_a1}, {"A2", check_a2}, {"A3", check_a3},
        {"A4", check_a4}, {"A5", check_a5}, {"A6", check_a6},
        {"A7", check_a7}, {"A8", check_a8},
    };
    int failures = 0;
    for (const auto& c : checks) {
        const auto t0 = std::chrono::steady_clock::now();
        criterion_result r;
        try {
            r = c.fn();
        } catch (const std::exception& e) {
            r.pass = false;
            r.detail = std::string("exception: ") + e.what();
        }
        const double dt =
            std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                          t0)
                .count();
        std::printf("%s [%s] %s (%.1f s)\n", c.id, r.pass ? "PASS" : "FAIL",
                    r.detail.c_str(), dt);
        std::fflush(stdout);
        if (!r.pass) ++failures;
    }
    std::printf("acceptance: %d/8 criteria passed\n", 8 - failures);
    return failures == 0 ? 0 : 1;
}

// fsecrecy — secrecy metrics over Fisher-Snedecor F wiretap channels.
//
// Subcommands:
//   sweep   run a metric over a lambda grid, write CSV (+ optional SVG)
//   eval    evaluate one metric at one point, print a single-line record
//   verify  run a self-check suite (identities | regression | paper-scale)
//
// Exit codes: 0 success, 1 verification failure, 2 usage/config error,
// 3 numerical failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fsecrecy/fsecrecy.hpp"

namespace {

using namespace fsecrecy;

std::string slurp_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw domain_error("cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

wiretap_scenario make_scenario(const scenario_shapes& sc, double lambda_db,
                               double eve_snr_db, double r_s) {
    const double g_eve = db_to_linear(eve_snr_db);
    const double g_main = db_to_linear(lambda_db) * g_eve;
    return wiretap_scenario(fading_params(sc[0], sc[1], g_main),
                            fading_params(sc[2], sc[3], g_eve), r_s);
}

// ---------------------------------------------------------------- verify --

struct check_row {
    std::string name;
    bool pass = false;
    std::string detail;
};

class check_table {
public:
    void add(const std::string& name, bool pass, const std::string& detail) {
        rows_.push_back({name, pass, detail});
    }
    template <typename Fn>
    void run(const std::string& name, Fn&& fn) {
        try {
            fn(*this, name);
        } catch (const std::exception& e) {
            add(name, false, std::string("exception: ") + e.what());
        }
    }
    int report(const std::string& suite, double seconds) const {
        std::size_t passed = 0;
        for (const auto& r : rows_) {
            std::printf("[%s] %-34s %s\n", r.pass ? "PASS" : "FAIL",
                        r.name.c_str(), r.detail.c_str());
            if (r.pass) ++passed;
        }
        std::printf("%s: %zu/%zu checks passed in %.1f s\n", suite.c_str(),
                    passed, rows_.size(), seconds);
        return passed == rows_.size() ? 0 : 1;
    }

private:
    std::vector<check_row> rows_;
};

std::string fmt_worst(double worst, double tol) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "worst %.3e (tol %.0e)", worst, tol);
    return buf;
}

void suite_identities(check_table& t) {
    // Special-function identities over 100 random arguments in (0.01, 50).
    t.run("meijer_g exp identity", [](check_table& tt, const std::string& n) {
        std::mt19937_64 rng(7);
        std::uniform_real_distribution<double> U(0.01, 50.0);
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            const double x = U(rng);
            const meijer_g_spec s{{}, {}, {0.0}, {}, x};
            const double ref = std::exp(-x);
            worst = std::fmax(worst, std::fabs(meijer_g(s) - ref) / ref);
        }
        tt.add(n, worst < 1e-10, fmt_worst(worst, 1e-10));
    });
    t.run("meijer_g power identity", [](check_table& tt, const std::string& n) {
        std::mt19937_64 rng(7);
        std::uniform_real_distribution<double> U(0.01, 50.0);
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            const double x = U(rng);
            const double a = 0.3 + 4.0 * (i % 17) / 16.0;
            const meijer_g_spec s{{1.0 - a}, {}, {0.0}, {}, x};
            const double ref =
                std::exp(log_gamma(a)) * std::pow(1.0 + x, -a);
            worst = std::fmax(worst, std::fabs(meijer_g(s) - ref) / ref);
        }
        tt.add(n, worst < 1e-10, fmt_worst(worst, 1e-10));
    });
    t.run("gauss_2f1 log identity", [](check_table& tt, const std::string& n) {
        std::mt19937_64 rng(7);
        std::uniform_real_distribution<double> U(0.01, 50.0);
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            const double x = U(rng);
            const double ref = std::log1p(x) / x;
            worst =
                std::fmax(worst, std::fabs(gauss_2f1(1.0, 1.0, 2.0, -x) - ref) /
                                     ref);
        }
        tt.add(n, worst < 1e-10, fmt_worst(worst, 1e-10));
    });
    t.run("egbmgf refinement stability",
          [](check_table& tt, const std::string& n) {
              // The first ASC cross term at a representative operating point,
              // evaluated at two contour densities.
              const fading_params d(2.5, 5.0, 10.0);
              const fading_params e(1.0, 2.0, db_to_linear(5.0));
              egbmgf_spec eg;
              eg.outer = {{1.0 - d.m - e.m}, {}, {d.m_s - e.m}, {}, 1.0};
              eg.inner1 = {{1.0, 1.0}, {}, {1.0}, {0.0}, 1.0};
              eg.inner2 = {{1.0 - e.m - e.m_s, 1.0 - e.m}, {}, {0.0}, {-e.m},
                           1.0};
              eg.x = 1.0 / d.xi;
              eg.y = e.xi / d.xi;
              contour_settings coarse;
              coarse.nodes_per_unit = 32;
              contour_settings fine;
              fine.nodes_per_unit = 64;
              const egbmgf_result r1 = egbmgf_log(eg, coarse);
              const egbmgf_result r2 = egbmgf_log(eg, fine);
              const double rel =
                  std::fabs(r1.mantissa * std::exp(r1.log_scale - r2.log_scale) -
                            r2.mantissa) /
                  std::fabs(r2.mantissa);
              tt.add(n, rel < 1e-6, fmt_worst(rel, 1e-6));
          });
    t.run("spsc complement identity", [](check_table& tt, const std::string& n) {
        const wiretap_scenario s = make_scenario({2.5, 5.0, 1.5, 2.5}, 10.0,
                                                 5.0, 0.0);
        const double sum = spsc(s).value + sop_lower_closed(s).value;
        tt.add(n, sum == 1.0, "spsc + sop_lower(theta=1) == 1 exactly");
    });
    t.run("symmetric half-half", [](check_table& tt, const std::string& n) {
        const wiretap_scenario s = make_scenario({2.5, 5.0, 2.5, 5.0}, 0.0,
                                                 5.0, 0.0);
        const double a = sop_lower_closed(s).value;
        const double b = spsc(s).value;
        const double worst = std::fmax(std::fabs(a - 0.5), std::fabs(b - 0.5));
        tt.add(n, worst < 1e-6, fmt_worst(worst, 1e-6));
    });
}

void suite_regression(check_table& t) {
    const auto grid = regression_grid();
    double worst_asc = 0.0, worst_sop = 0.0, worst_sopl = 0.0;
    double worst_bound = 0.0, worst_order = -1.0;
    bool ok = true;
    std::string first_fail;
    for (const auto& rc : grid) {
        try {
            const wiretap_scenario s =
                make_scenario(rc.shapes, rc.lambda_db, 5.0, rc.r_s);
            const double ac = asc_closed(s).value;
            const double aq = asc_quadrature(s).value;
            const double pc = sop_closed(s).value;
            const double pq = sop_quadrature(s).value;
            const double lc = sop_lower_closed(s).value;
            const double lq = sop_lower_quadrature(s).value;
            worst_asc = std::fmax(worst_asc, std::fabs(ac - aq) / aq);
            worst_sop = std::fmax(worst_sop, std::fabs(pc - pq) / pq);
            worst_sopl = std::fmax(worst_sopl, std::fabs(lc - lq) / lq);
            worst_bound = std::fmax(
                worst_bound,
                std::fmax(std::fmax(-ac, std::fmax(-pc, pc - 1.0)),
                          std::fmax(-lc, lc - 1.0)));
            worst_order = std::fmax(worst_order, lc - pc);
        } catch (const std::exception& e) {
            ok = false;
            if (first_fail.empty()) first_fail = e.what();
        }
    }
    t.add("regression grid evaluates", ok,
          ok ? "12 scenarios, all paths" : first_fail);
    t.add("asc closed vs quadrature", worst_asc < 1e-4,
          fmt_worst(worst_asc, 1e-4));
    t.add("sop closed vs quadrature", worst_sop < 1e-4,
          fmt_worst(worst_sop, 1e-4));
    t.add("sop_lower closed vs quadrature", worst_sopl < 1e-4,
          fmt_worst(worst_sopl, 1e-4));
    t.add("bounds respected", worst_bound <= 1e-6, fmt_worst(worst_bound, 1e-6));
    t.add("sop_lower <= sop", worst_order <= 1e-6,
          fmt_worst(worst_order, 1e-6));
    t.run("theta=1 outage paths coincide",
          [](check_table& tt, const std::string& n) {
              const wiretap_scenario s =
                  make_scenario({2.5, 5.0, 1.5, 2.5}, 10.0, 5.0, 0.0);
              const double a = sop_quadrature(s).value;
              const double b = sop_lower_quadrature(s).value;
              tt.add(n, a == b, "identical integrands, identical doubles");
          });
}

void suite_paper_scale(check_table& t) {
    const auto grid = regression_grid();
    sim_config c;
    c.n_samples = 10000000;
    c.seed = 20260819;
    double worst_z = 0.0;
    std::string worst_at = "none";
    bool ok = true;
    std::string first_fail;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto& rc = grid[i];
        try {
            const wiretap_scenario s =
                make_scenario(rc.shapes, rc.lambda_db, 5.0, rc.r_s);
            const mc_metrics m = mc_all_metrics(s, c);
            const double closed[4] = {asc_closed(s).value, sop_closed(s).value,
                                      sop_lower_closed(s).value,
                                      spsc(s).value};
            const mc_estimate est[4] = {m.asc, m.sop, m.sop_lower, m.spsc};
            static const char* names[4] = {"asc", "sop", "sop_lower", "spsc"};
            for (int k = 0; k < 4; ++k) {
                const double se =
                    est[k].std_error > 0.0 ? est[k].std_error : 1e-300;
                const double z = std::fabs(est[k].mean - closed[k]) / se;
                if (z > worst_z) {
                    worst_z = z;
                    char buf[64];
                    std::snprintf(buf, sizeof buf, "%s scenario %zu", names[k],
                                  i);
                    worst_at = buf;
                }
            }
        } catch (const std::exception& e) {
            ok = false;
            if (first_fail.empty()) first_fail = e.what();
        }
    }
    t.add("paper-scale grid evaluates", ok,
          ok ? "12 scenarios at n=10^7" : first_fail);
    char buf[128];
    std::snprintf(buf, sizeof buf, "worst |z| %.2f at %s (gate 3.0)", worst_z,
                  worst_at.c_str());
    t.add("closed within 3 SE of MC", worst_z < 3.0, buf);
}

int run_verify(const std::string& suite) {
    const auto t0 = std::chrono::steady_clock::now();
    check_table t;
    if (suite == "identities") {
        suite_identities(t);
    } else if (suite == "regression") {
        suite_regression(t);
    } else if (suite == "paper-scale") {
        suite_paper_scale(t);
    } else {
        std::fprintf(stderr,
                     "unknown suite '%s' (identities, regression, "
                     "paper-scale)\n",
                     suite.c_str());
        return 2;
    }
    const auto t1 = std::chrono::steady_clock::now();
    return t.report(suite, std::chrono::duration<double>(t1 - t0).count());
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Secrecy metrics over Fisher-Snedecor F wiretap channels"};
    app.require_subcommand(1);

    // ------------------------------------------------------------- sweep --
    auto* sweep_cmd =
        app.add_subcommand("sweep", "Run a metric over a lambda grid");
    std::string opt_preset, opt_config, opt_metric, opt_lambda, opt_unit;
    std::string opt_methods, opt_out, opt_svg;
    std::vector<std::string> opt_scenarios;
    double opt_eve_db = 5.0, opt_rs = 1.0;
    std::uint64_t opt_seed = 0, opt_n = 1000000, opt_batch = 65536;
    bool opt_bits = false, opt_print = false;
    auto* o_preset = sweep_cmd->add_option(
        "--preset", opt_preset, "Figure preset (fig1..fig5)");
    auto* o_config = sweep_cmd->add_option(
        "--config", opt_config, "Config file (key=value lines)");
    auto* o_metric = sweep_cmd->add_option(
        "--metric", opt_metric, "Metric: asc, sop, sop_lower, spsc");
    auto* o_lambda = sweep_cmd->add_option(
        "--lambda", opt_lambda, "Lambda grid start:step:stop");
    auto* o_unit = sweep_cmd->add_option("--lambda-unit", opt_unit,
                                         "Lambda unit: db or linear");
    auto* o_eve = sweep_cmd->add_option("--eve-snr-db", opt_eve_db,
                                        "Eavesdropper average SNR in dB");
    auto* o_rs =
        sweep_cmd->add_option("--rs", opt_rs, "Target secrecy rate (nats)");
    auto* o_scen = sweep_cmd->add_option(
        "--scenario", opt_scenarios,
        "Shape tuple m_D,m_sD,m_E,m_sE (repeatable; replaces preset list)");
    auto* o_methods = sweep_cmd->add_option(
        "--methods", opt_methods, "Comma list from closed,quad,mc");
    auto* o_seed = sweep_cmd->add_option("--seed", opt_seed, "Monte Carlo seed");
    auto* o_n =
        sweep_cmd->add_option("--n", opt_n, "Monte Carlo sample count");
    auto* o_batch =
        sweep_cmd->add_option("--batch", opt_batch, "Monte Carlo batch size");
    auto* o_bits =
        sweep_cmd->add_flag("--bits", opt_bits, "Report ASC in bits");
    auto* o_out = sweep_cmd->add_option("--out", opt_out, "Output CSV path");
    auto* o_svg =
        sweep_cmd->add_option("--svg", opt_svg, "Optional SVG plot path");
    sweep_cmd->add_flag("--print-config", opt_print,
                        "Print the effective config and exit");

    // -------------------------------------------------------------- eval --
    auto* eval_cmd =
        app.add_subcommand("eval", "Evaluate one metric at one point");
    std::string ev_metric, ev_method = "closed", ev_scenario;
    double ev_lambda_db = 10.0, ev_eve_db = 5.0, ev_rs = 1.0;
    std::uint64_t ev_seed = 0, ev_n = 1000000, ev_batch = 65536;
    bool ev_bits = false;
    eval_cmd->add_option("--metric", ev_metric,
                         "Metric: asc, sop, sop_lower, spsc")
        ->required();
    eval_cmd->add_option("--method", ev_method, "closed, quad, or mc");
    eval_cmd->add_option("--scenario", ev_scenario, "m_D,m_sD,m_E,m_sE")
        ->required();
    eval_cmd->add_option("--lambda-db", ev_lambda_db,
                         "lambda = gamma_D/gamma_E in dB");
    eval_cmd->add_option("--eve-snr-db", ev_eve_db,
                         "Eavesdropper average SNR in dB");
    eval_cmd->add_option("--rs", ev_rs, "Target secrecy rate (nats)");
    eval_cmd->add_option("--seed", ev_seed, "Monte Carlo seed");
    eval_cmd->add_option("--n", ev_n, "Monte Carlo sample count");
    eval_cmd->add_option("--batch", ev_batch, "Monte Carlo batch size");
    eval_cmd->add_flag("--bits", ev_bits, "Report ASC in bits");

    // ------------------------------------------------------------ verify --
    auto* verify_cmd =
        app.add_subcommand("verify", "Run a self-check suite");
    std::string vf_suite;
    verify_cmd
        ->add_option("suite", vf_suite,
                     "identities, regression, or paper-scale")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2; // usage errors map to exit 2
    }

    try {
        if (sweep_cmd->parsed()) {
            sweep_config cfg;
            if (o_preset->count()) cfg = preset_config(opt_preset).expansion;
            if (o_config->count()) parse_config(slurp_file(opt_config), cfg);
            if (o_metric->count()) cfg.metric = metric_from_string(opt_metric);
            if (o_lambda->count()) cfg.lambda = lambda_range::parse(opt_lambda);
            if (o_unit->count())
                cfg.lambda_unit = lambda_unit_from_string(opt_unit);
            if (o_eve->count()) cfg.eve_snr_db = opt_eve_db;
            if (o_rs->count()) cfg.r_s = opt_rs;
            if (o_scen->count()) {
                cfg.scenarios.clear();
                for (const auto& s : opt_scenarios)
                    cfg.scenarios.push_back(parse_scenario(s));
            }
            if (o_methods->count()) cfg.methods = parse_methods(opt_methods);
            if (o_seed->count()) cfg.mc.seed = opt_seed;
            if (o_n->count()) cfg.mc.n_samples = opt_n;
            if (o_batch->count()) cfg.mc.batch = opt_batch;
            if (o_bits->count()) cfg.bits = opt_bits;
            if (o_out->count()) cfg.output_path = opt_out;
            if (o_svg->count()) cfg.svg_path = opt_svg;
            if (cfg.scenarios.empty() && !o_preset->count() &&
                !o_config->count())
                throw domain_error(
                    "sweep needs --preset, --config, or --scenario");
            if (opt_print) {
                std::fputs(print_config(cfg).c_str(), stdout);
                return 0;
            }
            cfg.validate();
            run_sweep(cfg);
            return 0;
        }
        if (eval_cmd->parsed()) {
            const metric_kind metric = metric_from_string(ev_metric);
            const method_kind method = method_from_string(ev_method);
            const scenario_shapes sc = parse_scenario(ev_scenario);
            const wiretap_scenario s =
                make_scenario(sc, ev_lambda_db, ev_eve_db, ev_rs);
            sim_config mc_cfg;
            mc_cfg.seed = ev_seed;
            mc_cfg.n_samples = ev_n;
            mc_cfg.batch = ev_batch;
            const metric_result r = evaluate_metric(metric, method, s, mc_cfg);
            const double scale = (ev_bits && metric == metric_kind::asc)
                                     ? 1.0 / std::numbers::ln2
                                     : 1.0;
            std::printf(
                "metric=%s method=%s lambda_db=%.12g scenario=%g,%g,%g,%g "
                "rs=%.12g value=%.12g err_estimate=%.12g flags=%s\n",
                to_string(metric), to_string(method), ev_lambda_db, sc[0],
                sc[1], sc[2], sc[3], ev_rs, r.value * scale,
                r.abs_error_estimate * scale, r.flags.to_string().c_str());
            return 0;
        }
        if (verify_cmd->parsed()) return run_verify(vf_suite);
        return 2;
    } catch (const std::logic_error& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::runtime_error& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return 3;
    }
}

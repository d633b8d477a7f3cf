#pragma once

// Sweep harness: evaluate one secrecy metric over a lambda = gamma_bar_D /
// gamma_bar_E grid for a set of (m_D, m_sD, m_E, m_sE) scenarios and a set
// of evaluation methods, writing one CSV row per (lambda, scenario, method)
// cell, optionally with a companion SVG line plot.  Also provides the
// figure presets, the flat key=value config format, and single-point
// evaluation used by the command-line front end.
//
// Determinism: rows are ordered lambda-outer / scenario / method; values
// are serialized with 12 significant digits; Monte Carlo cells are seeded;
// cells are evaluated by a bounded worker pool and assembled by index, so
// the output bytes do not depend on the degree of parallelism.  The CSV is
// written to "<path>.tmp" and renamed into place only on success.

#include <array>
#include <atomic>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "errors.hpp"
#include "montecarlo.hpp"
#include "secrecy.hpp"
#include "svg.hpp"

namespace fsecrecy {

enum class metric_kind { asc, sop, sop_lower, spsc };
enum class lambda_unit_kind { db, linear };
enum class method_kind { closed, quad, mc };

inline const char* to_string(metric_kind m) {
    switch (m) {
    case metric_kind::asc: return "asc";
    case metric_kind::sop: return "sop";
    case metric_kind::sop_lower: return "sop_lower";
    default: return "spsc";
    }
}
inline const char* to_string(lambda_unit_kind u) {
    return u == lambda_unit_kind::db ? "db" : "linear";
}
inline const char* to_string(method_kind m) {
    switch (m) {
    case method_kind::closed: return "closed";
    case method_kind::quad: return "quad";
    default: return "mc";
    }
}

inline metric_kind metric_from_string(const std::string& s) {
    if (s == "asc") return metric_kind::asc;
    if (s == "sop") return metric_kind::sop;
    if (s == "sop_lower") return metric_kind::sop_lower;
    if (s == "spsc") return metric_kind::spsc;
    throw domain_error("unknown metric '" + s + "' (asc, sop, sop_lower, spsc)");
}
inline lambda_unit_kind lambda_unit_from_string(const std::string& s) {
    if (s == "db") return lambda_unit_kind::db;
    if (s == "linear") return lambda_unit_kind::linear;
    throw domain_error("unknown lambda unit '" + s + "' (db, linear)");
}
inline method_kind method_from_string(const std::string& s) {
    if (s == "closed") return method_kind::closed;
    if (s == "quad") return method_kind::quad;
    if (s == "mc") return method_kind::mc;
    throw domain_error("unknown method '" + s + "' (closed, quad, mc)");
}

// Arithmetic lambda grid "start:step:stop", kept in triple form so config
// round-trips are exact.
struct lambda_range {
    double start = -5.0;
    double step = 1.0;
    double stop = 30.0;

    void validate() const {
        if (!std::isfinite(start) || !std::isfinite(step) || !std::isfinite(stop))
            throw domain_error("lambda range: values must be finite");
        if (!(step > 0.0))
            throw domain_error("lambda range: step must be positive");
        if (!(stop >= start))
            throw domain_error("lambda range: stop must be >= start");
    }
    std::vector<double> expand() const {
        validate();
        const int n = int(std::floor((stop - start) / step + 1e-9)) + 1;
        std::vector<double> out(static_cast<std::size_t>(n), 0.0);
        for (int i = 0; i < n; ++i) out[std::size_t(i)] = start + step * i;
        return out;
    }
    std::string to_string() const {
        char buf[96];
        std::snprintf(buf, sizeof buf, "%.12g:%.12g:%.12g", start, step, stop);
        return buf;
    }
    static lambda_range parse(const std::string& text) {
        lambda_range r;
        const auto c1 = text.find(':');
        const auto c2 = text.find(':', c1 == std::string::npos ? 0 : c1 + 1);
        if (c1 == std::string::npos || c2 == std::string::npos)
            throw domain_error("lambda range must be start:step:stop, got '" +
                               text + "'");
        try {
            r.start = std::stod(text.substr(0, c1));
            r.step = std::stod(text.substr(c1 + 1, c2 - c1 - 1));
            r.stop = std::stod(text.substr(c2 + 1));
        } catch (const std::exception&) {
            throw domain_error("lambda range: cannot parse '" + text + "'");
        }
        r.validate();
        return r;
    }
};

// One channel-shape scenario: (m_D, m_sD, m_E, m_sE).
using scenario_shapes = std::array<double, 4>;

struct sweep_config {
    metric_kind metric = metric_kind::asc;
    lambda_range lambda;
    lambda_unit_kind lambda_unit = lambda_unit_kind::db;
    double eve_snr_db = 5.0;
    std::vector<scenario_shapes> scenarios;
    double r_s = 1.0;
    std::vector<method_kind> methods{method_kind::closed, method_kind::quad};
    sim_config mc;
    bool bits = false; // report ASC in bits instead of nats
    std::string output_path = "sweep.csv";
    std::string svg_path; // empty = no plot

    void validate() const {
        lambda.validate();
        if (scenarios.empty())
            throw domain_error("sweep config: at least one scenario required");
        if (methods.empty())
            throw domain_error("sweep config: at least one method required");
        if (!(r_s >= 0.0) || !std::isfinite(r_s))
            throw domain_error("sweep config: rs must be non-negative");
        if (!std::isfinite(eve_snr_db))
            throw domain_error("sweep config: eve_snr_db must be finite");
        if (output_path.empty())
            throw domain_error("sweep config: output path required");
        for (const auto& sc : scenarios)
            for (double v : sc)
                if (!(v > 0.0) || !std::isfinite(v))
                    throw domain_error(
                        "sweep config: scenario shapes must be positive");
        if (lambda_unit == lambda_unit_kind::linear && !(lambda.start > 0.0))
            throw domain_error("sweep config: linear lambda must be positive");
    }
};

// The figure presets: the common grid is lambda = -5..30 dB in 1 dB steps,
// eve channel at 5 dB average SNR, main shapes (2.5, 5), and the four
// eavesdropper shape combinations (m_E, m_sE) in {0.5, 2.5} x {0.5, 50}.
struct figure_preset {
    std::string id;
    sweep_config expansion;
};

inline figure_preset preset_config(const std::string& id) {
    sweep_config cfg;
    cfg.lambda = {-5.0, 1.0, 30.0};
    cfg.lambda_unit = lambda_unit_kind::db;
    cfg.eve_snr_db = 5.0;
    cfg.scenarios = {{2.5, 5.0, 0.5, 0.5},
                     {2.5, 5.0, 0.5, 50.0},
                     {2.5, 5.0, 2.5, 0.5},
                     {2.5, 5.0, 2.5, 50.0}};
    if (id == "fig1") {
        cfg.metric = metric_kind::asc;
        cfg.r_s = 0.0;
    } else if (id == "fig2") {
        cfg.metric = metric_kind::sop;
        cfg.r_s = 1.0;
    } else if (id == "fig3") {
        cfg.metric = metric_kind::sop;
        cfg.r_s = 2.0;
    } else if (id == "fig4") {
        cfg.metric = metric_kind::sop_lower;
        cfg.r_s = 1.0;
    } else if (id == "fig5") {
        cfg.metric = metric_kind::spsc;
        cfg.r_s = 0.0;
    } else {
        throw domain_error("unknown preset '" + id +
                           "' (fig1, fig2, fig3, fig4, fig5)");
    }
    cfg.output_path = id + ".csv";
    return {id, cfg};
}

// The 12-scenario regression grid used by the verify suites: three main
// channel profiles (shape pair, lambda in dB, target rate) crossed with the
// four preset eavesdropper shape pairs.  All m_E values are non-integer and
// every theta is >= 1.05; the (m_E, m_sE) = (2.5, 0.5) cases at r_s = 2
// exercise the transformed branch of the SOP closed form.
struct regression_case {
    scenario_shapes shapes; // m_D, m_sD, m_E, m_sE
    double lambda_db;
    double r_s;
};

inline std::vector<regression_case> regression_grid() {
    const double mains[3][4] = {
        {2.5, 5.0, 10.0, 1.0}, {1.5, 2.5, 5.0, 0.05}, {5.0, 3.5, 15.0, 2.0}};
    const double eves[4][2] = {{0.5, 0.5}, {0.5, 50.0}, {2.5, 0.5}, {2.5, 50.0}};
    std::vector<regression_case> out;
    out.reserve(12);
    for (const auto& m : mains)
        for (const auto& e : eves)
            out.push_back({{m[0], m[1], e[0], e[1]}, m[2], m[3]});
    return out;
}

namespace detail {

inline std::string fmt12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

inline std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

inline double parse_double(const std::string& s, const char* what) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw domain_error(std::string("cannot parse ") + what + " '" + s + "'");
    }
}

inline std::uint64_t parse_u64(const std::string& s, const char* what) {
    try {
        // stoull would wrap a negative literal instead of rejecting it.
        if (s.find('-') != std::string::npos) throw std::invalid_argument(s);
        std::size_t pos = 0;
        const unsigned long long v = std::stoull(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw domain_error(std::string("cannot parse ") + what + " '" + s + "'");
    }
}

} // namespace detail

inline scenario_shapes parse_scenario(const std::string& text) {
    const auto parts = detail::split(text, ',');
    if (parts.size() != 4)
        throw domain_error("scenario must be m_D,m_sD,m_E,m_sE, got '" + text +
                           "'");
    scenario_shapes sc;
    static const char* names[4] = {"m_D", "m_sD", "m_E", "m_sE"};
    for (int i = 0; i < 4; ++i)
        sc[std::size_t(i)] =
            detail::parse_double(detail::trim(parts[std::size_t(i)]), names[i]);
    return sc;
}

inline std::vector<method_kind> parse_methods(const std::string& text) {
    std::vector<method_kind> out;
    for (const auto& part : detail::split(text, ','))
        out.push_back(method_from_string(detail::trim(part)));
    return out;
}

// Serialize a config in the flat key=value form accepted by parse_config;
// feeding the output back reproduces the exact same sweep.
inline std::string print_config(const sweep_config& cfg) {
    std::ostringstream out;
    out << "metric=" << to_string(cfg.metric) << "\n";
    out << "lambda=" << cfg.lambda.to_string() << "\n";
    out << "lambda_unit=" << to_string(cfg.lambda_unit) << "\n";
    out << "eve_snr_db=" << detail::fmt12(cfg.eve_snr_db) << "\n";
    out << "rs=" << detail::fmt12(cfg.r_s) << "\n";
    std::string methods;
    for (const auto m : cfg.methods) {
        if (!methods.empty()) methods += ',';
        methods += to_string(m);
    }
    out << "methods=" << methods << "\n";
    out << "seed=" << cfg.mc.seed << "\n";
    out << "n=" << cfg.mc.n_samples << "\n";
    out << "batch=" << cfg.mc.batch << "\n";
    out << "bits=" << (cfg.bits ? 1 : 0) << "\n";
    out << "out=" << cfg.output_path << "\n";
    if (!cfg.svg_path.empty()) out << "svg=" << cfg.svg_path << "\n";
    for (const auto& sc : cfg.scenarios)
        out << "scenario=" << detail::fmt12(sc[0]) << ',' << detail::fmt12(sc[1])
            << ',' << detail::fmt12(sc[2]) << ',' << detail::fmt12(sc[3])
            << "\n";
    return out.str();
}

// Parse the flat key=value config format: one key per line, '#' comments,
// repeated scenario= lines accumulate.  Unknown keys are errors.
inline void parse_config(const std::string& text, sweep_config& cfg) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = detail::trim(line);
        if (t.empty() || t[0] == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw domain_error("config line " + std::to_string(lineno) +
                               ": expected key=value, got '" + t + "'");
        const std::string key = detail::trim(t.substr(0, eq));
        const std::string val = detail::trim(t.substr(eq + 1));
        if (key == "metric") {
            cfg.metric = metric_from_string(val);
        } else if (key == "lambda") {
            cfg.lambda = lambda_range::parse(val);
        } else if (key == "lambda_unit") {
            cfg.lambda_unit = lambda_unit_from_string(val);
        } else if (key == "eve_snr_db") {
            cfg.eve_snr_db = detail::parse_double(val, "eve_snr_db");
        } else if (key == "rs") {
            cfg.r_s = detail::parse_double(val, "rs");
        } else if (key == "methods") {
            cfg.methods = parse_methods(val);
        } else if (key == "seed") {
            cfg.mc.seed = detail::parse_u64(val, "seed");
        } else if (key == "n") {
            cfg.mc.n_samples = detail::parse_u64(val, "n");
        } else if (key == "batch") {
            cfg.mc.batch = detail::parse_u64(val, "batch");
        } else if (key == "bits") {
            cfg.bits = detail::parse_u64(val, "bits") != 0;
        } else if (key == "out") {
            cfg.output_path = val;
        } else if (key == "svg") {
            cfg.svg_path = val;
        } else if (key == "scenario") {
            cfg.scenarios.push_back(parse_scenario(val));
        } else {
            throw domain_error("config line " + std::to_string(lineno) +
                               ": unknown key '" + key + "'");
        }
    }
}

// dB -> linear power ratio (round-trips with 10*log10 to 1e-12).
inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

// Evaluate one metric for one fully-specified cell.
inline metric_result evaluate_metric(metric_kind metric, method_kind method,
                                     const wiretap_scenario& s,
                                     const sim_config& mc_cfg,
                                     unsigned mc_workers = 0) {
    switch (method) {
    case method_kind::closed:
        switch (metric) {
        case metric_kind::asc: return asc_closed(s);
        case metric_kind::sop: return sop_closed(s);
        case metric_kind::sop_lower: return sop_lower_closed(s);
        default: return spsc(s);
        }
    case method_kind::quad:
        switch (metric) {
        case metric_kind::asc: return asc_quadrature(s);
        case metric_kind::sop: return sop_quadrature(s);
        case metric_kind::sop_lower: return sop_lower_quadrature(s);
        default: return spsc_quadrature(s);
        }
    default: {
        const mc_metrics all = mc_all_metrics(s, mc_cfg, false, mc_workers);
        const mc_estimate est = metric == metric_kind::asc ? all.asc
                                : metric == metric_kind::sop ? all.sop
                                : metric == metric_kind::sop_lower
                                    ? all.sop_lower
                                    : all.spsc;
        metric_result out;
        out.value = est.mean;
        out.method = eval_method::monte_carlo;
        out.abs_error_estimate = est.std_error;
        return out;
    }
    }
}

struct sweep_cell_failure {
    std::size_t row; // row index in the cell grid
    std::string what;
    std::string cell; // human-readable cell description
};

// Run the sweep and write the CSV (plus optional SVG).  Throws domain_error
// for config problems and convergence_error when any cell fails numerically
// (the partial output file is removed in that case).
inline void run_sweep(const sweep_config& cfg) {
    cfg.validate();
    const std::vector<double> grid = cfg.lambda.expand();
    const double g_eve = db_to_linear(cfg.eve_snr_db);

    struct cell_job {
        double lambda_db = 0.0;
        double lambda_linear = 0.0;
        scenario_shapes shapes{};
        method_kind method = method_kind::closed;
    };
    std::vector<cell_job> jobs;
    jobs.reserve(grid.size() * cfg.scenarios.size() * cfg.methods.size());
    for (double lam : grid)
        for (const auto& sc : cfg.scenarios)
            for (const auto m : cfg.methods) {
                cell_job j;
                j.lambda_linear = cfg.lambda_unit == lambda_unit_kind::db
                                      ? db_to_linear(lam)
                                      : lam;
                j.lambda_db = cfg.lambda_unit == lambda_unit_kind::db
                                  ? lam
                                  : linear_to_db(lam);
                j.shapes = sc;
                j.method = m;
                jobs.push_back(j);
            }

    std::vector<metric_result> results(jobs.size());
    std::vector<std::optional<sweep_cell_failure>> failures(jobs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= jobs.size()) return;
            const cell_job& j = jobs[i];
            try {
                const fading_params d(j.shapes[0], j.shapes[1],
                                      j.lambda_linear * g_eve);
                const fading_params e(j.shapes[2], j.shapes[3], g_eve);
                const wiretap_scenario s(d, e, cfg.r_s);
                // Monte Carlo cells run single-threaded: the sweep pool is
                // the only source of parallelism, keeping it bounded.
                results[i] =
                    evaluate_metric(cfg.metric, j.method, s, cfg.mc, 1);
            } catch (const std::exception& ex) {
                char cell[160];
                std::snprintf(cell, sizeof cell,
                              "lambda_db=%.6g scenario=%g,%g,%g,%g method=%s",
                              j.lambda_db, j.shapes[0], j.shapes[1], j.shapes[2],
                              j.shapes[3], to_string(j.method));
                failures[i] = sweep_cell_failure{i, ex.what(), cell};
            }
        }
    };
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    const std::size_t nworkers = std::min<std::size_t>(jobs.size(), hw);
    if (nworkers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(nworkers);
        for (std::size_t w = 0; w < nworkers; ++w) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    for (const auto& f : failures)
        if (f)
            throw convergence_error("sweep cell failed (" + f->cell +
                                    "): " + f->what);

    // Assemble CSV text in job order.
    std::string csv =
        "lambda_db,m_D,m_sD,m_E,m_sE,r_s,method,value,err_estimate,flags\n";
    const double unit_scale =
        (cfg.bits && cfg.metric == metric_kind::asc) ? 1.0 / std::numbers::ln2
                                                     : 1.0;
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        const cell_job& j = jobs[i];
        const metric_result& r = results[i];
        csv += detail::fmt12(j.lambda_db);
        csv += ',';
        csv += detail::fmt12(j.shapes[0]);
        csv += ',';
        csv += detail::fmt12(j.shapes[1]);
        csv += ',';
        csv += detail::fmt12(j.shapes[2]);
        csv += ',';
        csv += detail::fmt12(j.shapes[3]);
        csv += ',';
        csv += detail::fmt12(cfg.r_s);
        csv += ',';
        csv += to_string(j.method);
        csv += ',';
        csv += detail::fmt12(r.value * unit_scale);
        csv += ',';
        csv += detail::fmt12(r.abs_error_estimate * unit_scale);
        csv += ',';
        csv += r.flags.to_string();
        csv += '\n';
    }

    const std::string tmp = cfg.output_path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw domain_error("run_sweep: cannot open '" + tmp +
                               "' for writing");
        out << csv;
        if (!out.good()) {
            out.close();
            std::remove(tmp.c_str());
            throw domain_error("run_sweep: write failed for '" + tmp + "'");
        }
    }
    if (std::rename(tmp.c_str(), cfg.output_path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw domain_error("run_sweep: cannot rename output into '" +
                           cfg.output_path + "'");
    }

    if (!cfg.svg_path.empty()) {
        // One series per (scenario, method), x = lambda in dB, y = value.
        std::vector<svg_series> series;
        for (const auto& sc : cfg.scenarios)
            for (const auto m : cfg.methods) {
                svg_series s;
                char label[96];
                std::snprintf(label, sizeof label, "mE=%g,msE=%g %s", sc[2],
                              sc[3], to_string(m));
                s.label = label;
                series.push_back(s);
            }
        const std::size_t per_lambda = cfg.scenarios.size() * cfg.methods.size();
        for (std::size_t i = 0; i < jobs.size(); ++i)
            series[i % per_lambda].points.emplace_back(
                jobs[i].lambda_db, results[i].value * unit_scale);
        write_svg_lineplot(cfg.svg_path, to_string(cfg.metric),
                           "lambda (dB)", to_string(cfg.metric), series);
    }
}

} // namespace fsecrecy

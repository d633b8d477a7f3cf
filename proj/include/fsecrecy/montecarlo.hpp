#pragma once

// Seeded Monte Carlo estimators for the four secrecy metrics.  One shared
// sample stream feeds every metric: each draw produces a (gamma_D, gamma_E)
// pair, and all estimands are accumulated from the same pairs.  Batches own
// disjoint RNG subsequences (batch k = k jumps of 2^128 steps from the
// seeded state), are processed by a deterministic worker pool, and are
// reduced in batch order — results are bit-identical for a given
// (seed, n_samples, batch) regardless of thread count.

#include <cmath>
#include <cstdint>
#include <thread>
#include <vector>

#include "errors.hpp"
#include "fading.hpp"
#include "rng.hpp"
#include "secrecy.hpp"

namespace fsecrecy {

struct sim_config {
    std::uint64_t n_samples = 1000000; // >= 1000
    std::uint64_t seed = 0;
    std::uint64_t batch = 65536; // samples per accumulation block, >= 1

    void validate() const {
        if (n_samples < 1000)
            throw domain_error("sim_config: n_samples must be at least 1000");
        if (batch < 1)
            throw domain_error("sim_config: batch must be positive");
    }
};

struct mc_estimate {
    double mean = 0.0;
    double std_error = 0.0; // sample standard deviation / sqrt(n)
    std::uint64_t n = 0;
};

// All four metrics estimated from one shared stream.
struct mc_metrics {
    mc_estimate asc;       // mean of max(0, ln(1+g_D) - ln(1+g_E))
    mc_estimate sop;       // fraction with g_D < theta g_E + theta - 1
    mc_estimate sop_lower; // fraction with g_D < theta g_E
    mc_estimate spsc;      // fraction with g_D > g_E (complement counting)
};

namespace detail {

struct batch_sums {
    long double asc_sum = 0.0L;
    long double asc_sumsq = 0.0L;
    std::uint64_t sop_count = 0;
    std::uint64_t sopl_count = 0;
    std::uint64_t spsc_count = 0;
};

// Draw order per sample: X_D, Y_D, X_E, Y_E.  With diagnostic_shared_draws
// the E channel reuses the D channel's gamma variates (scaled by its own
// Xi), a degenerate coupling used only to verify structural identities.
template <bool SharedDraws>
inline batch_sums run_batch(const wiretap_scenario& s, xoshiro256pp g,
                            std::uint64_t count) {
    batch_sums out;
    const double theta = s.theta;
    const double beta = theta - 1.0;
    for (std::uint64_t i = 0; i < count; ++i) {
        const double xd = gamma_draw(g, s.main.m);
        const double yd = gamma_draw(g, s.main.m_s);
        const double gd = (xd / yd) / s.main.xi;
        double ge;
        if constexpr (SharedDraws) {
            ge = (xd / yd) / s.eve.xi;
        } else {
            const double xe = gamma_draw(g, s.eve.m);
            const double ye = gamma_draw(g, s.eve.m_s);
            ge = (xe / ye) / s.eve.xi;
        }
        const double cs = std::log1p(gd) - std::log1p(ge);
        const double z = cs > 0.0 ? cs : 0.0;
        out.asc_sum += z;
        out.asc_sumsq += static_cast<long double>(z) * z;
        const bool below_lower = gd < theta * ge;
        if (gd < theta * ge + beta) ++out.sop_count;
        if (below_lower) ++out.sopl_count;
        // Counting SPSC as the exact complement of the theta=1 lower-bound
        // event keeps mc_spsc + mc_sop_lower(theta=1) = 1 even on ties.
        if (!(gd < ge)) ++out.spsc_count;
    }
    return out;
}

inline mc_estimate binomial_estimate(std::uint64_t count, std::uint64_t n) {
    const double p = double(count) / double(n);
    mc_estimate e;
    e.mean = p;
    e.std_error = std::sqrt(p * (1.0 - p) / double(n));
    e.n = n;
    return e;
}

template <bool SharedDraws>
inline mc_metrics run_all(const wiretap_scenario& s, const sim_config& c,
                          unsigned max_workers) {
    c.validate();
    const std::uint64_t n = c.n_samples;
    const std::uint64_t nb = (n + c.batch - 1) / c.batch;
    std::vector<batch_sums> partial(nb);

    // Worker w handles batches w, w + T, w + 2T, ...; each batch re-derives
    // its generator by jumping k times from the seeded state, so the
    // assignment of batches to workers cannot affect any stream.
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (max_workers != 0 && max_workers < hw) hw = max_workers;
    const std::uint64_t workers = std::min<std::uint64_t>(nb, hw);
    auto work = [&](std::uint64_t w) {
        xoshiro256pp g(c.seed);
        std::uint64_t jumped = 0;
        for (std::uint64_t k = w; k < nb; k += workers) {
            while (jumped < k) {
                g.jump();
                ++jumped;
            }
            xoshiro256pp gk = g;
            const std::uint64_t lo = k * c.batch;
            const std::uint64_t hi = std::min(n, lo + c.batch);
            partial[k] = run_batch<SharedDraws>(s, gk, hi - lo);
        }
    };
    if (workers <= 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::uint64_t w = 0; w < workers; ++w)
            pool.emplace_back(work, w);
        for (auto& t : pool) t.join();
    }

    // Ordered reduction, independent of how batches were scheduled.
    batch_sums total;
    for (const auto& b : partial) {
        total.asc_sum += b.asc_sum;
        total.asc_sumsq += b.asc_sumsq;
        total.sop_count += b.sop_count;
        total.sopl_count += b.sopl_count;
        total.spsc_count += b.spsc_count;
    }

    mc_metrics out;
    const long double mean = total.asc_sum / n;
    const long double var =
        n > 1 ? (total.asc_sumsq - n * mean * mean) / (n - 1) : 0.0L;
    out.asc.mean = double(mean);
    out.asc.std_error =
        double(std::sqrt(std::fmax(0.0L, var) / n));
    out.asc.n = n;
    out.sop = detail::binomial_estimate(total.sop_count, n);
    out.sop_lower = detail::binomial_estimate(total.sopl_count, n);
    out.spsc = detail::binomial_estimate(total.spsc_count, n);
    return out;
}

} // namespace detail

// Shared-stream evaluation of all four metrics (the default mode: one set
// of draws serves every metric).  diagnostic_shared_draws couples D and E
// to the same underlying gamma variates; see run_batch.  max_workers caps
// the thread count (0 = hardware concurrency); it cannot affect results,
// only scheduling.
inline mc_metrics mc_all_metrics(const wiretap_scenario& s, const sim_config& c,
                                 bool diagnostic_shared_draws = false,
                                 unsigned max_workers = 0) {
    return diagnostic_shared_draws ? detail::run_all<true>(s, c, max_workers)
                                   : detail::run_all<false>(s, c, max_workers);
}

inline mc_estimate mc_asc(const wiretap_scenario& s, const sim_config& c) {
    return mc_all_metrics(s, c).asc;
}
inline mc_estimate mc_sop(const wiretap_scenario& s, const sim_config& c) {
    return mc_all_metrics(s, c).sop;
}
inline mc_estimate mc_sop_lower(const wiretap_scenario& s, const sim_config& c) {
    return mc_all_metrics(s, c).sop_lower;
}
inline mc_estimate mc_spsc(const wiretap_scenario& s, const sim_config& c) {
    return mc_all_metrics(s, c).spsc;
}

} // namespace fsecrecy

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "fsecrecy/quadrature.hpp"
#include "fsecrecy/specfun/gamma.hpp"

using namespace fsecrecy;
using Catch::Approx;

TEST_CASE("integrate handles smooth finite integrands", "[quadrature]") {
    const auto sq = integrate([](double x) { return x * x; }, 0.0, 1.0);
    CHECK(sq.converged);
    CHECK(sq.value == Approx(1.0 / 3.0).epsilon(1e-13));

    const auto sine =
        integrate([](double x) { return std::sin(x); }, 0.0, std::numbers::pi);
    CHECK(sine.converged);
    CHECK(sine.value == Approx(2.0).epsilon(1e-13));
    CHECK(sine.abs_error < 1e-8);

    // Mildly oscillatory integrand still resolves to full precision.
    const auto osc = integrate([](double x) { return std::cos(25.0 * x); },
                               0.0, 2.0);
    CHECK(osc.converged);
    CHECK(osc.value == Approx(std::sin(50.0) / 25.0).epsilon(1e-11));
}

TEST_CASE("integrate degenerate and truncated cases", "[quadrature]") {
    // Empty interval integrates to zero without evaluating anything.
    const auto empty = integrate([](double) { return 1.0; }, 2.0, 2.0);
    CHECK(empty.converged);
    CHECK(empty.value == 0.0);
    CHECK(empty.evaluations == 0);

    // An integrable singularity with a starved segment budget must
    // report non-convergence instead of a silently wrong answer.
    auto spike = [](double x) { return 1.0 / std::sqrt(std::fabs(x - 0.3)); };
    const auto starved = integrate(spike, 0.0, 1.0, 1e-12, 1e-12, 10);
    CHECK_FALSE(starved.converged);
    CHECK(starved.abs_error > 1e-12);
}

TEST_CASE("integrate_half_line reproduces classic integrals", "[quadrature]") {
    // int_0^inf e^{-x^2} dx = sqrt(pi)/2.
    const auto gauss =
        integrate_half_line([](double x) { return std::exp(-x * x); });
    CHECK(gauss.converged);
    CHECK(gauss.value ==
          Approx(0.5 * std::sqrt(std::numbers::pi)).epsilon(1e-12));

    // int_0^inf x^{a-1} e^{-x} dx = Gamma(a).
    const double a = 4.3;
    const auto gam = integrate_half_line(
        [a](double x) { return std::pow(x, a - 1.0) * std::exp(-x); });
    CHECK(gam.converged);
    CHECK(gam.value == Approx(std::exp(log_gamma(a))).epsilon(1e-12));
}

TEST_CASE("integrate_half_line widened range covers heavy tails",
          "[quadrature]") {
    // int_0^inf x^{-1/2} (1+x)^{-1} dx = B(1/2, 1/2) = pi.  The x^{-3/2}
    // tail leaves ~2e-10 of mass beyond e^46, so the default window is
    // near the tolerance edge while a widened one is comfortably inside.
    auto f = [](double x) { return 1.0 / (std::sqrt(x) * (1.0 + x)); };
    const auto wide = integrate_half_line(f, 1e-10, 1e-10, -96.0, 96.0);
    CHECK(wide.converged);
    CHECK(wide.value == Approx(std::numbers::pi).epsilon(1e-12));

    const auto dflt = integrate_half_line(f);
    CHECK(std::fabs(dflt.value - std::numbers::pi) < 1e-8);
}

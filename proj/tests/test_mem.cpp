#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>
#include <vector>

#include "memfilter/mem.hpp"
#include "memfilter/rng.hpp"
#include "oracles.hpp"

using memfilter::asymptotic_x_tilde;
using memfilter::dual_entropy;
using memfilter::dual_gradient;
using memfilter::EstimateResult;
using memfilter::mem_closed_form;
using memfilter::MemConfig;
using memfilter::minimize_dual_numeric;
using memfilter::residual_vs_alpha_profile;
using memfilter::RngStream;
using memfilter::solve_alpha_fixed_point;

namespace {

struct Tuple {
    double y_bar;
    MemConfig cfg;
};

// Random admissible parameter tuples: alpha, delta, y_bar log-uniform, n
// from the small set the estimator is meant for.
std::vector<Tuple> random_tuples(int count, std::uint64_t seed) {
    RngStream s(seed);
    const int ns[] = {1, 2, 3, 10, 100};
    std::vector<Tuple> tuples;
    tuples.reserve(static_cast<std::size_t>(count));
    const auto log_uniform = [&](double lo, double hi) {
        return lo * std::exp(s.uniform() * std::log(hi / lo));
    };
    for (int i = 0; i < count; ++i) {
        Tuple t;
        t.cfg.alpha = log_uniform(1e-3, 1e3);
        t.cfg.delta = log_uniform(1e-3, 10.0);
        t.cfg.n = ns[static_cast<int>(s.uniform() * 5.0)];
        t.y_bar = log_uniform(1e-3, 100.0);
        tuples.push_back(t);
    }
    return tuples;
}

}  // namespace

TEST_CASE("dual entropy vanishes at lambda = 0") {
    for (double y_bar : {0.3, 1.0, 7.5}) {
        for (double alpha : {0.2, 1.0, 9.0}) {
            CHECK(dual_entropy(0.0, y_bar, MemConfig{alpha, 0.5, 3}) == 0.0);
        }
    }
}

TEST_CASE("dual entropy frozen value") {
    // cfg = (alpha 1, delta 0.5, n 3), y_bar 1, lambda 1:
    // 0.25/6 - 3 ln(4/3) + 1, evaluated in long double.
    const long double want = 0.25L / 6.0L - 3.0L * std::log(4.0L / 3.0L) + 1.0L;
    CHECK(dual_entropy(1.0, 1.0, MemConfig{1.0, 0.5, 3}) ==
          doctest::Approx((double)want).epsilon(1e-14));
}

TEST_CASE("dual entropy is convex") {
    const MemConfig cfg{1.0, 0.5, 3};
    const double h = 1e-3;
    for (double lam = -2.9; lam < 6.0; lam += 0.05) {
        const double second = dual_entropy(lam - h, 1.0, cfg) - 2.0 * dual_entropy(lam, 1.0, cfg) +
                              dual_entropy(lam + h, 1.0, cfg);
        CHECK(second > 0.0);
    }
}

TEST_CASE("dual domain errors") {
    const MemConfig cfg{1.0, 0.5, 3};
    CHECK_THROWS_AS((void)dual_entropy(-3.0, 1.0, cfg), std::domain_error);
    CHECK_THROWS_AS((void)dual_entropy(-3.5, 1.0, cfg), std::domain_error);
    CHECK_THROWS_AS((void)dual_gradient(-3.0, 1.0, cfg), std::domain_error);
    CHECK_THROWS_AS((void)dual_entropy(0.5, 1.0, MemConfig{0.0, 0.5, 3}), std::domain_error);
    CHECK_THROWS_AS((void)dual_gradient(0.5, 1.0, MemConfig{0.0, 0.5, 3}), std::domain_error);
}

TEST_CASE("dual gradient vanishes at the closed-form minimizer") {
    for (double y_bar : {0.4, 1.0, 3.7}) {
        const MemConfig cfg{1.0 / y_bar, 0.5, 3};
        const EstimateResult res = mem_closed_form(y_bar, cfg);
        CHECK(std::abs(dual_gradient(res.lambda_star, y_bar, cfg)) < 1e-12);
    }
}

TEST_CASE("dual gradient matches finite differences") {
    const MemConfig cfg{1.0, 0.5, 3};
    const double fd = oracles::central_diff(
        [&](double lam) { return dual_entropy(lam, 1.0, cfg); }, 0.3, 1e-6);
    CHECK(std::abs(fd - dual_gradient(0.3, 1.0, cfg)) < 1e-6);

    // Randomized sweep.
    RngStream s(8);
    for (int i = 0; i < 200; ++i) {
        const MemConfig rcfg{0.1 + 3.0 * s.uniform(), 0.1 + s.uniform(), 3};
        const double y_bar = 0.1 + 5.0 * s.uniform();
        const double n_alpha = rcfg.alpha * rcfg.n;
        const double lam = -n_alpha + 0.2 * n_alpha + 4.0 * s.uniform();
        const double fd2 = oracles::central_diff(
            [&](double l) { return dual_entropy(l, y_bar, rcfg); }, lam, 1e-6);
        CHECK(std::abs(fd2 - dual_gradient(lam, y_bar, rcfg)) < 1e-6);
    }
}

TEST_CASE("dual gradient falls toward the domain boundary") {
    const MemConfig cfg{1.0, 0.5, 3};
    double prev = dual_gradient(-2.0, 1.0, cfg);
    for (double lam : {-2.5, -2.9, -2.99, -2.999999}) {
        const double g = dual_gradient(lam, 1.0, cfg);
        CHECK(g < prev);
        prev = g;
    }
    CHECK(prev < -1e5);
}

TEST_CASE("closed form: alpha = 1/y_bar is the fixed point") {
    for (double y_bar : {0.2, 1.0, 2.5, 40.0}) {
        const EstimateResult res = mem_closed_form(y_bar, MemConfig{1.0 / y_bar, 0.5, 3});
        CHECK(std::abs(res.lambda_star) < 1e-12);
        CHECK(res.x_hat_star == doctest::Approx(y_bar).epsilon(1e-12));
        CHECK(std::abs(res.e_hat_star) < 1e-12);
    }
}

TEST_CASE("closed form at alpha = 0") {
    const EstimateResult res = mem_closed_form(1.0, MemConfig{0.0, 0.5, 3});
    CHECK(res.x_hat_star == doctest::Approx(0.5 * (1.0 + std::sqrt(2.0))).epsilon(1e-15));
    CHECK(res.e_hat_star == doctest::Approx(0.5 * (1.0 - std::sqrt(2.0))).epsilon(1e-15));
    // Independent confirmation: the numeric dual minimum at a tiny alpha.
    const EstimateResult near_zero = minimize_dual_numeric(1.0, MemConfig{1e-8, 0.5, 3});
    CHECK(near_zero.x_hat_star == doctest::Approx(res.x_hat_star).epsilon(1e-6));
}

TEST_CASE("decomposition holds everywhere") {
    for (const Tuple& t : random_tuples(1000, 555)) {
        const EstimateResult res = mem_closed_form(t.y_bar, t.cfg);
        CHECK(res.x_hat_star > 0.0);
        CHECK(std::abs(res.x_hat_star + res.e_hat_star - t.y_bar) <= 1e-10);
        CHECK(std::abs(res.e_hat_star + t.cfg.delta * t.cfg.delta * res.lambda_star / t.cfg.n) <=
              1e-12 * std::max(1.0, std::abs(res.e_hat_star)));
    }
}

TEST_CASE("sign of the residual follows alpha * y_bar - 1 exactly") {
    for (const Tuple& t : random_tuples(500, 77)) {
        const double e = mem_closed_form(t.y_bar, t.cfg).e_hat_star;
        const double key = t.cfg.alpha * t.y_bar - 1.0;
        if (key > 0.0) CHECK(e > 0.0);
        if (key < 0.0) CHECK(e < 0.0);
        if (key == 0.0) CHECK(e == 0.0);
    }
}

TEST_CASE("small-noise limit recovers the sample mean") {
    for (double alpha : {0.0, 0.3, 1.0, 3.0}) {
        const EstimateResult res = mem_closed_form(1.0, MemConfig{alpha, 1e-8, 3});
        CHECK(std::abs(res.x_hat_star - 1.0) <= 1e-6);
    }
}

TEST_CASE("closed form rejects non-finite input") {
    CHECK_THROWS_AS((void)mem_closed_form(std::numeric_limits<double>::quiet_NaN(),
                                          MemConfig{0.0, 0.5, 3}),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)mem_closed_form(std::numeric_limits<double>::infinity(),
                                          MemConfig{0.0, 0.5, 3}),
                    std::invalid_argument);
}

TEST_CASE("numeric minimizer agrees with the closed form") {
    const EstimateResult num = minimize_dual_numeric(0.8, MemConfig{2.0, 0.5, 3});
    const EstimateResult cf = mem_closed_form(0.8, MemConfig{2.0, 0.5, 3});
    CHECK(std::abs(num.lambda_star - cf.lambda_star) < 1e-9 * std::max(1.0, std::abs(cf.lambda_star)));
    CHECK(std::abs(num.x_hat_star - cf.x_hat_star) < 1e-9);
    CHECK(std::abs(num.e_hat_star - cf.e_hat_star) < 1e-9);

    const EstimateResult at_fixed = minimize_dual_numeric(1.0, MemConfig{1.0, 0.5, 3});
    CHECK(std::abs(at_fixed.lambda_star) < 1e-12);
}

TEST_CASE("numeric minimizer sweep against the closed form") {
    double worst = 0.0;
    for (const Tuple& t : random_tuples(1000, 2718)) {
        const EstimateResult num = minimize_dual_numeric(t.y_bar, t.cfg);
        const EstimateResult cf = mem_closed_form(t.y_bar, t.cfg);
        worst = std::max(worst, std::abs(num.x_hat_star - cf.x_hat_star));
    }
    CHECK(worst <= 1e-8);
}

TEST_CASE("numeric minimizer rejects alpha = 0") {
    CHECK_THROWS_AS((void)minimize_dual_numeric(1.0, MemConfig{0.0, 0.5, 3}),
                    std::invalid_argument);
}

TEST_CASE("large-sample limit") {
    CHECK(asymptotic_x_tilde(1.0, 1.0, 0.5) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(asymptotic_x_tilde(0.5, 2.0, 0.5) == doctest::Approx(2.0).epsilon(1e-14));
    // Independent of n: equals the closed form with y_bar = theta.
    for (int n : {1, 3, 10}) {
        const double via_cf = mem_closed_form(1.3, MemConfig{0.7, 0.5, n}).x_hat_star;
        CHECK(asymptotic_x_tilde(0.7, 1.3, 0.5) == doctest::Approx(via_cf).epsilon(1e-14));
    }
    CHECK(asymptotic_x_tilde(0.0, 1.0, 0.5) ==
          doctest::Approx(0.5 * (1.0 + std::sqrt(2.0))).epsilon(1e-15));
}

TEST_CASE("fixed point recovers the true rate") {
    const auto make_x_tilde = [](double theta, double delta) {
        return [=](double alpha) { return asymptotic_x_tilde(alpha, theta, delta); };
    };
    CHECK(std::abs(solve_alpha_fixed_point(0.1, 10.0, make_x_tilde(1.0, 0.5)) - 1.0) < 1e-8);
    CHECK(std::abs(solve_alpha_fixed_point(0.1, 10.0, make_x_tilde(2.0, 0.5)) - 0.5) < 1e-8);
    CHECK(std::abs(solve_alpha_fixed_point(0.1, 10.0, make_x_tilde(1.0, 1e-8)) - 1.0) < 1e-4);
    CHECK_THROWS_AS((void)solve_alpha_fixed_point(2.0, 3.0, make_x_tilde(1.0, 0.5)),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)solve_alpha_fixed_point(-1.0, 3.0, make_x_tilde(1.0, 0.5)),
                    std::invalid_argument);
}

TEST_CASE("residual profile endpoints and monotonicity") {
    std::vector<double> alphas;
    alphas.push_back(0.0);
    for (int i = 0; i < 50; ++i) {
        alphas.push_back(1e-3 * std::exp(std::log(1e9) * i / 49.0));
    }
    const auto profile = residual_vs_alpha_profile(1.0, 0.5, 3, alphas);
    CHECK(profile.front().second ==
          doctest::Approx(0.5 * (1.0 - std::sqrt(2.0))).epsilon(1e-15));
    for (std::size_t i = 1; i < profile.size(); ++i) {
        CHECK(profile[i].second >= profile[i - 1].second);
    }
    // Interior zero at alpha = 1/y_bar and saturation toward y_bar.
    const auto at = residual_vs_alpha_profile(1.0, 0.5, 3, std::vector<double>{1.0, 1e6});
    CHECK(std::abs(at[0].second) < 1e-12);
    CHECK(std::abs(at[1].second - 1.0) < 1e-3);
    // x_hat at huge alpha collapses to zero.
    CHECK(mem_closed_form(1.0, MemConfig{1e6, 0.5, 3}).x_hat_star <= 1e-3);

    const std::vector<double> unsorted{1.0, 0.5};
    CHECK_THROWS_AS((void)residual_vs_alpha_profile(1.0, 0.5, 3, unsorted),
                    std::invalid_argument);
}

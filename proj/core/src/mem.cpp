#include "memfilter/mem.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace memfilter {

void MemConfig::validate() const {
    if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
        throw std::invalid_argument("MemConfig: alpha must be finite and >= 0");
    }
    if (!(delta > 0.0) || !std::isfinite(delta)) {
        throw std::invalid_argument("MemConfig: delta must be finite and > 0");
    }
    if (n < 1) {
        throw std::invalid_argument("MemConfig: n must be >= 1");
    }
}

SampleBatch SampleBatch::from_values(std::vector<double> values) {
    if (values.empty()) {
        throw std::invalid_argument("SampleBatch: values must be nonempty");
    }
    for (double v : values) {
        if (!std::isfinite(v)) {
            throw std::invalid_argument("SampleBatch: values must be finite");
        }
    }
    const double sum = std::accumulate(values.begin(), values.end(), 0.0);
    SampleBatch batch;
    batch.y_bar = sum / static_cast<double>(values.size());
    batch.values = std::move(values);
    return batch;
}

namespace {

void require_dual_domain(double lambda, const MemConfig& cfg) {
    cfg.validate();
    if (cfg.alpha == 0.0) {
        throw std::domain_error("dual is undefined at alpha = 0; use mem_closed_form");
    }
    if (!(lambda > -static_cast<double>(cfg.n) * cfg.alpha)) {
        throw std::domain_error("dual domain requires lambda > -n*alpha");
    }
}

}  // namespace

double dual_entropy(double lambda, double y_bar, const MemConfig& cfg) {
    require_dual_domain(lambda, cfg);
    const double n = static_cast<double>(cfg.n);
    return lambda * lambda * cfg.delta * cfg.delta / (2.0 * n) -
           n * std::log(lambda / (n * cfg.alpha) + 1.0) + lambda * y_bar;
}

double dual_gradient(double lambda, double y_bar, const MemConfig& cfg) {
    require_dual_domain(lambda, cfg);
    const double n = static_cast<double>(cfg.n);
    return lambda * cfg.delta * cfg.delta / n -
           (1.0 / cfg.alpha) / (lambda / (n * cfg.alpha) + 1.0) + y_bar;
}

EstimateResult mem_closed_form(double y_bar, const MemConfig& cfg) {
    cfg.validate();
    if (!std::isfinite(y_bar)) {
        throw std::invalid_argument("mem_closed_form: y_bar must be finite");
    }
    const double d2 = cfg.delta * cfg.delta;
    const double b = y_bar - cfg.alpha * d2;
    const double root = std::sqrt(b * b + 4.0 * d2);

    EstimateResult res;
    // x_hat = (b + root)/2, rationalized when b < 0 so both branches add
    // same-signed terms.
    res.x_hat_star = b >= 0.0 ? 0.5 * (b + root) : 2.0 * d2 / (root - b);
    // e_hat = (y_bar - root + ... ) collapses to a form whose sign is carried
    // entirely by (alpha*y_bar - 1).
    res.e_hat_star = 2.0 * d2 * (cfg.alpha * y_bar - 1.0) / (y_bar + cfg.alpha * d2 + root);
    res.lambda_star = -static_cast<double>(cfg.n) * res.e_hat_star / d2;
    return res;
}

EstimateResult minimize_dual_numeric(double y_bar, const MemConfig& cfg) {
    cfg.validate();
    if (!(cfg.alpha > 0.0)) {
        throw std::invalid_argument("minimize_dual_numeric: alpha must be > 0");
    }
    if (!std::isfinite(y_bar)) {
        throw std::invalid_argument("minimize_dual_numeric: y_bar must be finite");
    }
    const double n = static_cast<double>(cfg.n);
    const double d2 = cfg.delta * cfg.delta;
    const double n_alpha = n * cfg.alpha;
    const double tol = 1e-12 * std::max(1.0, std::abs(y_bar));

    const auto grad = [&](double lambda) {
        return lambda * d2 / n - (1.0 / cfg.alpha) / (lambda / n_alpha + 1.0) + y_bar;
    };
    const auto hess = [&](double lambda) {
        const double t = lambda + n_alpha;
        return d2 / n + n / (t * t);
    };

    // Bracket the root of the (strictly increasing) gradient.
    double lo, hi;
    const double g0 = grad(0.0);
    if (g0 > 0.0) {
        // Root lies between the domain boundary -n*alpha and 0.
        hi = 0.0;
        double frac = 0.5;
        lo = -n_alpha * (1.0 - frac);
        while (grad(lo) > 0.0) {
            frac *= 0.5;
            lo = -n_alpha * (1.0 - frac);
        }
    } else {
        lo = 0.0;
        hi = 1.0;
        while (grad(hi) < 0.0) {
            hi *= 2.0;
        }
    }

    const auto result_at = [&](double lambda) {
        EstimateResult res;
        res.lambda_star = lambda;
        res.x_hat_star = n / (lambda + n_alpha);
        res.e_hat_star = -d2 * lambda / n;
        return res;
    };

    double lambda = 0.5 * (lo + hi);
    double best_lambda = lambda;
    double best_abs_g = std::numeric_limits<double>::infinity();
    for (int iter = 0; iter < 200; ++iter) {
        const double g = grad(lambda);
        if (std::abs(g) <= tol) {
            return result_at(lambda);
        }
        if (std::abs(g) < best_abs_g) {
            best_abs_g = std::abs(g);
            best_lambda = lambda;
        }
        if (g > 0.0) {
            hi = lambda;
        } else {
            lo = lambda;
        }
        // Bracket exhausted at double precision: the gradient criterion can
        // sit below the evaluation noise of g, so the tightest point wins.
        if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() *
                           std::max(1.0, std::max(std::abs(lo), std::abs(hi)))) {
            return result_at(best_lambda);
        }
        double next = lambda - g / hess(lambda);
        if (!(next > lo && next < hi)) {
            next = 0.5 * (lo + hi);  // bisection fallback
        }
        lambda = next;
    }
    throw std::runtime_error("minimize_dual_numeric: no convergence in 200 iterations");
}

double asymptotic_x_tilde(double alpha, double theta, double delta) {
    if (!(alpha >= 0.0) || !(theta > 0.0) || !(delta > 0.0)) {
        throw std::invalid_argument("asymptotic_x_tilde: needs alpha >= 0, theta > 0, delta > 0");
    }
    const double d2 = delta * delta;
    const double b = theta - alpha * d2;
    const double root = std::sqrt(b * b + 4.0 * d2);
    return b >= 0.0 ? 0.5 * (b + root) : 2.0 * d2 / (root - b);
}

double solve_alpha_fixed_point(double alpha_lo, double alpha_hi,
                               const std::function<double(double)>& x_tilde) {
    if (!(0.0 < alpha_lo && alpha_lo < alpha_hi)) {
        throw std::invalid_argument("solve_alpha_fixed_point: need 0 < alpha_lo < alpha_hi");
    }
    const auto f = [&](double a) { return x_tilde(a) - 1.0 / a; };
    double lo = alpha_lo, hi = alpha_hi;
    double flo = f(lo), fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo < 0.0) == (fhi < 0.0)) {
        throw std::invalid_argument("solve_alpha_fixed_point: no sign change on the bracket");
    }

    // Plain bisection: the bracket width halves every step, so ~120 steps
    // reach double-precision resolution from any starting interval, and the
    // residual |f| at the final midpoint is Lipschitz-bounded by the width.
    double best = 0.5 * (lo + hi);
    double best_abs = std::abs(f(best));
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (std::abs(fm) < best_abs) {
            best_abs = std::abs(fm);
            best = mid;
        }
        if (best_abs <= 1e-10) {
            return best;
        }
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
        if (hi - lo <= std::numeric_limits<double>::epsilon() * std::abs(mid)) {
            break;
        }
    }
    return best;
}

std::vector<std::pair<double, double>> residual_vs_alpha_profile(double y_bar, double delta, int n,
                                                                 std::span<const double> alphas) {
    if (!std::is_sorted(alphas.begin(), alphas.end())) {
        throw std::invalid_argument("residual_vs_alpha_profile: alphas must be ascending");
    }
    std::vector<std::pair<double, double>> profile;
    profile.reserve(alphas.size());
    for (double alpha : alphas) {
        MemConfig cfg{alpha, delta, n};
        profile.emplace_back(alpha, mem_closed_form(y_bar, cfg).e_hat_star);
    }
    return profile;
}

}  // namespace memfilter

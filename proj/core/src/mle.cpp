#include "memfilter/mle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

#include "memfilter/special_functions.hpp"

namespace memfilter {

MleConfig MleConfig::scaled_to(double y_bar, double delta, double tol) {
    const double scale = std::max(y_bar, 1e-12);
    return MleConfig{1e-3 / scale, 1e3 / scale, tol, delta};
}

void MleConfig::validate() const {
    if (!(theta_min > 0.0) || !(theta_max > theta_min)) {
        throw std::invalid_argument("MleConfig: need 0 < theta_min < theta_max");
    }
    if (!(tol > 0.0)) {
        throw std::invalid_argument("MleConfig: tol must be > 0");
    }
    if (!(delta > 0.0)) {
        throw std::invalid_argument("MleConfig: delta must be > 0");
    }
}

double density_convolution(double t, double theta, double delta) {
    if (!(theta > 0.0) || !(delta > 0.0)) {
        throw std::invalid_argument("density_convolution: theta and delta must be > 0");
    }
    const double z = (t - theta * delta * delta) / delta;
    const double log_f =
        std::log(theta) - theta * t + 0.5 * theta * theta * delta * delta + log_std_normal_cdf(z);
    return std::exp(log_f);
}

double log_likelihood(std::span<const double> ts, double theta, double delta) {
    if (ts.empty()) {
        throw std::invalid_argument("log_likelihood: ts must be nonempty");
    }
    if (!(theta > 0.0) || !(delta > 0.0)) {
        throw std::invalid_argument("log_likelihood: theta and delta must be > 0");
    }
    const double n = static_cast<double>(ts.size());
    double sum_t = 0.0;
    double sum_log_cdf = 0.0;
    const double shift = theta * delta * delta;
    for (double t : ts) {
        sum_t += t;
        sum_log_cdf += log_std_normal_cdf((t - shift) / delta);
    }
    return n * std::log(theta) - theta * sum_t + 0.5 * n * theta * theta * delta * delta +
           sum_log_cdf;
}

namespace {

constexpr double kGolden = 0.3819660112501051;  // (3 - sqrt(5)) / 2

// Brent maximization of f on [lo, hi] to absolute x-tolerance tol.
double brent_max(double lo, double hi, double tol, const std::function<double(double)>& f) {
    double a = lo, b = hi;
    double x = a + kGolden * (b - a);
    double w = x, v = x;
    double fx = f(x), fw = fx, fv = fx;
    double d = 0.0, e = 0.0;
    for (int iter = 0; iter < 200; ++iter) {
        const double m = 0.5 * (a + b);
        const double tol1 = tol + 1e-12 * std::abs(x);
        const double tol2 = 2.0 * tol1;
        if (std::abs(x - m) <= tol2 - 0.5 * (b - a)) {
            break;
        }
        double u;
        bool parabolic = false;
        if (std::abs(e) > tol1) {
            // Parabola through (v, w, x).
            const double r = (x - w) * (fx - fv);
            double q = (x - v) * (fx - fw);
            double p = (x - v) * q - (x - w) * r;
            q = 2.0 * (q - r);
            if (q > 0.0) p = -p;
            q = std::abs(q);
            const double e_old = e;
            e = d;
            if (std::abs(p) < std::abs(0.5 * q * e_old) && p > q * (a - x) && p < q * (b - x)) {
                d = p / q;
                u = x + d;
                if (u - a < tol2 || b - u < tol2) {
                    d = x < m ? tol1 : -tol1;
                }
                parabolic = true;
            }
        }
        if (!parabolic) {
            e = (x < m ? b : a) - x;
            d = kGolden * e;
        }
        u = std::abs(d) >= tol1 ? x + d : x + (d > 0.0 ? tol1 : -tol1);
        const double fu = f(u);
        if (fu >= fx) {
            if (u < x) b = x; else a = x;
            v = w; fv = fw;
            w = x; fw = fx;
            x = u; fx = fu;
        } else {
            if (u < x) a = u; else b = u;
            if (fu >= fw || w == x) {
                v = w; fv = fw;
                w = u; fw = fu;
            } else if (fu >= fv || v == x || v == w) {
                v = u; fv = fu;
            }
        }
    }
    return x;
}

}  // namespace

MlEstimate ml_estimate(const SampleBatch& batch, const MleConfig& cfg) {
    cfg.validate();
    if (batch.values.empty()) {
        throw std::invalid_argument("ml_estimate: batch must be nonempty");
    }
    const std::span<const double> ts(batch.values);
    const auto objective = [&](double log_theta) {
        return log_likelihood(ts, std::exp(log_theta), cfg.delta);
    };

    // Log-spaced scan localizes the global maximum; the likelihood is not
    // guaranteed unimodal (it approaches a Gaussian-only plateau for large
    // theta), so Brent alone cannot be trusted with the whole interval.
    constexpr int kGridPoints = 200;
    const double u_lo = std::log(cfg.theta_min);
    const double u_hi = std::log(cfg.theta_max);
    const double du = (u_hi - u_lo) / (kGridPoints - 1);
    int best = 0;
    double best_val = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < kGridPoints; ++i) {
        const double val = objective(u_lo + i * du);
        if (val > best_val) {
            best_val = val;
            best = i;
        }
    }

    MlEstimate result;
    if (best == kGridPoints - 1) {
        // Rising into the upper boundary; report the censored value.
        result.theta_star = cfg.theta_max;
        result.mean_estimate = 1.0 / cfg.theta_max;
        result.at_upper_boundary = true;
        return result;
    }
    const double cell_lo = u_lo + std::max(best - 1, 0) * du;
    const double cell_hi = u_lo + std::min(best + 1, kGridPoints - 1) * du;
    const double u_star = brent_max(cell_lo, cell_hi, cfg.tol, objective);
    result.theta_star = std::exp(u_star);
    result.at_upper_boundary = cfg.theta_max - result.theta_star <= 10.0 * cfg.tol * cfg.theta_max;
    result.mean_estimate = 1.0 / result.theta_star;
    return result;
}

double small_noise_ml(double y_bar, double delta) {
    if (!(delta >= 0.0)) {
        throw std::invalid_argument("small_noise_ml: delta must be >= 0");
    }
    const double disc = y_bar * y_bar - 4.0 * delta * delta;
    if (disc < 0.0) {
        throw std::domain_error("small_noise_ml: undefined for y_bar^2 < 4 delta^2");
    }
    return 0.5 * (y_bar + std::sqrt(disc));
}

}  // namespace memfilter

#pragma once

#include <span>

#include "memfilter/mem.hpp"

namespace memfilter {

/// Search window and stopping rule for the likelihood maximization.
struct MleConfig {
    double theta_min = 1e-3;  ///< lower bracket, > 0
    double theta_max = 1e3;   ///< upper bracket, > theta_min
    double tol = 1e-8;        ///< relative bracket width at which Brent stops
    double delta = 0.5;       ///< noise scale, > 0

    /// Scale-adapted window [1e-3, 1e3] / y_bar around the data.
    static MleConfig scaled_to(double y_bar, double delta, double tol = 1e-8);

    void validate() const;
};

/// Density of one observation y = x + e with x ~ Exp(theta), e ~ N(0, delta^2):
///   f_theta(t) = theta exp(-theta t + (theta delta)^2 / 2)
///                * Phi((t - theta delta^2) / delta),
/// the exponentially modified Gaussian.  Evaluated in log space, so it stays
/// finite (or cleanly underflows to 0) for any finite inputs.
double density_convolution(double t, double theta, double delta);

/// Log likelihood of the observations under f_theta:
///   n ln theta - theta sum(t) + n (theta delta)^2 / 2
///     + sum ln Phi((t_i - theta delta^2) / delta),
/// with the stable log-CDF, so the deep-tail region stays finite.
double log_likelihood(std::span<const double> ts, double theta, double delta);

struct MlEstimate {
    double mean_estimate = 0.0;      ///< 1/theta_star, the estimate of E(x)
    double theta_star = 0.0;         ///< maximizing rate
    bool at_upper_boundary = false;  ///< maximizer pinned at theta_max
};

/// Maximizes the log likelihood over [theta_min, theta_max]: a log-spaced
/// grid scan localizes the maximum, then Brent refines the bracketing cell
/// to relative width cfg.tol.  If the maximizer lands within tolerance of
/// theta_max (the likelihood can approach its Gaussian-only plateau from
/// below there) the result carries at_upper_boundary = true rather than an
/// error.
MlEstimate ml_estimate(const SampleBatch& batch, const MleConfig& cfg);

/// Small-noise approximation of the ML mean:
///   1/theta_star ~= (y_bar + sqrt(y_bar^2 - 4 delta^2)) / 2.
/// Throws std::domain_error when y_bar^2 < 4 delta^2, where the
/// approximation is undefined and the caller should fall back to
/// ml_estimate.
double small_noise_ml(double y_bar, double delta);

}  // namespace memfilter

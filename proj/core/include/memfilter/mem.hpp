#pragma once

#include <functional>
#include <span>
#include <utility>
#include <vector>

namespace memfilter {

/// Prior parameters of the entropic estimator.
///
/// The signal prior is Gamma with shape n and rate n*alpha (mean 1/alpha,
/// alpha being the prior guess of the exponential rate); the noise prior is
/// centered Gaussian with variance delta^2/n.  alpha == 0 selects the
/// residual-minimizing estimator, which has an explicit closed form.
struct MemConfig {
    double alpha = 0.0;  ///< prior guess of the rate, >= 0
    double delta = 0.5;  ///< noise scale, > 0
    int n = 3;           ///< sample size, >= 1

    void validate() const;
};

/// A batch of noisy measurements y_1..y_n and their mean.
struct SampleBatch {
    std::vector<double> values;
    double y_bar = 0.0;

    /// Builds a batch and fills in the mean.  Throws std::invalid_argument
    /// on an empty list or non-finite entries.
    static SampleBatch from_values(std::vector<double> values);
};

/// Result of the dual minimization: multiplier, filtered estimate, residual.
/// Satisfies x_hat_star + e_hat_star == y_bar and
/// e_hat_star == -delta^2 * lambda_star / n.
struct EstimateResult {
    double lambda_star = 0.0;
    double x_hat_star = 0.0;
    double e_hat_star = 0.0;
};

/// Dual entropy Sigma(lambda) = lambda^2 delta^2 / (2n)
///                              - n ln(lambda/(n alpha) + 1) + lambda y_bar.
/// Strictly convex on its domain lambda > -n*alpha.  Throws std::domain_error
/// when lambda is outside the domain or alpha == 0 (the dual is not defined
/// there; use mem_closed_form for the alpha == 0 estimator).
double dual_entropy(double lambda, double y_bar, const MemConfig& cfg);

/// d/dlambda of dual_entropy:
///   lambda delta^2 / n - (1/alpha) / (lambda/(n alpha) + 1) + y_bar.
/// Vanishes exactly at the minimizer.  Same domain rules as dual_entropy.
double dual_gradient(double lambda, double y_bar, const MemConfig& cfg);

/// Closed-form minimizer of the dual.
///
/// With b = y_bar - alpha*delta^2 the filtered estimate is
///   x_hat_star = (b + sqrt(b^2 + 4 delta^2)) / 2,
/// evaluated in the rationalized form 2 delta^2 / (sqrt(b^2+4delta^2) - b)
/// when b < 0, and the residual in the cancellation-free form
///   e_hat_star = 2 delta^2 (alpha y_bar - 1)
///                / (y_bar + alpha delta^2 + sqrt(b^2 + 4 delta^2)),
/// so sign(e_hat_star) == sign(alpha*y_bar - 1) holds exactly.  alpha == 0
/// reduces to x_hat_star = (y_bar + sqrt(y_bar^2 + 4 delta^2)) / 2 with no
/// special casing.  lambda_star = -n * e_hat_star / delta^2.
EstimateResult mem_closed_form(double y_bar, const MemConfig& cfg);

/// Minimizes the dual numerically: safeguarded Newton on dual_gradient over
/// (-n*alpha, +inf) with a bisection fallback, to
/// |gradient| <= 1e-12 * max(1, |y_bar|).  Requires alpha > 0.  Throws
/// std::runtime_error after 200 iterations without convergence (unreachable
/// for valid inputs; a failure here indicates a bug).
EstimateResult minimize_dual_numeric(double y_bar, const MemConfig& cfg);

/// Large-sample limit of the filtered estimate: the closed form with the
/// sample mean replaced by theta (the dependence on n cancels).
double asymptotic_x_tilde(double alpha, double theta, double delta);

/// Solves x_tilde(alpha) - 1/alpha = 0 on [alpha_lo, alpha_hi] by bisection
/// with a secant refinement, to |x_tilde(alpha) - 1/alpha| <= 1e-10.  The
/// solution recovers the true rate: alpha_star = 1/theta.  Throws
/// std::invalid_argument when the bracket carries no sign change.
double solve_alpha_fixed_point(double alpha_lo, double alpha_hi,
                               const std::function<double(double)>& x_tilde);

/// Residual e_hat_star as a function of alpha over an ascending grid.
/// The residual is nondecreasing in alpha, with
/// e_hat(0) = (y_bar - sqrt(y_bar^2 + 4 delta^2)) / 2 and limit y_bar.
std::vector<std::pair<double, double>> residual_vs_alpha_profile(double y_bar, double delta,
                                                                 int n,
                                                                 std::span<const double> alphas);

}  // namespace memfilter

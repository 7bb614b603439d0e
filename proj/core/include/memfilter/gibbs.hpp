#pragma once

#include <vector>

#include "memfilter/mem.hpp"
#include "memfilter/rng.hpp"

namespace memfilter {

/// Chain-length and model parameters for the Gibbs comparator.
struct GibbsConfig {
    int burn_in = 500;    ///< discarded leading steps, >= 0
    int n_draws = 2000;   ///< retained steps, >= 1
    double delta = 0.5;   ///< noise scale of the model, > 0
    int n = 3;            ///< number of observations behind y_bar, >= 1

    /// Upper truncation of the rate conditional.  Under the Jeffreys prior
    /// the joint posterior of (x, theta) is improper (its theta-marginal has
    /// a 1/theta tail), so an unrestricted chain wanders off to arbitrarily
    /// large rates; truncating theta | x to (0, theta_cap] makes the target
    /// proper while leaving any data-supported rate untouched.
    double theta_cap = 50.0;

    void validate() const;
};

/// Current chain coordinates: latent mean x > 0 and rate theta > 0.
struct GibbsState {
    double x = 1.0;
    double theta = 1.0;
};

/// Posterior sample of E(x) = 1/theta plus the summaries the harness uses.
struct PosteriorSummary {
    std::vector<double> draws_of_ex;  ///< 1/theta per retained draw
    double mean = 0.0;                ///< mean of draws_of_ex
    double sd = 0.0;                  ///< sample sd (n-1) of draws_of_ex
    double theta_mean = 0.0;          ///< mean of the retained theta draws

    /// Posterior mean of the latent x draws.  This is the per-replicate
    /// point estimate reported by the experiment harness: unlike the mean of
    /// the 1/theta draws (whose posterior expectation diverges), it has
    /// finite moments and is insensitive to theta_cap.
    double x_mean = 0.0;
};

/// One sweep of the two full conditionals:
///   x' ~ N(y_bar - theta delta^2 / n, delta^2 / n) restricted to x > 0,
///   theta' ~ Exp(rate x') restricted to (0, theta_cap].
GibbsState gibbs_step(const GibbsState& state, double y_bar, const GibbsConfig& cfg,
                      RngStream& stream);

/// Runs burn_in + n_draws sweeps from theta_0 = min(1/max(y_bar, 1e-6),
/// theta_cap) with x_0 drawn from its conditional, retaining the last
/// n_draws.  Deterministic given the stream seed.
PosteriorSummary run_chain(const SampleBatch& batch, const GibbsConfig& cfg, RngStream& stream);

}  // namespace memfilter

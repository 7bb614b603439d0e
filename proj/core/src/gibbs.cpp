#include "memfilter/gibbs.hpp"

#include <cmath>
#include <stdexcept>

#include "memfilter/simulation.hpp"

namespace memfilter {

void GibbsConfig::validate() const {
    if (burn_in < 0) {
        throw std::invalid_argument("GibbsConfig: burn_in must be >= 0");
    }
    if (n_draws < 1) {
        throw std::invalid_argument("GibbsConfig: n_draws must be >= 1");
    }
    if (!(delta > 0.0)) {
        throw std::invalid_argument("GibbsConfig: delta must be > 0");
    }
    if (n < 1) {
        throw std::invalid_argument("GibbsConfig: n must be >= 1");
    }
    if (!(theta_cap > 0.0)) {
        throw std::invalid_argument("GibbsConfig: theta_cap must be > 0");
    }
}

namespace {

// Exp(rate) restricted to (0, cap], by inverse CDF.  cap may be +inf, in
// which case this is a plain exponential draw.
double truncated_exponential(RngStream& stream, double rate, double cap) {
    const double u = stream.uniform();
    const double mass = -std::expm1(-rate * cap);  // P(Exp(rate) <= cap)
    const double draw = -std::log1p(-u * mass) / rate;
    return std::min(draw, cap);
}

}  // namespace

GibbsState gibbs_step(const GibbsState& state, double y_bar, const GibbsConfig& cfg,
                      RngStream& stream) {
    cfg.validate();
    if (!(state.x > 0.0) || !(state.theta > 0.0)) {
        throw std::invalid_argument("gibbs_step: state coordinates must be positive");
    }
    const double n = static_cast<double>(cfg.n);
    const double cond_var = cfg.delta * cfg.delta / n;
    const double cond_mean = y_bar - state.theta * cond_var;

    GibbsState next;
    next.x = stream.truncated_normal_positive(cond_mean, std::sqrt(cond_var));
    next.theta = truncated_exponential(stream, next.x, cfg.theta_cap);
    return next;
}

PosteriorSummary run_chain(const SampleBatch& batch, const GibbsConfig& cfg, RngStream& stream) {
    cfg.validate();
    if (batch.values.empty()) {
        throw std::invalid_argument("run_chain: batch must be nonempty");
    }
    const double y_bar = batch.y_bar;
    const double n = static_cast<double>(cfg.n);
    const double cond_var = cfg.delta * cfg.delta / n;

    GibbsState state;
    state.theta = std::min(1.0 / std::max(y_bar, 1e-6), cfg.theta_cap);
    state.x = stream.truncated_normal_positive(y_bar - state.theta * cond_var,
                                               std::sqrt(cond_var));

    PosteriorSummary summary;
    summary.draws_of_ex.reserve(static_cast<std::size_t>(cfg.n_draws));
    double theta_sum = 0.0;
    double x_sum = 0.0;
    const int total = cfg.burn_in + cfg.n_draws;
    for (int t = 0; t < total; ++t) {
        state = gibbs_step(state, y_bar, cfg, stream);
        if (t >= cfg.burn_in) {
            summary.draws_of_ex.push_back(1.0 / state.theta);
            theta_sum += state.theta;
            x_sum += state.x;
        }
    }
    const Summary s = summarize(summary.draws_of_ex);
    summary.mean = s.mean;
    summary.sd = s.sd;
    summary.theta_mean = theta_sum / static_cast<double>(cfg.n_draws);
    summary.x_mean = x_sum / static_cast<double>(cfg.n_draws);
    return summary;
}

}  // namespace memfilter

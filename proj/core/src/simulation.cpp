#include "memfilter/simulation.hpp"

#include <cmath>
#include <stdexcept>

namespace memfilter {

void SimConfig::validate() const {
    if (!(theta_true > 0.0)) {
        throw std::invalid_argument("SimConfig: theta_true must be > 0");
    }
    if (!(delta > 0.0)) {
        throw std::invalid_argument("SimConfig: delta must be > 0");
    }
    if (n < 1) {
        throw std::invalid_argument("SimConfig: n must be >= 1");
    }
    if (replicates < 1) {
        throw std::invalid_argument("SimConfig: replicates must be >= 1");
    }
    if (histogram_bins < 1) {
        throw std::invalid_argument("SimConfig: histogram_bins must be >= 1");
    }
    if (!(histogram_lo < histogram_hi)) {
        throw std::invalid_argument("SimConfig: histogram range must have lo < hi");
    }
    if (!(alpha_mem >= 0.0)) {
        throw std::invalid_argument("SimConfig: alpha_mem must be >= 0");
    }
}

SampleBatch simulate_batch(double theta, double delta, int n, RngStream& stream) {
    if (!(theta > 0.0) || !(delta > 0.0) || n < 1) {
        throw std::invalid_argument("simulate_batch: parameters must be positive");
    }
    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double x = stream.exponential(theta);
        double y = x + stream.normal(0.0, delta);
        while (!(y > 0.0)) {
            y = x + stream.normal(0.0, delta);
        }
        values.push_back(y);
    }
    return SampleBatch::from_values(std::move(values));
}

Summary summarize(std::span<const double> values) {
    if (values.empty()) {
        throw std::invalid_argument("summarize: values must be nonempty");
    }
    const double n = static_cast<double>(values.size());
    double sum = 0.0;
    for (double v : values) {
        sum += v;
    }
    const double mean = sum / n;
    if (values.size() == 1) {
        return {mean, 0.0};
    }
    double ss = 0.0;
    for (double v : values) {
        const double d = v - mean;
        ss += d * d;
    }
    return {mean, std::sqrt(ss / (n - 1.0))};
}

Histogram histogram(std::span<const double> values, int bins, double lo, double hi) {
    if (bins < 1) {
        throw std::invalid_argument("histogram: bins must be >= 1");
    }
    if (!(lo < hi)) {
        throw std::invalid_argument("histogram: need lo < hi");
    }
    Histogram h;
    h.bins.resize(static_cast<std::size_t>(bins));
    const double width = (hi - lo) / bins;
    for (int i = 0; i < bins; ++i) {
        h.bins[static_cast<std::size_t>(i)].lo = lo + i * width;
        h.bins[static_cast<std::size_t>(i)].hi = i + 1 == bins ? hi : lo + (i + 1) * width;
    }
    for (double v : values) {
        int idx = static_cast<int>(std::floor((v - lo) / width));
        if (v < lo) {
            idx = 0;
            ++h.clamped_below;
        } else if (idx >= bins) {
            idx = bins - 1;
            ++h.clamped_above;
        }
        ++h.bins[static_cast<std::size_t>(idx)].count;
    }
    return h;
}

namespace {

// Substream roles hanging off (master_seed, replicate).
constexpr std::uint64_t kDataSalt = 0;
constexpr std::uint64_t kChainSalt = 1;

MethodReport make_report(const std::vector<double>& estimates, const SimConfig& cfg) {
    MethodReport report;
    report.summary = summarize(estimates);
    report.count = static_cast<long>(estimates.size());
    report.histogram =
        histogram(estimates, cfg.histogram_bins, cfg.histogram_lo, cfg.histogram_hi);
    return report;
}

}  // namespace

ExperimentReport run_experiment(const SimConfig& cfg, const GibbsConfig& gibbs_cfg,
                                const MleConfig& mle_cfg, MethodSet methods) {
    cfg.validate();

    GibbsConfig chain_cfg = gibbs_cfg;
    chain_cfg.delta = cfg.delta;
    chain_cfg.n = cfg.n;
    chain_cfg.validate();

    const bool mle_auto_window = !(mle_cfg.theta_min > 0.0) || !(mle_cfg.theta_max > 0.0);

    ExperimentReport report;
    report.per_replicate.resize(static_cast<std::size_t>(cfg.replicates));
    std::vector<double> mem_values, bayes_values, ml_values;

    for (int r = 0; r < cfg.replicates; ++r) {
        RngStream data_stream =
            derive_stream(cfg.master_seed, static_cast<std::uint64_t>(r), kDataSalt);
        const SampleBatch batch = simulate_batch(cfg.theta_true, cfg.delta, cfg.n, data_stream);
        ReplicateEstimates& row = report.per_replicate[static_cast<std::size_t>(r)];

        if (methods.mem) {
            const MemConfig mem_cfg{cfg.alpha_mem, cfg.delta, cfg.n};
            row.mem = mem_closed_form(batch.y_bar, mem_cfg).x_hat_star;
            mem_values.push_back(*row.mem);
        }
        if (methods.bayes) {
            RngStream chain_stream =
                derive_stream(cfg.master_seed, static_cast<std::uint64_t>(r), kChainSalt);
            row.bayes = run_chain(batch, chain_cfg, chain_stream).x_mean;
            bayes_values.push_back(*row.bayes);
        }
        if (methods.ml) {
            MleConfig replicate_cfg = mle_cfg;
            replicate_cfg.delta = cfg.delta;
            if (mle_auto_window) {
                replicate_cfg = MleConfig::scaled_to(batch.y_bar, cfg.delta, mle_cfg.tol);
            }
            const MlEstimate ml = ml_estimate(batch, replicate_cfg);
            row.ml = ml.mean_estimate;
            row.ml_boundary = ml.at_upper_boundary;
            if (ml.at_upper_boundary) {
                ++report.ml_boundary_count;
            }
            ml_values.push_back(*row.ml);
        }
    }

    if (methods.mem) {
        report.mem = make_report(mem_values, cfg);
    }
    if (methods.bayes) {
        report.bayes = make_report(bayes_values, cfg);
    }
    if (methods.ml) {
        report.ml = make_report(ml_values, cfg);
    }
    return report;
}

}  // namespace memfilter

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "memfilter/gibbs.hpp"
#include "memfilter/mem.hpp"
#include "memfilter/mle.hpp"
#include "memfilter/rng.hpp"

namespace memfilter {

/// Which estimators an experiment runs.
struct MethodSet {
    bool mem = true;
    bool bayes = true;
    bool ml = true;

    static MethodSet all() { return {}; }
};

/// Monte Carlo experiment configuration.
struct SimConfig {
    double theta_true = 1.0;        ///< rate of the simulated exponential
    double delta = 0.5;             ///< noise standard deviation
    int n = 3;                      ///< observations per replicate
    int replicates = 1000;          ///< number of simulated data sets
    std::uint64_t master_seed = 1;  ///< root of all replicate streams
    double alpha_mem = 0.0;         ///< prior rate guess for the entropic estimate
    int histogram_bins = 30;
    double histogram_lo = 0.0;
    double histogram_hi = 5.0;

    void validate() const;
};

struct Summary {
    double mean = 0.0;
    double sd = 0.0;
};

struct HistogramBin {
    double lo = 0.0;
    double hi = 0.0;
    long count = 0;
};

/// Equal-width histogram with clamping at both ends; clamped values land in
/// the first/last bin and are also counted separately.
struct Histogram {
    std::vector<HistogramBin> bins;
    long clamped_below = 0;
    long clamped_above = 0;
};

/// Per-replicate estimates; a method that did not run holds no value.
struct ReplicateEstimates {
    std::optional<double> mem;
    std::optional<double> bayes;
    std::optional<double> ml;
    bool ml_boundary = false;
};

struct MethodReport {
    Summary summary;
    long count = 0;
    Histogram histogram;
};

struct ExperimentReport {
    std::vector<ReplicateEstimates> per_replicate;
    std::optional<MethodReport> mem;
    std::optional<MethodReport> bayes;
    std::optional<MethodReport> ml;
    long ml_boundary_count = 0;
};

/// Simulates one batch: per observation draw x ~ Exp(theta) and
/// e ~ N(0, delta^2), keep y = x + e when positive, otherwise redraw the
/// noise against the same signal value until y > 0.
SampleBatch simulate_batch(double theta, double delta, int n, RngStream& stream);

/// Arithmetic mean and sample standard deviation (n-1 divisor; a single
/// value has sd 0).  Throws std::invalid_argument on empty input.
Summary summarize(std::span<const double> values);

/// Equal-width bins over [lo, hi); values below lo clamp into the first bin,
/// values >= hi into the last, so counts always sum to the input length.
Histogram histogram(std::span<const double> values, int bins, double lo, double hi);

/// Runs the full comparison: per replicate r, derive independent substreams
/// from (master_seed, r) for the data and for the chain, simulate a batch,
/// then compute the requested estimates.  Replicate r's results do not
/// depend on how many other replicates run, and the whole report is a pure
/// function of the configuration.
///
/// Non-positive theta_min/theta_max in mle_cfg select the scale-adapted
/// window [1e-3, 1e3]/y_bar per replicate; gibbs_cfg.delta and gibbs_cfg.n
/// are taken from cfg so the chain always matches the simulated model.
ExperimentReport run_experiment(const SimConfig& cfg, const GibbsConfig& gibbs_cfg,
                                const MleConfig& mle_cfg, MethodSet methods = MethodSet::all());

}  // namespace memfilter

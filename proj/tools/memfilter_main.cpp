// memfilter: estimate exponential means from noise-corrupted measurements
// and reproduce the entropic / Bayes / maximum-likelihood comparison.

#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "memfilter/gibbs.hpp"
#include "memfilter/mem.hpp"
#include "memfilter/mle.hpp"
#include "memfilter/simulation.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitNumeric = 1;

// 17 significant digits: enough for exact double round-trips.
std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

struct EstimateArgs {
    std::vector<double> y;
    double y_bar = std::numeric_limits<double>::quiet_NaN();
    double alpha = 0.0;
    double delta = 0.5;
    int n = 3;
};

struct ExperimentArgs {
    memfilter::SimConfig sim;
    memfilter::GibbsConfig gibbs;
    double theta_min = 0.0;  // <= 0 selects the scale-adapted window
    double theta_max = 0.0;
    std::string method = "all";
    std::string out_dir = ".";
};

struct ProfileArgs {
    double y_bar = 1.0;
    double delta = 0.5;
    int n = 3;
    std::vector<double> alphas;
    double alpha_min = 1e-3;
    double alpha_max = 1e3;
    int points = 50;
    std::string out_file;
};

int run_estimate(const EstimateArgs& args) {
    double y_bar = args.y_bar;
    if (!args.y.empty()) {
        y_bar = memfilter::SampleBatch::from_values(args.y).y_bar;
    } else if (!std::isfinite(y_bar)) {
        throw CLI::ValidationError("estimate", "provide --ybar or --y");
    }
    const memfilter::MemConfig cfg{args.alpha, args.delta, args.n};
    const memfilter::EstimateResult res = memfilter::mem_closed_form(y_bar, cfg);
    json out{{"y_bar", y_bar},
             {"alpha", args.alpha},
             {"delta", args.delta},
             {"n", args.n},
             {"lambda_star", res.lambda_star},
             {"x_hat_star", res.x_hat_star},
             {"e_hat_star", res.e_hat_star}};
    std::cout << out.dump(2) << "\n";
    return 0;
}

void write_estimates_csv(const fs::path& path, const memfilter::ExperimentReport& report,
                         const memfilter::MethodSet& methods) {
    std::ofstream os(path);
    if (!os) {
        throw std::runtime_error("cannot write " + path.string());
    }
    os << "replicate,mem,bayes,ml,ml_boundary\n";
    for (std::size_t r = 0; r < report.per_replicate.size(); ++r) {
        const auto& row = report.per_replicate[r];
        os << r << ',';
        if (row.mem) os << fmt17(*row.mem);
        os << ',';
        if (row.bayes) os << fmt17(*row.bayes);
        os << ',';
        if (row.ml) os << fmt17(*row.ml);
        os << ',';
        if (methods.ml) os << (row.ml_boundary ? 1 : 0);
        os << '\n';
    }
}

void write_histogram_csv(const fs::path& path, const memfilter::Histogram& hist) {
    std::ofstream os(path);
    if (!os) {
        throw std::runtime_error("cannot write " + path.string());
    }
    os << "bin_lo,bin_hi,count\n";
    for (const auto& bin : hist.bins) {
        os << fmt17(bin.lo) << ',' << fmt17(bin.hi) << ',' << bin.count << '\n';
    }
}

json method_json(const memfilter::MethodReport& report) {
    return json{{"mean", report.summary.mean},
                {"sd", report.summary.sd},
                {"count", report.count},
                {"clamped_below", report.histogram.clamped_below},
                {"clamped_above", report.histogram.clamped_above}};
}

int run_experiment_cmd(const ExperimentArgs& args) {
    memfilter::MethodSet methods;
    if (args.method == "all") {
        methods = memfilter::MethodSet::all();
    } else if (args.method == "mem") {
        methods = {true, false, false};
    } else if (args.method == "bayes") {
        methods = {false, true, false};
    } else if (args.method == "ml") {
        methods = {false, false, true};
    } else {
        throw CLI::ValidationError("--method", "must be one of mem, bayes, ml, all");
    }

    const fs::path out_dir(args.out_dir);
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    {   // Fail before computing anything if the directory is unusable.
        std::ofstream probe(out_dir / "estimates.csv");
        if (!probe) {
            throw CLI::ValidationError("--out", "directory is not writable: " + args.out_dir);
        }
    }

    memfilter::MleConfig mle_cfg;
    mle_cfg.theta_min = args.theta_min;
    mle_cfg.theta_max = args.theta_max;
    mle_cfg.delta = args.sim.delta;

    const memfilter::ExperimentReport report =
        memfilter::run_experiment(args.sim, args.gibbs, mle_cfg, methods);

    write_estimates_csv(out_dir / "estimates.csv", report, methods);
    json summary{{"config",
                  {{"theta", args.sim.theta_true},
                   {"delta", args.sim.delta},
                   {"n", args.sim.n},
                   {"replicates", args.sim.replicates},
                   {"seed", args.sim.master_seed},
                   {"alpha", args.sim.alpha_mem},
                   {"burn_in", args.gibbs.burn_in},
                   {"draws", args.gibbs.n_draws},
                   {"theta_cap", args.gibbs.theta_cap},
                   {"bins", args.sim.histogram_bins},
                   {"range_lo", args.sim.histogram_lo},
                   {"range_hi", args.sim.histogram_hi},
                   {"method", args.method}}},
                 {"methods", json::object()}};
    std::printf("%-8s %12s %12s %8s %10s\n", "method", "mean", "sd", "count", "boundary");
    const auto emit = [&](const char* name, const std::optional<memfilter::MethodReport>& rep,
                          const memfilter::Histogram* hist, long boundary, bool has_boundary) {
        if (!rep) {
            return;
        }
        json entry = method_json(*rep);
        if (has_boundary) {
            entry["boundary_count"] = boundary;
        }
        summary["methods"][name] = entry;
        write_histogram_csv(out_dir / (std::string("hist_") + name + ".csv"), *hist);
        std::printf("%-8s %12.6f %12.6f %8ld %10s\n", name, rep->summary.mean, rep->summary.sd,
                    rep->count, has_boundary ? std::to_string(boundary).c_str() : "-");
    };
    emit("mem", report.mem, report.mem ? &report.mem->histogram : nullptr, 0, false);
    emit("bayes", report.bayes, report.bayes ? &report.bayes->histogram : nullptr, 0, false);
    emit("ml", report.ml, report.ml ? &report.ml->histogram : nullptr, report.ml_boundary_count,
         true);

    std::ofstream os(out_dir / "summary.json");
    if (!os) {
        throw std::runtime_error("cannot write summary.json");
    }
    os << summary.dump(2) << '\n';
    return 0;
}

int run_profile(const ProfileArgs& args) {
    std::vector<double> alphas = args.alphas;
    if (alphas.empty()) {
        if (args.points < 2 || !(args.alpha_min > 0.0) || !(args.alpha_min < args.alpha_max)) {
            throw CLI::ValidationError("profile", "need 0 < alpha-min < alpha-max, points >= 2");
        }
        const double step =
            std::log(args.alpha_max / args.alpha_min) / static_cast<double>(args.points - 1);
        for (int i = 0; i < args.points; ++i) {
            alphas.push_back(args.alpha_min * std::exp(step * i));
        }
    }
    std::ostream* os = &std::cout;
    std::ofstream file;
    if (!args.out_file.empty()) {
        file.open(args.out_file);
        if (!file) {
            throw CLI::ValidationError("--out", "cannot write " + args.out_file);
        }
        os = &file;
    }
    *os << "alpha,x_hat,e_hat\n";
    for (double alpha : alphas) {
        const memfilter::MemConfig cfg{alpha, args.delta, args.n};
        const memfilter::EstimateResult res = memfilter::mem_closed_form(args.y_bar, cfg);
        *os << fmt17(alpha) << ',' << fmt17(res.x_hat_star) << ',' << fmt17(res.e_hat_star)
            << '\n';
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Entropic filtering of additive Gaussian noise on exponential data"};
    app.require_subcommand(1);

    EstimateArgs est;
    CLI::App* estimate = app.add_subcommand("estimate", "One-shot entropic estimate from y or ybar");
    estimate->add_option("--y", est.y, "Observations y_1..y_n (comma separated)")->delimiter(',');
    estimate->add_option("--ybar", est.y_bar, "Sample mean (alternative to --y)");
    estimate->add_option("--alpha", est.alpha, "Prior rate guess (0 = residual-minimizing)");
    estimate->add_option("--delta", est.delta, "Noise standard deviation");
    estimate->add_option("--n", est.n, "Sample size behind ybar");

    ExperimentArgs exp;
    CLI::App* experiment =
        app.add_subcommand("experiment", "Monte Carlo comparison of mem/bayes/ml estimators");
    experiment->add_option("--theta", exp.sim.theta_true, "True exponential rate");
    experiment->add_option("--delta", exp.sim.delta, "Noise standard deviation");
    experiment->add_option("--n", exp.sim.n, "Observations per replicate");
    experiment->add_option("--replicates", exp.sim.replicates, "Number of replicates");
    experiment->add_option("--seed", exp.sim.master_seed, "Master seed");
    experiment->add_option("--alpha", exp.sim.alpha_mem, "Prior rate guess for the entropic estimate");
    experiment->add_option("--method", exp.method, "mem, bayes, ml, or all")
        ->check(CLI::IsMember({"mem", "bayes", "ml", "all"}));
    experiment->add_option("--burn-in", exp.gibbs.burn_in, "Gibbs burn-in steps");
    experiment->add_option("--draws", exp.gibbs.n_draws, "Gibbs retained draws");
    experiment->add_option("--theta-cap", exp.gibbs.theta_cap, "Upper truncation of the rate conditional");
    experiment->add_option("--theta-min", exp.theta_min, "ML search lower bound (<=0: auto)");
    experiment->add_option("--theta-max", exp.theta_max, "ML search upper bound (<=0: auto)");
    experiment->add_option("--bins", exp.sim.histogram_bins, "Histogram bins");
    experiment->add_option("--range-lo", exp.sim.histogram_lo, "Histogram lower edge");
    experiment->add_option("--range-hi", exp.sim.histogram_hi, "Histogram upper edge");
    experiment->add_option("--out", exp.out_dir, "Output directory");

    ProfileArgs prof;
    CLI::App* profile =
        app.add_subcommand("profile", "x_hat and e_hat across a grid of alpha values");
    profile->add_option("--ybar", prof.y_bar, "Sample mean");
    profile->add_option("--delta", prof.delta, "Noise standard deviation");
    profile->add_option("--n", prof.n, "Sample size behind ybar");
    profile->add_option("--alphas", prof.alphas, "Explicit alpha grid (comma separated)")
        ->delimiter(',');
    profile->add_option("--alpha-min", prof.alpha_min, "Log-grid lower endpoint");
    profile->add_option("--alpha-max", prof.alpha_max, "Log-grid upper endpoint");
    profile->add_option("--points", prof.points, "Log-grid size");
    profile->add_option("--out", prof.out_file, "Write CSV here instead of stdout");

    try {
        app.parse(argc, argv);
        if (estimate->parsed()) {
            return run_estimate(est);
        }
        if (experiment->parsed()) {
            return run_experiment_cmd(exp);
        }
        if (profile->parsed()) {
            return run_profile(prof);
        }
        return kExitUsage;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);  // help text, exit 0
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitNumeric;
    }
}

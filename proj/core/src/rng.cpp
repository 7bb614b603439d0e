#include "memfilter/rng.hpp"

#include <cmath>
#include <stdexcept>

#include "memfilter/special_functions.hpp"

namespace memfilter {

namespace {

// splitmix64 finalizer; used only to hash (seed, index, salt) into
// well-separated substream seeds.
std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Boundary between parent rejection and the tail proposal: the standardized
// lower bound a at which the parent acceptance Phi(-a) drops to 0.1.
constexpr double kTailThreshold = 1.2815515655446004;  // Phi^-1(0.9)

}  // namespace

RngStream::RngStream(std::uint64_t seed) : seed_(seed), engine_(seed) {}

double RngStream::uniform() {
    // Top 53 bits, shifted to the open interval (0, 1).
    const std::uint64_t bits = engine_() >> 11;
    return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
}

double RngStream::exponential(double rate) {
    if (!(rate > 0.0)) {
        throw std::invalid_argument("exponential: rate must be > 0");
    }
    return -std::log(uniform()) / rate;
}

double RngStream::normal(double mean, double sd) {
    if (!(sd >= 0.0)) {
        throw std::invalid_argument("normal: sd must be >= 0");
    }
    if (sd == 0.0) {
        return mean;
    }
    return mean + sd * std_normal_quantile(uniform());
}

double RngStream::truncated_normal_positive(double mean, double sd) {
    if (!(sd > 0.0)) {
        throw std::invalid_argument("truncated_normal_positive: sd must be > 0");
    }
    const double a = -mean / sd;  // standardized lower bound
    if (a <= kTailThreshold) {
        for (;;) {
            const double z = std_normal_quantile(uniform());
            if (z > a) {
                const double x = mean + sd * z;
                if (x > 0.0) {
                    return x;
                }
            }
        }
    }
    // Robert's one-sided tail sampler: shifted exponential proposal with the
    // optimal rate, accepted against the Gaussian.  The draw is formed as
    // sd * (z - a), the exact excess over the zero bound, which avoids the
    // cancellation in mean + sd*z when the bound sits far in the tail.
    const double prop_rate = 0.5 * (a + std::sqrt(a * a + 4.0));
    for (;;) {
        const double excess = -std::log(uniform()) / prop_rate;
        const double z = a + excess;
        const double u = uniform();
        if (u <= std::exp(-0.5 * (z - prop_rate) * (z - prop_rate))) {
            const double x = sd * excess;
            if (x > 0.0) {
                return x;
            }
        }
    }
}

std::uint64_t derive_substream_seed(std::uint64_t master_seed, std::uint64_t index,
                                    std::uint64_t salt) {
    return mix64(mix64(mix64(master_seed) ^ index) ^ salt);
}

RngStream derive_stream(std::uint64_t master_seed, std::uint64_t index, std::uint64_t salt) {
    return RngStream(derive_substream_seed(master_seed, index, salt));
}

}  // namespace memfilter

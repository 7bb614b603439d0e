#pragma once

#include <cstdint>
#include <random>

namespace memfilter {

/// Deterministic, seedable random stream.
///
/// All draws reduce to 53-bit uniforms from a std::mt19937_64 engine, whose
/// single-seed construction and output sequence are fixed by the standard, so
/// equal seeds give bit-identical sequences on every platform.  Gaussian
/// variates use the inverse-CDF method (Wichura's AS 241 quantile), one
/// uniform per draw.
///
/// A stream is single-owner: movable, not copyable.
class RngStream {
  public:
    explicit RngStream(std::uint64_t seed);

    RngStream(RngStream&&) noexcept = default;
    RngStream& operator=(RngStream&&) noexcept = default;
    RngStream(const RngStream&) = delete;
    RngStream& operator=(const RngStream&) = delete;

    std::uint64_t seed() const noexcept { return seed_; }

    /// Uniform draw strictly inside (0, 1).
    double uniform();

    /// Exp(rate) via inverse CDF: -ln(U)/rate.  Mean 1/rate.
    /// Throws std::invalid_argument unless rate > 0.
    double exponential(double rate);

    /// N(mean, sd^2).  sd == 0 returns mean exactly.
    /// Throws std::invalid_argument if sd < 0.
    double normal(double mean, double sd);

    /// N(mean, sd^2) conditioned on the draw being > 0.
    ///
    /// Rejection from the parent Gaussian while the acceptance probability
    /// Phi(mean/sd) stays above 0.1; past that, a one-sided shifted
    /// exponential proposal (Robert's tail sampler), so the draw terminates
    /// for arbitrarily negative mean.  Throws std::invalid_argument unless
    /// sd > 0.
    double truncated_normal_positive(double mean, double sd);

  private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

/// Substream derivation by hash splitting: (master_seed, index, salt) is
/// mixed into a fresh seed, so any subset of substreams can be created in
/// any order without affecting the others.
RngStream derive_stream(std::uint64_t master_seed, std::uint64_t index, std::uint64_t salt = 0);

/// The raw mixed seed behind derive_stream, exposed for diagnostics.
std::uint64_t derive_substream_seed(std::uint64_t master_seed, std::uint64_t index,
                                    std::uint64_t salt = 0);

}  // namespace memfilter

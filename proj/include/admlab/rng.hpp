#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace admlab {

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11).
///
/// A stream is identified by (seed, stream_index): the seed is the 64-bit key,
/// the stream index occupies the upper half of the 128-bit counter and the
/// lower half counts blocks. Streams therefore need no jumping and are
/// reproducible bit-for-bit on every platform.
class Philox4x32 {
public:
    using result_type = std::uint64_t;
    using Block = std::array<std::uint32_t, 4>;

    Philox4x32(std::uint64_t seed, std::uint64_t stream_index) noexcept;

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept;

    /// Raw block function; exposed for known-answer tests.
    static Block encrypt(Block counter, std::array<std::uint32_t, 2> key) noexcept;

private:
    void refill() noexcept;

    std::array<std::uint32_t, 2> key_;
    std::uint64_t stream_;
    std::uint64_t block_ = 0;
    Block buffer_{};
    int used_ = 4;  // 32-bit words consumed from buffer_
};

/// Uniform double in [0,1) built from the top 53 bits.
double uniform01(Philox4x32& gen) noexcept;

/// Uniform double in (0,1), never exactly zero.
double uniform_open01(Philox4x32& gen) noexcept;

/// 1 with probability p.
int bernoulli_draw(Philox4x32& gen, double p) noexcept;

/// Standard normal via Box-Muller with a cached second variate. The transform
/// is spelled out here so draws do not depend on the standard library's
/// distribution implementation.
class StandardNormal {
public:
    double operator()(Philox4x32& gen) noexcept;

private:
    double cached_ = 0.0;
    bool has_cached_ = false;
};

/// CDF of Beta(2,5): 1 - (1-x)^5 (1 + 5x).
double beta25_cdf(double x) noexcept;
/// Inverse of beta25_cdf by safeguarded Newton iteration.
double beta25_quantile(double u) noexcept;

}  // namespace admlab

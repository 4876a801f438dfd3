#pragma once

#include <cstdint>

namespace anc {

/// splitmix64 finalizer. Doubles as the project-wide 64-bit hash mixer.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Deterministic random stream: xoshiro256** 1.0 seeded through splitmix64,
/// Gaussian variates by the polar (Marsaglia) method. No standard-library
/// distributions are involved, so a seed produces the same stream on every
/// platform and in every release. kStreamName is bumped if the stream ever
/// has to change.
class Rng {
public:
    static constexpr const char* kStreamName = "xoshiro256ss-polar-v1";

    explicit Rng(std::uint64_t seed) noexcept;

    std::uint64_t next_u64() noexcept;

    /// Uniform on [0, 1), 53-bit resolution.
    double next_unit() noexcept;

    /// Uniform on [lo, hi).
    double next_uniform(double lo, double hi) noexcept;

    /// Standard normal.
    double next_gaussian() noexcept;

private:
    std::uint64_t state_[4];
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace anc

#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "anc/errors.hpp"

namespace anc {

/// Mono sample buffer. Samples are nominally in [-1, 1]; the range is only
/// enforced at the 16-bit file boundary, everything in between is double.
struct Signal {
    std::vector<double> samples;
    std::uint32_t sample_rate = 8000;

    std::size_t size() const noexcept { return samples.size(); }
    bool empty() const noexcept { return samples.empty(); }
    double duration_s() const noexcept {
        return sample_rate ? static_cast<double>(samples.size()) / sample_rate : 0.0;
    }
};

enum class NoiseKind { white_gaussian, uniform_random };

std::string_view to_string(NoiseKind kind) noexcept;
NoiseKind noise_kind_from_string(std::string_view name); // throws config_error

/// Seeded noise source. `level` is the generation parameter of the kind:
/// standard deviation for white_gaussian, amplitude for uniform_random
/// (samples in [-level, level]). The seed fully determines the stream.
struct NoiseSpec {
    NoiseKind kind = NoiseKind::white_gaussian;
    double level = 0.4;
    std::uint64_t seed = 0;

    /// 0.4 (sigma) for white_gaussian, 0.75 (amplitude) for uniform_random.
    static double default_level(NoiseKind kind) noexcept;

    /// Default corruption SNR when a run does not set one explicitly:
    /// +5 dB for white_gaussian, -2 dB for uniform_random. The random kind
    /// enters hotter, mirroring how uncalibrated uniform noise is typically
    /// injected in practice.
    static double default_corruption_snr_db(NoiseKind kind) noexcept;

    static NoiseSpec defaults_for(NoiseKind kind, std::uint64_t seed = 0) noexcept;
};

/// FIR model of the physical path the noise takes into the primary input.
/// The reference microphone hears the source directly; the primary hears it
/// through this channel.
struct ChannelSpec {
    std::vector<double> taps{1.0};

    static ChannelSpec identity();

    /// Mild 3-tap lowpass, for harder denoising runs.
    static ChannelSpec lowpass3();

    /// 16-tap simulated room path: two samples of propagation delay, energy
    /// building to tap 9 and decaying after, unit norm. Filters shorter than
    /// the path leave its tail unmodelled, so the benchmark's order sweep has
    /// something real to measure. Default path of the sweep harness.
    static ChannelSpec standard_path();

    void validate() const; // non-empty, finite taps
};

/// i.i.d. noise stream, deterministic per (kind, level, seed).
Signal gen_noise(const NoiseSpec& spec, std::size_t length, std::uint32_t sample_rate);

struct MixResult {
    Signal corrupted;    // clean + scaled noise
    Signal scaled_noise; // the exact realization that was added
};

/// Scales `noise` so that 10*log10(P_clean / P_noise) == target_snr_db and
/// adds it to `clean`. +infinity is the no-noise sentinel: the corrupted
/// signal equals the clean one and the scaled noise is all zeros.
MixResult mix_at_snr(const Signal& clean, const Signal& noise, double target_snr_db);

/// Linear convolution with the channel taps, truncated to the input length,
/// zero initial state.
Signal apply_channel(const Signal& noise, const ChannelSpec& channel);

/// Deterministic speech-like fixture: harmonic voiced segments with amplitude
/// modulation, unvoiced noise bursts and silence gaps, peak-normalized to 0.9.
/// Stands in for a recorded utterance.
Signal synth_speech(double duration_s, std::uint32_t sample_rate, std::uint64_t seed);

/// Mean squared sample value.
double power(const Signal& s) noexcept;

} // namespace anc

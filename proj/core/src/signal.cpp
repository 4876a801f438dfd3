#include "anc/signal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "anc/rng.hpp"

namespace anc {

std::string_view to_string(NoiseKind kind) noexcept {
    return kind == NoiseKind::white_gaussian ? "white" : "random";
}

NoiseKind noise_kind_from_string(std::string_view name) {
    if (name == "white" || name == "white_gaussian" || name == "gaussian") {
        return NoiseKind::white_gaussian;
    }
    if (name == "random" || name == "uniform" || name == "uniform_random") {
        return NoiseKind::uniform_random;
    }
    throw config_error("unknown noise kind '" + std::string(name) +
                       "' (expected 'white' or 'random')");
}

double NoiseSpec::default_level(NoiseKind kind) noexcept {
    return kind == NoiseKind::white_gaussian ? 0.4 : 0.75;
}

double NoiseSpec::default_corruption_snr_db(NoiseKind kind) noexcept {
    return kind == NoiseKind::white_gaussian ? 5.0 : -2.0;
}

NoiseSpec NoiseSpec::defaults_for(NoiseKind kind, std::uint64_t seed) noexcept {
    return NoiseSpec{kind, default_level(kind), seed};
}

ChannelSpec ChannelSpec::identity() { return ChannelSpec{{1.0}}; }

ChannelSpec ChannelSpec::lowpass3() { return ChannelSpec{{0.6, 0.3, 0.1}}; }

ChannelSpec ChannelSpec::standard_path() {
    // unit-norm; tail energy beyond tap k: 0.92 (k=5), 0.29 (k=10), 0.011 (k=15)
    return ChannelSpec{{0.0, 0.0,
                        0.100302, 0.162941, 0.216418, 0.264698, 0.309448,
                        0.351572, 0.391631, 0.430003, 0.339702, 0.268365,
                        0.212008, 0.167487, 0.132314, 0.104528}};
}

void ChannelSpec::validate() const {
    if (taps.empty()) {
        throw config_error("channel impulse response must not be empty");
    }
    for (double t : taps) {
        if (!std::isfinite(t)) {
            throw config_error("channel impulse response has a non-finite tap");
        }
    }
}

Signal gen_noise(const NoiseSpec& spec, std::size_t length, std::uint32_t sample_rate) {
    if (!std::isfinite(spec.level)) {
        throw config_error("noise level must be finite");
    }
    Signal out;
    out.sample_rate = sample_rate;
    out.samples.resize(length);
    Rng rng(spec.seed);
    if (spec.kind == NoiseKind::white_gaussian) {
        for (double& s : out.samples) {
            s = spec.level * rng.next_gaussian();
        }
    } else {
        for (double& s : out.samples) {
            s = rng.next_uniform(-spec.level, spec.level);
        }
    }
    return out;
}

double power(const Signal& s) noexcept {
    if (s.samples.empty()) {
        return 0.0;
    }
    double acc = 0.0;
    for (double v : s.samples) {
        acc += v * v;
    }
    return acc / static_cast<double>(s.samples.size());
}

MixResult mix_at_snr(const Signal& clean, const Signal& noise, double target_snr_db) {
    if (clean.size() != noise.size()) {
        throw config_error("mix_at_snr: clean and noise lengths differ");
    }
    if (clean.sample_rate != noise.sample_rate) {
        throw config_error("mix_at_snr: clean and noise sample rates differ");
    }
    MixResult result;
    result.corrupted = clean;
    result.scaled_noise.sample_rate = clean.sample_rate;
    result.scaled_noise.samples.assign(clean.size(), 0.0);

    if (std::isinf(target_snr_db) && target_snr_db > 0) {
        return result; // no-noise passthrough
    }
    if (!std::isfinite(target_snr_db)) {
        throw config_error("mix_at_snr: target SNR must be finite or +inf");
    }
    const double p_clean = power(clean);
    if (p_clean <= 0.0) {
        throw config_error("mix_at_snr: clean signal has zero power");
    }
    const double p_noise = power(noise);
    if (p_noise <= 0.0) {
        throw config_error("mix_at_snr: noise signal has zero power");
    }
    const double scale = std::sqrt(p_clean / (p_noise * std::pow(10.0, target_snr_db / 10.0)));
    for (std::size_t i = 0; i < clean.size(); ++i) {
        result.scaled_noise.samples[i] = scale * noise.samples[i];
        result.corrupted.samples[i] += result.scaled_noise.samples[i];
    }
    return result;
}

Signal apply_channel(const Signal& noise, const ChannelSpec& channel) {
    channel.validate();
    Signal out;
    out.sample_rate = noise.sample_rate;
    out.samples.assign(noise.size(), 0.0);
    const std::size_t taps = channel.taps.size();
    for (std::size_t i = 0; i < noise.size(); ++i) {
        double acc = 0.0;
        const std::size_t kmax = std::min(taps - 1, i);
        for (std::size_t k = 0; k <= kmax; ++k) {
            acc += channel.taps[k] * noise.samples[i - k];
        }
        out.samples[i] = acc;
    }
    return out;
}

Signal synth_speech(double duration_s, std::uint32_t sample_rate, std::uint64_t seed) {
    if (!(duration_s > 0.0)) {
        throw config_error("synth_speech: duration must be positive");
    }
    if (sample_rate == 0) {
        throw config_error("synth_speech: sample rate must be positive");
    }
    const auto total = static_cast<std::size_t>(std::llround(duration_s * sample_rate));
    Signal out;
    out.sample_rate = sample_rate;
    out.samples.assign(total, 0.0);

    Rng rng(mix64(seed) ^ 0x5eec5u);
    const double two_pi = 2.0 * 3.14159265358979323846;
    std::size_t pos = 0;
    bool first = true;
    while (pos < total) {
        const auto seg_len = std::min<std::size_t>(
            total - pos,
            std::max<std::size_t>(
                1, static_cast<std::size_t>(rng.next_uniform(0.12, 0.28) * sample_rate)));
        const double what = rng.next_unit();
        if (first || what < 0.55) {
            // voiced: 3-5 harmonics of a per-segment f0, slow AM, edge ramps
            const double f0 = rng.next_uniform(95.0, 220.0);
            const int harmonics = 3 + static_cast<int>(rng.next_uniform(0.0, 3.0));
            double amp[5];
            double phase[5];
            for (int k = 0; k < harmonics; ++k) {
                amp[k] = rng.next_uniform(0.4, 1.0) / (k + 1);
                phase[k] = rng.next_uniform(0.0, two_pi);
            }
            const double am_rate = rng.next_uniform(2.5, 7.5);
            const double am_phase = rng.next_uniform(0.0, two_pi);
            const double edge = 0.015 * sample_rate;
            for (std::size_t i = 0; i < seg_len; ++i) {
                const double t = static_cast<double>(i) / sample_rate;
                double v = 0.0;
                for (int k = 0; k < harmonics; ++k) {
                    v += amp[k] * std::sin(two_pi * f0 * (k + 1) * t + phase[k]);
                }
                const double am = 0.55 + 0.45 * std::sin(two_pi * am_rate * t + am_phase);
                const double rise = std::min(1.0, static_cast<double>(i) / edge);
                const double fall = std::min(1.0, static_cast<double>(seg_len - i) / edge);
                out.samples[pos + i] = v * am * rise * fall;
            }
        } else if (what < 0.80) {
            // unvoiced: low-level noise burst
            const double edge = 0.01 * sample_rate;
            for (std::size_t i = 0; i < seg_len; ++i) {
                const double rise = std::min(1.0, static_cast<double>(i) / edge);
                const double fall = std::min(1.0, static_cast<double>(seg_len - i) / edge);
                out.samples[pos + i] = 0.08 * rng.next_gaussian() * rise * fall;
            }
        }
        // else: silence gap, samples stay zero
        pos += seg_len;
        first = false;
    }

    double peak = 0.0;
    for (double v : out.samples) {
        peak = std::max(peak, std::abs(v));
    }
    if (peak > 0.0) {
        const double gain = 0.9 / peak;
        for (double& v : out.samples) {
            v *= gain;
        }
    }
    return out;
}

} // namespace anc

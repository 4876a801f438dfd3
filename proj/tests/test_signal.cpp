#include <doctest.h>

#include <cmath>

#include "anc/rng.hpp"
#include "anc/signal.hpp"

using namespace anc;

TEST_CASE("rng streams are deterministic per seed") {
    Rng a(42);
    Rng b(42);
    Rng c(43);
    bool all_equal = true;
    bool any_differs = false;
    for (int i = 0; i < 1000; ++i) {
        const double va = a.next_gaussian();
        all_equal = all_equal && va == b.next_gaussian();
        any_differs = any_differs || va != c.next_gaussian();
    }
    CHECK(all_equal);
    CHECK(any_differs);
}

TEST_CASE("gen_noise") {
    SUBCASE("zero length") {
        const Signal s = gen_noise(NoiseSpec{}, 0, 8000);
        CHECK(s.empty());
        CHECK(s.sample_rate == 8000);
    }
    SUBCASE("same seed, same stream") {
        const NoiseSpec spec{NoiseKind::uniform_random, 0.75, 99};
        const Signal a = gen_noise(spec, 4096, 8000);
        const Signal b = gen_noise(spec, 4096, 8000);
        CHECK(a.samples == b.samples);
    }
    SUBCASE("gaussian moments at a million samples") {
        const double sigma = 0.4;
        const std::size_t len = 1000000;
        const Signal s = gen_noise(NoiseSpec{NoiseKind::white_gaussian, sigma, 7}, len, 8000);
        double mean = 0.0;
        for (double v : s.samples) {
            mean += v;
        }
        mean /= static_cast<double>(len);
        CHECK(std::abs(mean) < 4.0 * sigma / std::sqrt(static_cast<double>(len)));
        double var = 0.0;
        for (double v : s.samples) {
            var += (v - mean) * (v - mean);
        }
        var /= static_cast<double>(len);
        CHECK(var == doctest::Approx(sigma * sigma).epsilon(0.02));
    }
    SUBCASE("uniform samples never exceed the amplitude") {
        const double amp = 0.75;
        const Signal s =
            gen_noise(NoiseSpec{NoiseKind::uniform_random, amp, 13}, 100000, 8000);
        double peak = 0.0;
        double var = 0.0;
        for (double v : s.samples) {
            peak = std::max(peak, std::abs(v));
            var += v * v;
        }
        CHECK(peak <= amp);
        CHECK(var / static_cast<double>(s.size()) ==
              doctest::Approx(amp * amp / 3.0).epsilon(0.05));
    }
}

TEST_CASE("mix_at_snr") {
    Signal clean;
    clean.sample_rate = 8000;
    clean.samples.assign(1000, 0.2); // power 0.04 exactly

    SUBCASE("0 dB means equal powers") {
        const Signal noise = gen_noise(NoiseSpec{NoiseKind::white_gaussian, 1.0, 3}, 1000, 8000);
        const MixResult mix = mix_at_snr(clean, noise, 0.0);
        CHECK(power(mix.scaled_noise) == doctest::Approx(power(clean)).epsilon(1e-9));
    }
    SUBCASE("+inf is the no-noise passthrough") {
        const Signal noise = gen_noise(NoiseSpec{}, 1000, 8000);
        const MixResult mix =
            mix_at_snr(clean, noise, std::numeric_limits<double>::infinity());
        CHECK(mix.corrupted.samples == clean.samples);
        for (double v : mix.scaled_noise.samples) {
            CHECK(v == 0.0);
        }
    }
    SUBCASE("power ratio holds to 1e-9 relative at any target") {
        const Signal noise =
            gen_noise(NoiseSpec{NoiseKind::uniform_random, 0.75, 21}, 1000, 8000);
        for (double target : {-10.0, -2.0, 5.0, 17.3, 40.0}) {
            const MixResult mix = mix_at_snr(clean, noise, target);
            const double ratio = power(clean) / power(mix.scaled_noise);
            CHECK(10.0 * std::log10(ratio) == doctest::Approx(target).epsilon(1e-9));
        }
    }
    SUBCASE("clean power 0.04, unit noise power, 10 dB target: scale sqrt(0.004)") {
        Signal noise;
        noise.sample_rate = 8000;
        noise.samples.resize(1000);
        for (std::size_t i = 0; i < noise.size(); ++i) {
            noise.samples[i] = (i % 2 == 0) ? 1.0 : -1.0; // power 1 exactly
        }
        const MixResult mix = mix_at_snr(clean, noise, 10.0);
        CHECK(std::abs(mix.scaled_noise.samples[0]) ==
              doctest::Approx(std::sqrt(0.004)).epsilon(1e-12));
        CHECK(power(mix.scaled_noise) == doctest::Approx(0.004).epsilon(1e-9));
    }
    SUBCASE("errors") {
        Signal silence;
        silence.sample_rate = 8000;
        silence.samples.assign(1000, 0.0);
        const Signal noise = gen_noise(NoiseSpec{}, 1000, 8000);
        CHECK_THROWS_AS(mix_at_snr(silence, noise, 5.0), config_error);
        Signal short_noise = noise;
        short_noise.samples.resize(999);
        CHECK_THROWS_AS(mix_at_snr(clean, short_noise, 5.0), config_error);
    }
}

TEST_CASE("apply_channel") {
    Signal in;
    in.sample_rate = 8000;

    SUBCASE("identity") {
        in.samples = {0.5, -0.25, 1.0};
        const Signal out = apply_channel(in, ChannelSpec::identity());
        CHECK(out.samples == in.samples);
    }
    SUBCASE("scalar gain") {
        in.samples = {2.0, 4.0};
        const Signal out = apply_channel(in, ChannelSpec{{0.5}});
        CHECK(out.samples == std::vector<double>{1.0, 2.0});
    }
    SUBCASE("two taps, truncated to input length") {
        in.samples = {1.0, 0.0, 0.0};
        const Signal out = apply_channel(in, ChannelSpec{{1.0, 0.5}});
        CHECK(out.samples == std::vector<double>{1.0, 0.5, 0.0});
    }
    SUBCASE("empty channel is invalid") {
        in.samples = {1.0};
        CHECK_THROWS_AS(apply_channel(in, ChannelSpec{{}}), config_error);
    }
    SUBCASE("standard path has unit norm and a two-sample delay") {
        const ChannelSpec ch = ChannelSpec::standard_path();
        CHECK(ch.taps.size() == 16);
        CHECK(ch.taps[0] == 0.0);
        CHECK(ch.taps[1] == 0.0);
        double norm2 = 0.0;
        for (double t : ch.taps) {
            norm2 += t * t;
        }
        CHECK(norm2 == doctest::Approx(1.0).epsilon(1e-4));
    }
}

TEST_CASE("synth_speech") {
    SUBCASE("peak is exactly 0.9") {
        const Signal s = synth_speech(2.0, 8000, 42);
        double peak = 0.0;
        for (double v : s.samples) {
            peak = std::max(peak, std::abs(v));
        }
        CHECK(peak == doctest::Approx(0.9).epsilon(1e-12));
    }
    SUBCASE("length arithmetic") {
        CHECK(synth_speech(2.0, 8000, 42).size() == 16000);
        CHECK(synth_speech(0.5, 16000, 1).size() == 8000);
    }
    SUBCASE("deterministic per seed") {
        CHECK(synth_speech(1.0, 8000, 7).samples == synth_speech(1.0, 8000, 7).samples);
        CHECK(synth_speech(1.0, 8000, 7).samples != synth_speech(1.0, 8000, 8).samples);
    }
    SUBCASE("bad arguments") {
        CHECK_THROWS_AS(synth_speech(0.0, 8000, 1), config_error);
        CHECK_THROWS_AS(synth_speech(1.0, 0, 1), config_error);
    }
}

TEST_CASE("noise kind names round-trip") {
    CHECK(noise_kind_from_string("white") == NoiseKind::white_gaussian);
    CHECK(noise_kind_from_string("random") == NoiseKind::uniform_random);
    CHECK(to_string(NoiseKind::white_gaussian) == "white");
    CHECK(to_string(NoiseKind::uniform_random) == "random");
    CHECK_THROWS_AS(noise_kind_from_string("pink"), config_error);
}

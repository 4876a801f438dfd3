#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

#include "anc/rng.hpp"
#include "anc/wav.hpp"

using namespace anc;

namespace {

std::string temp_path(const char* name) {
    return std::string("/tmp/anc_wav_test_") + name;
}

} // namespace

TEST_CASE("write-read round trip stays within one quantization step") {
    const std::string path = temp_path("roundtrip.wav");
    Rng rng(1);
    for (int trial = 0; trial < 50; ++trial) {
        Signal s;
        s.sample_rate = 8000;
        s.samples.resize(256);
        for (double& v : s.samples) {
            v = rng.next_uniform(-1.0, 1.0);
        }
        wav_write(path, s);
        const Signal back = wav_read(path);
        REQUIRE(back.size() == s.size());
        REQUIRE(back.sample_rate == s.sample_rate);
        for (std::size_t i = 0; i < s.size(); ++i) {
            REQUIRE(std::abs(back.samples[i] - s.samples[i]) <= 1.0 / 32768.0);
        }
    }
    std::remove(path.c_str());
}

TEST_CASE("quantization convention: 0x7FFF is 32767/32768") {
    const std::string path = temp_path("quant.wav");
    Signal s;
    s.sample_rate = 8000;
    s.samples = {32767.0 / 32768.0, 1.0, -1.0, 0.0, 2.5, -9.0};
    wav_write(path, s);
    const Signal back = wav_read(path);
    CHECK(back.samples[0] == 32767.0 / 32768.0); // representable exactly
    CHECK(back.samples[1] == 32767.0 / 32768.0); // +1.0 saturates to 0x7FFF
    CHECK(back.samples[2] == -1.0);
    CHECK(back.samples[3] == 0.0);
    CHECK(back.samples[4] == 32767.0 / 32768.0); // clipped before quantizing
    CHECK(back.samples[5] == -1.0);
    std::remove(path.c_str());
}

TEST_CASE("stereo input is downmixed by averaging") {
    const std::string path = temp_path("stereo.wav");
    // hand-built 2-channel file, one frame: left 0x4000, right 0x0000
    std::ofstream f(path, std::ios::binary);
    auto u16 = [&](unsigned v) {
        f.put(static_cast<char>(v & 0xff));
        f.put(static_cast<char>((v >> 8) & 0xff));
    };
    auto u32 = [&](unsigned long v) {
        u16(static_cast<unsigned>(v & 0xffff));
        u16(static_cast<unsigned>((v >> 16) & 0xffff));
    };
    f.write("RIFF", 4);
    u32(36 + 4);
    f.write("WAVE", 4);
    f.write("fmt ", 4);
    u32(16);
    u16(1);     // PCM
    u16(2);     // stereo
    u32(8000);  // rate
    u32(32000); // byte rate
    u16(4);     // block align
    u16(16);    // bits
    f.write("data", 4);
    u32(4);
    u16(0x4000);
    u16(0x0000);
    f.close();

    const Signal s = wav_read(path);
    REQUIRE(s.size() == 1);
    CHECK(s.samples[0] == doctest::Approx(0.25).epsilon(1e-12));
    std::remove(path.c_str());
}

TEST_CASE("parse errors name the offending chunk") {
    const std::string path = temp_path("bad.wav");

    SUBCASE("not a RIFF file") {
        std::ofstream(path) << "definitely not audio";
        CHECK_THROWS_WITH_AS(wav_read(path), doctest::Contains("RIFF header"), wav_error);
    }
    SUBCASE("truncated data chunk") {
        Signal s;
        s.sample_rate = 8000;
        s.samples.assign(64, 0.25);
        wav_write(path, s);
        // chop the file mid-data
        std::ifstream in(path, std::ios::binary);
        std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        in.close();
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size() - 40));
        out.close();
        CHECK_THROWS_WITH_AS(wav_read(path), doctest::Contains("data chunk"), wav_error);
    }
    SUBCASE("unsupported codec") {
        std::ofstream f(path, std::ios::binary);
        auto u16 = [&](unsigned v) {
            f.put(static_cast<char>(v & 0xff));
            f.put(static_cast<char>((v >> 8) & 0xff));
        };
        auto u32 = [&](unsigned long v) {
            u16(static_cast<unsigned>(v & 0xffff));
            u16(static_cast<unsigned>((v >> 16) & 0xffff));
        };
        f.write("RIFF", 4);
        u32(36);
        f.write("WAVE", 4);
        f.write("fmt ", 4);
        u32(16);
        u16(3); // IEEE float, unsupported
        u16(1);
        u32(8000);
        u32(16000);
        u16(2);
        u16(16);
        f.close();
        CHECK_THROWS_WITH_AS(wav_read(path), doctest::Contains("codec"), wav_error);
    }
    SUBCASE("missing file") {
        CHECK_THROWS_AS(wav_read("/tmp/anc_wav_test_does_not_exist.wav"), wav_error);
    }
    std::remove(path.c_str());
}

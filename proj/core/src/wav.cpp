#include "anc/wav.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <vector>

namespace anc {

namespace {

std::uint32_t read_u32(const unsigned char* p) {
    return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
           (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

std::uint16_t read_u16(const unsigned char* p) {
    return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

void put_u32(std::vector<unsigned char>& out, std::uint32_t v) {
    out.push_back(static_cast<unsigned char>(v & 0xff));
    out.push_back(static_cast<unsigned char>((v >> 8) & 0xff));
    out.push_back(static_cast<unsigned char>((v >> 16) & 0xff));
    out.push_back(static_cast<unsigned char>((v >> 24) & 0xff));
}

void put_u16(std::vector<unsigned char>& out, std::uint16_t v) {
    out.push_back(static_cast<unsigned char>(v & 0xff));
    out.push_back(static_cast<unsigned char>((v >> 8) & 0xff));
}

bool tag_is(const unsigned char* p, const char* tag) {
    return std::memcmp(p, tag, 4) == 0;
}

} // namespace

Signal wav_read(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw wav_error("cannot open '" + path + "'");
    }
    std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                     std::istreambuf_iterator<char>());
    if (bytes.size() < 12 || !tag_is(bytes.data(), "RIFF")) {
        throw wav_error("RIFF header: missing or not a RIFF file");
    }
    if (!tag_is(bytes.data() + 8, "WAVE")) {
        throw wav_error("RIFF header: form type is not WAVE");
    }

    bool have_fmt = false;
    std::uint16_t channels = 0;
    std::uint32_t rate = 0;
    std::uint16_t bits = 0;

    std::size_t pos = 12;
    while (pos + 8 <= bytes.size()) {
        const unsigned char* hdr = bytes.data() + pos;
        const std::uint32_t chunk_size = read_u32(hdr + 4);
        const std::size_t body = pos + 8;

        if (tag_is(hdr, "fmt ")) {
            if (body + 16 > bytes.size() || chunk_size < 16) {
                throw wav_error("fmt chunk: truncated");
            }
            const std::uint16_t codec = read_u16(bytes.data() + body);
            if (codec != 1) {
                throw wav_error("fmt chunk: codec " + std::to_string(codec) +
                                " unsupported (PCM only)");
            }
            channels = read_u16(bytes.data() + body + 2);
            rate = read_u32(bytes.data() + body + 4);
            bits = read_u16(bytes.data() + body + 14);
            if (channels != 1 && channels != 2) {
                throw wav_error("fmt chunk: " + std::to_string(channels) +
                                " channels unsupported (mono or stereo only)");
            }
            if (bits != 16) {
                throw wav_error("fmt chunk: " + std::to_string(bits) +
                                "-bit samples unsupported (16-bit only)");
            }
            if (rate == 0) {
                throw wav_error("fmt chunk: zero sample rate");
            }
            have_fmt = true;
        } else if (tag_is(hdr, "data")) {
            if (!have_fmt) {
                throw wav_error("data chunk: appears before fmt chunk");
            }
            if (body + chunk_size > bytes.size()) {
                throw wav_error("data chunk: truncated");
            }
            const std::size_t frame_bytes = 2u * channels;
            const std::size_t frames = chunk_size / frame_bytes;
            Signal out;
            out.sample_rate = rate;
            out.samples.resize(frames);
            const unsigned char* p = bytes.data() + body;
            for (std::size_t i = 0; i < frames; ++i) {
                double acc = 0.0;
                for (std::uint16_t c = 0; c < channels; ++c) {
                    const auto q = static_cast<std::int16_t>(read_u16(p + (i * channels + c) * 2));
                    acc += static_cast<double>(q) / 32768.0;
                }
                out.samples[i] = acc / channels;
            }
            return out;
        }
        pos = body + chunk_size + (chunk_size & 1); // chunks are word-aligned
    }
    throw wav_error(have_fmt ? "data chunk: missing" : "fmt chunk: missing");
}

void wav_write(const std::string& path, const Signal& signal) {
    const std::uint32_t frames = static_cast<std::uint32_t>(signal.size());
    const std::uint32_t data_bytes = frames * 2;

    std::vector<unsigned char> out;
    out.reserve(44 + data_bytes);
    out.insert(out.end(), {'R', 'I', 'F', 'F'});
    put_u32(out, 36 + data_bytes);
    out.insert(out.end(), {'W', 'A', 'V', 'E'});
    out.insert(out.end(), {'f', 'm', 't', ' '});
    put_u32(out, 16);
    put_u16(out, 1); // PCM
    put_u16(out, 1); // mono
    put_u32(out, signal.sample_rate);
    put_u32(out, signal.sample_rate * 2); // byte rate
    put_u16(out, 2);                      // block align
    put_u16(out, 16);                     // bits per sample
    out.insert(out.end(), {'d', 'a', 't', 'a'});
    put_u32(out, data_bytes);

    for (double v : signal.samples) {
        const double clipped = std::clamp(v, -1.0, 1.0);
        const long q = std::lround(clipped * 32768.0);
        const auto s = static_cast<std::int16_t>(std::clamp(q, -32768L, 32767L));
        put_u16(out, static_cast<std::uint16_t>(s));
    }

    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) {
        throw wav_error("cannot open '" + path + "' for writing");
    }
    f.write(reinterpret_cast<const char*>(out.data()), static_cast<std::streamsize>(out.size()));
    if (!f) {
        throw wav_error("write failed for '" + path + "'");
    }
}

} // namespace anc

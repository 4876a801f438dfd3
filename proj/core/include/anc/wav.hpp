#pragma once

#include <string>

#include "anc/signal.hpp"

namespace anc {

/// Reads a RIFF/WAVE file: PCM, 16-bit, mono (stereo is downmixed by
/// averaging). Samples map to doubles as q / 32768. Malformed input raises
/// wav_error naming the offending chunk.
Signal wav_read(const std::string& path);

/// Writes a mono 16-bit PCM WAV. Samples are clipped to [-1, 1] and rounded
/// to q = round(x * 32768), clamped to [-32768, 32767]; a round trip is
/// within 1/32768 per sample.
void wav_write(const std::string& path, const Signal& signal);

} // namespace anc

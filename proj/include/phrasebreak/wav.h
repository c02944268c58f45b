// phrasebreak/wav.h
//
// Minimal RIFF/WAVE reader and writer. Reads integer PCM (8/16/24/32 bit)
// and IEEE float (32/64 bit), including WAVE_FORMAT_EXTENSIBLE; keeps only
// the first channel.

#pragma once

#include <filesystem>
#include <string_view>
#include <vector>

namespace phrasebreak {

struct Audio {
  int sample_rate = 16000;
  std::vector<float> samples;  // mono, nominally in [-1, 1]

  double duration_s() const {
    return static_cast<double>(samples.size()) / sample_rate;
  }
};

Audio ParseWav(std::string_view bytes, const std::string &source = "<memory>");
Audio ReadWav(const std::filesystem::path &path);

// Writes 16-bit mono PCM.
std::string EncodeWav16(const Audio &audio);
void WriteWav16(const Audio &audio, const std::filesystem::path &path);

}  // namespace phrasebreak

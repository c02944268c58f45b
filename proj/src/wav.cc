// src/wav.cc

#include "phrasebreak/wav.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <string>

#include "phrasebreak/error.h"
#include "phrasebreak/text_io.h"

namespace phrasebreak {

namespace {

constexpr uint16_t kFormatPcm = 1;
constexpr uint16_t kFormatFloat = 3;
constexpr uint16_t kFormatExtensible = 0xFFFE;

uint32_t Le32(const unsigned char *p) {
  return uint32_t(p[0]) | uint32_t(p[1]) << 8 | uint32_t(p[2]) << 16 |
         uint32_t(p[3]) << 24;
}
uint16_t Le16(const unsigned char *p) { return uint16_t(p[0] | p[1] << 8); }

void Put32(std::string &out, uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}
void Put16(std::string &out, uint16_t v) {
  out.push_back(static_cast<char>(v & 0xff));
  out.push_back(static_cast<char>(v >> 8));
}

float DecodeSample(const unsigned char *p, uint16_t format, uint16_t bits) {
  if (format == kFormatFloat) {
    if (bits == 32) {
      float f;
      uint32_t u = Le32(p);
      std::memcpy(&f, &u, 4);
      return f;
    }
    uint64_t u = uint64_t(Le32(p)) | uint64_t(Le32(p + 4)) << 32;
    double d;
    std::memcpy(&d, &u, 8);
    return static_cast<float>(d);
  }
  switch (bits) {
    case 8:
      return (static_cast<int>(p[0]) - 128) / 128.0f;
    case 16:
      return static_cast<int16_t>(Le16(p)) / 32768.0f;
    case 24: {
      int32_t v = int32_t(p[0]) | int32_t(p[1]) << 8 | int32_t(p[2]) << 16;
      if (v & 0x800000) v -= 0x1000000;
      return static_cast<float>(v / 8388608.0);
    }
    default:
      return static_cast<float>(static_cast<int32_t>(Le32(p)) / 2147483648.0);
  }
}

}  // namespace

Audio ParseWav(std::string_view bytes, const std::string &source) {
  const auto *data = reinterpret_cast<const unsigned char *>(bytes.data());
  const size_t size = bytes.size();
  if (size < 12 || std::memcmp(data, "RIFF", 4) != 0 ||
      std::memcmp(data + 8, "WAVE", 4) != 0) {
    throw IoError(source + ": not a RIFF/WAVE file");
  }

  uint16_t format = 0, channels = 0, bits = 0;
  uint32_t rate = 0;
  const unsigned char *pcm = nullptr;
  size_t pcm_size = 0;
  size_t pos = 12;
  while (pos + 8 <= size) {
    const unsigned char *chunk = data + pos;
    size_t len = Le32(chunk + 4);
    const size_t avail = size - pos - 8;
    if (std::memcmp(chunk, "fmt ", 4) == 0) {
      if (len < 16 || len > avail) throw IoError(source + ": truncated fmt chunk");
      format = Le16(chunk + 8);
      channels = Le16(chunk + 10);
      rate = Le32(chunk + 12);
      bits = Le16(chunk + 22);
      if (format == kFormatExtensible && len >= 40) format = Le16(chunk + 8 + 24);
    } else if (std::memcmp(chunk, "data", 4) == 0) {
      // Streams written with an unknown length often leave this field bogus.
      pcm = chunk + 8;
      pcm_size = std::min(len, avail);
    }
    pos += 8 + len + (len & 1);
  }

  if (format == 0) throw IoError(source + ": missing fmt chunk");
  if (!pcm) throw IoError(source + ": missing data chunk");
  const bool ok_pcm = format == kFormatPcm && (bits == 8 || bits == 16 || bits == 24 || bits == 32);
  const bool ok_float = format == kFormatFloat && (bits == 32 || bits == 64);
  if (!(ok_pcm || ok_float) || channels == 0 || rate == 0) {
    throw IoError(source + ": unsupported WAV encoding (format " +
                  std::to_string(format) + ", " + std::to_string(bits) + " bit)");
  }

  const size_t frame_bytes = size_t(channels) * (bits / 8);
  Audio audio;
  audio.sample_rate = static_cast<int>(rate);
  const size_t n = pcm_size / frame_bytes;
  audio.samples.resize(n);
  for (size_t i = 0; i < n; ++i) {
    audio.samples[i] = DecodeSample(pcm + i * frame_bytes, format, bits);
  }
  return audio;
}

Audio ReadWav(const std::filesystem::path &path) {
  return ParseWav(ReadFile(path), path.string());
}

std::string EncodeWav16(const Audio &audio) {
  const uint32_t data_bytes = static_cast<uint32_t>(audio.samples.size() * 2);
  std::string out;
  out.reserve(44 + data_bytes);
  out += "RIFF";
  Put32(out, 36 + data_bytes);
  out += "WAVEfmt ";
  Put32(out, 16);
  Put16(out, kFormatPcm);
  Put16(out, 1);
  Put32(out, static_cast<uint32_t>(audio.sample_rate));
  Put32(out, static_cast<uint32_t>(audio.sample_rate * 2));
  Put16(out, 2);
  Put16(out, 16);
  out += "data";
  Put32(out, data_bytes);
  for (float s : audio.samples) {
    const long v = std::lround(std::clamp(s, -1.0f, 1.0f) * 32767.0f);
    Put16(out, static_cast<uint16_t>(static_cast<int16_t>(v)));
  }
  return out;
}

void WriteWav16(const Audio &audio, const std::filesystem::path &path) {
  WriteFileAtomic(path, EncodeWav16(audio));
}

}  // namespace phrasebreak

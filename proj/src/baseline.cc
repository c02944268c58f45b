// src/baseline.cc

#include "phrasebreak/baseline.h"

#include <algorithm>
#include <cmath>

#include "phrasebreak/error.h"
#include "phrasebreak/fuzzy_labels.h"

namespace phrasebreak {

void Validate(const BaselineParams &p) {
  if (!(p.frame_period_s > 0)) throw ConfigError("baseline: frame period must be > 0");
  if (!(p.silence_energy_quantile >= 0 && p.silence_energy_quantile <= 1)) {
    throw ConfigError("baseline: silence_energy_quantile must be in [0, 1]");
  }
  if (!(p.min_pause_s >= 0)) throw ConfigError("baseline: min_pause_s must be >= 0");
  if (!(p.full_credit_pause_s > 0)) {
    throw ConfigError("baseline: full_credit_pause_s must be > 0");
  }
  if (!(p.ramp_halfwidth_s > 0)) throw ConfigError("baseline: ramp half-width must be > 0");
  if (!(p.quantile_margin_db >= 0) || !(p.min_dynamic_range_db >= 0)) {
    throw ConfigError("baseline: dB margins must be >= 0");
  }
}

std::vector<double> FrameRms(const Audio &audio, double frame_period_s) {
  if (audio.sample_rate <= 0) throw ConfigError("audio has no sample rate");
  const auto n_frames = FrameCount(audio.duration_s(), frame_period_s);
  std::vector<double> rms(static_cast<size_t>(n_frames), 0.0);
  const double rate = audio.sample_rate;
  for (int64_t i = 0; i < n_frames; ++i) {
    auto begin = static_cast<size_t>(std::llround(i * frame_period_s * rate));
    auto end = static_cast<size_t>(std::llround((i + 1) * frame_period_s * rate));
    begin = std::min(begin, audio.samples.size());
    end = std::min(end, audio.samples.size());
    if (end <= begin) continue;
    double acc = 0;
    for (size_t s = begin; s < end; ++s) acc += double(audio.samples[s]) * audio.samples[s];
    rms[static_cast<size_t>(i)] = std::sqrt(acc / static_cast<double>(end - begin));
  }
  return rms;
}

std::vector<bool> SilentFrames(const std::vector<double> &rms, const BaselineParams &params) {
  std::vector<bool> out(rms.size(), false);
  if (rms.empty()) return out;
  std::vector<double> sorted = rms;
  std::sort(sorted.begin(), sorted.end());
  const auto rank = static_cast<size_t>(
      std::floor(params.silence_energy_quantile * static_cast<double>(sorted.size() - 1)));
  const double quiet = sorted[rank] * std::pow(10.0, params.quantile_margin_db / 20.0);
  const double loud = sorted.back() * std::pow(10.0, -params.min_dynamic_range_db / 20.0);
  for (size_t i = 0; i < rms.size(); ++i) out[i] = rms[i] <= quiet && rms[i] < loud;
  return out;
}

std::vector<PauseRun> DetectPauses(const Audio &audio, const BaselineParams &params) {
  Validate(params);
  if (audio.samples.empty()) throw ConfigError("audio is empty");
  const double p = params.frame_period_s;
  const auto rms = FrameRms(audio, p);
  const auto is_silent = SilentFrames(rms, params);
  auto silent = [&](size_t i) { return is_silent[i]; };

  std::vector<PauseRun> runs;
  size_t i = 0;
  while (i < rms.size()) {
    if (!silent(i)) {
      ++i;
      continue;
    }
    size_t j = i;
    while (j + 1 < rms.size() && silent(j + 1)) ++j;
    PauseRun run;
    run.first_frame = static_cast<int64_t>(i);
    run.last_frame = static_cast<int64_t>(j);
    run.start_s = static_cast<double>(i) * p;
    run.end_s = static_cast<double>(j + 1) * p;
    const double d = static_cast<double>(j - i + 1) * p;
    if (d >= params.min_pause_s - 1e-9) {
      run.peak = std::min(1.0, d / params.full_credit_pause_s);
      run.anchor_s = params.anchor == PauseAnchor::kOnset
                         ? run.start_s
                         : 0.5 * static_cast<double>(i + j + 1) * p;
      runs.push_back(run);
    }
    i = j + 1;
  }
  return runs;
}

FrameScores BaselineScore(const Audio &audio, const BaselineParams &params) {
  const auto runs = DetectPauses(audio, params);
  FrameScores out;
  out.frame_period_s = params.frame_period_s;
  out.source = "baseline";
  out.values.assign(static_cast<size_t>(FrameCount(audio.duration_s(), params.frame_period_s)),
                    0.0);
  const double hw = params.ramp_halfwidth_s;
  const double p = params.frame_period_s;
  for (const auto &run : runs) {
    const int64_t lo = std::max<int64_t>(0, RobustFloor((run.anchor_s - hw) / p) - 1);
    const int64_t hi = std::min<int64_t>(static_cast<int64_t>(out.size()) - 1,
                                         RobustCeil((run.anchor_s + hw) / p) + 1);
    for (int64_t k = lo; k <= hi; ++k) {
      auto &v = out.values[static_cast<size_t>(k)];
      v = std::max(v, RampValue(run.peak, run.anchor_s, hw, FrameCenter(k, p)));
    }
  }
  return out;
}

}  // namespace phrasebreak

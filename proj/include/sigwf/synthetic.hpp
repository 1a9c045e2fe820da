#pragma once

#include <cstdint>
#include <string>

#include "sigwf/market_data.hpp"

namespace sigwf {

/// Deterministic candle generator: trend + slow oscillation + noise in log
/// price. The RNG is a self-contained splitmix64/Box-Muller pipeline seeded
/// from the seed text, so a run is reproducible from its config alone.
struct SyntheticSpec {
  Index n_bars{50000};
  std::string seed_text{"sigwf-synthetic-v1"};
  double p0{100.0};
  double trend_per_bar{2e-5};
  double osc_amp{0.01};
  double osc_period_bars{700.0};
  double noise{4e-4};
  double base_volume{50.0};
  int64_t start_ts{1577836800000};  // 2020-01-01T00:00Z
  std::string symbol{"SYNTH"};
};

CandleSeries synthetic_candles(const SyntheticSpec& spec);

/// Copy of `base` with every candle strictly after `cut` replaced by
/// adversarial but invariant-respecting bars (price jumps, crashes, volume
/// spikes). Timestamps are preserved. Used by the causality suites.
CandleSeries adversarial_after(const CandleSeries& base, Index cut, const std::string& seed_text);

/// splitmix64 stream with explicit Box-Muller normals; independent of the
/// standard library's distribution implementations.
class DeterministicRng {
 public:
  explicit DeterministicRng(uint64_t seed) : state_(seed) {}
  explicit DeterministicRng(const std::string& seed_text);

  uint64_t next_u64();
  double next_unit();    // [0, 1)
  double next_normal();  // standard normal

 private:
  uint64_t state_;
  bool have_spare_{false};
  double spare_{0};
};

}  // namespace sigwf

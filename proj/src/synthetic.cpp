#include "sigwf/synthetic.hpp"

#include <cmath>

#include "sigwf/digest.hpp"
#include "sigwf/errors.hpp"

namespace sigwf {

DeterministicRng::DeterministicRng(const std::string& seed_text)
    : DeterministicRng(fnv1a64(seed_text)) {}

uint64_t DeterministicRng::next_u64() {
  // splitmix64
  uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

double DeterministicRng::next_unit() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double DeterministicRng::next_normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u = 0;
  do {
    u = next_unit();
  } while (u <= 0.0);
  const double v = next_unit();
  const double r = std::sqrt(-2.0 * std::log(u));
  const double angle = 2.0 * M_PI * v;
  spare_ = r * std::sin(angle);
  have_spare_ = true;
  return r * std::cos(angle);
}

CandleSeries synthetic_candles(const SyntheticSpec& spec) {
  if (spec.n_bars < 1) throw ConfigError("synthetic: n_bars must be >= 1");
  DeterministicRng rng(spec.seed_text);

  CandleSeries out;
  out.symbol = spec.symbol;
  out.candles.reserve(static_cast<size_t>(spec.n_bars));

  auto osc = [&](Index t) {
    return spec.osc_amp * std::sin(2.0 * M_PI * static_cast<double>(t) / spec.osc_period_bars);
  };

  double log_px = 0.0;
  double prev_close = spec.p0;
  for (Index t = 0; t < spec.n_bars; ++t) {
    if (t > 0) log_px += spec.trend_per_bar + (osc(t) - osc(t - 1)) + spec.noise * rng.next_normal();
    const double close = spec.p0 * std::exp(log_px);
    const double open = (t == 0) ? close : prev_close;
    const double wick = std::abs(rng.next_normal()) * spec.noise;
    const double high = std::max(open, close) * (1.0 + wick);
    const double low = std::min(open, close) / (1.0 + wick);
    const double volume = spec.base_volume * (0.5 + rng.next_unit());
    out.candles.push_back(Candle{spec.start_ts + t * kIntervalMs, open, high, low, close, volume});
    prev_close = close;
  }
  return out;
}

CandleSeries adversarial_after(const CandleSeries& base, Index cut, const std::string& seed_text) {
  DeterministicRng rng(fnv1a64(seed_text) ^ 0xad7e25a11ull);
  CandleSeries out = base;
  double px = (cut >= 0 && cut < base.size())
                  ? base.candles[static_cast<size_t>(cut)].close
                  : 1.0;
  for (Index t = cut + 1; t < base.size(); ++t) {
    // Wild but invariant-respecting bars: jumps up to 30% per minute,
    // occasional zero volume, fat wicks.
    const double jump = 1.0 + 0.3 * (rng.next_unit() - 0.5) * 2.0;
    const double open = px;
    const double close = std::max(1e-9, px * jump);
    const double wick = 0.05 * rng.next_unit();
    const double high = std::max(open, close) * (1.0 + wick);
    const double low = std::min(open, close) / (1.0 + wick);
    const double volume = (rng.next_unit() < 0.2) ? 0.0 : 1e4 * rng.next_unit();
    Candle& c = out.candles[static_cast<size_t>(t)];
    c.open = open;
    c.high = high;
    c.low = low;
    c.close = close;
    c.volume = volume;
    px = close;
  }
  return out;
}

}  // namespace sigwf

#include "sigwf/indicators.hpp"

#include <algorithm>
#include <cmath>

#include "sigwf/errors.hpp"

namespace sigwf {

namespace {
constexpr double kBandEps = 1e-12;  // degenerate BB band guard, price units
}

Series rsi(const ArrayXd& closes, int n) {
  if (n < 2) throw ConfigError("rsi: window must be >= 2");
  const Index len = closes.size();
  Series out = nan_series(len, n);
  if (len < n + 1) {
    out.valid_from = len;  // all-invalid output
    return out;
  }
  for (Index t = n; t < len; ++t) {
    double gain = 0, loss = 0;
    for (Index tau = t - n + 1; tau <= t; ++tau) {
      const double d = closes[tau] - closes[tau - 1];
      if (d > 0)
        gain += d;
      else
        loss -= d;
    }
    // Means over the same n changes share the denominator, so the ratio
    // reduces to the sums.
    if (gain == 0 && loss == 0)
      out.values[t] = 50.0;
    else
      out.values[t] = 100.0 * gain / (gain + loss);
  }
  return out;
}

Series mfi(const CandleSeries& candles, int n) {
  if (n < 2) throw ConfigError("mfi: window must be >= 2");
  const Index len = candles.size();
  Series out = nan_series(len, n);
  if (len < n + 1) {
    out.valid_from = len;
    return out;
  }
  ArrayXd tp(len);
  for (Index i = 0; i < len; ++i) {
    const Candle& c = candles.candles[static_cast<size_t>(i)];
    tp[i] = (c.high + c.low + c.close) / 3.0;
  }
  for (Index t = n; t < len; ++t) {
    double pmf = 0, nmf = 0;
    for (Index tau = t - n + 1; tau <= t; ++tau) {
      const double flow = tp[tau] * candles.candles[static_cast<size_t>(tau)].volume;
      if (tp[tau] > tp[tau - 1])
        pmf += flow;
      else if (tp[tau] < tp[tau - 1])
        nmf += flow;
      // ties contribute to neither side
    }
    if (pmf == 0 && nmf == 0)
      out.values[t] = 50.0;
    else
      out.values[t] = 100.0 * pmf / (pmf + nmf);
  }
  return out;
}

Series macd_hist(const ArrayXd& closes, int fast, int slow, int signal) {
  if (fast >= slow) throw ConfigError("macd: fast span must be < slow span");
  if (fast < 1 || signal < 1) throw ConfigError("macd: spans must be >= 1");
  const Index len = closes.size();
  const Index warm = slow + signal - 2;
  Series out = nan_series(len, std::min<Index>(warm, len));
  if (len == 0) return out;

  const double af = 2.0 / (fast + 1.0);
  const double as = 2.0 / (slow + 1.0);
  const double ag = 2.0 / (signal + 1.0);
  double ema_fast = closes[0];
  double ema_slow = closes[0];
  double sig = 0.0;  // first MACD-line value is fast-slow seeded equal = 0
  for (Index t = 0; t < len; ++t) {
    if (t > 0) {
      ema_fast += af * (closes[t] - ema_fast);
      ema_slow += as * (closes[t] - ema_slow);
    }
    const double line = ema_fast - ema_slow;
    if (t == 0)
      sig = line;
    else
      sig += ag * (line - sig);
    if (t >= out.valid_from) out.values[t] = line - sig;
  }
  return out;
}

Series bb_percent(const ArrayXd& closes, int n, double k) {
  if (n < 2) throw ConfigError("bb_percent: window must be >= 2");
  if (!(k > 0)) throw ConfigError("bb_percent: k must be > 0");
  const Index len = closes.size();
  Series out = nan_series(len, std::min<Index>(n - 1, len));
  for (Index t = n - 1; t < len; ++t) {
    double sum = 0;
    for (Index tau = t - n + 1; tau <= t; ++tau) sum += closes[tau];
    const double mu = sum / n;
    double ss = 0;
    for (Index tau = t - n + 1; tau <= t; ++tau) {
      const double d = closes[tau] - mu;
      ss += d * d;
    }
    const double sigma = std::sqrt(ss / n);
    if (sigma < kBandEps) {
      out.values[t] = 50.0;
    } else {
      const double raw = 100.0 * (closes[t] - (mu - k * sigma)) / (2.0 * k * sigma);
      out.values[t] = std::clamp(raw, 0.0, 100.0);
    }
  }
  return out;
}

IndicatorPanel compute_panel(const CandleSeries& candles, const IndicatorConfig& cfg) {
  if (cfg.rsi_wilder)
    throw PipelineError("rsi_wilder is reserved and not implemented; use the simple-mean mode");
  const Index len = candles.size();
  const Index min_len =
      std::max<Index>({cfg.n_rsi + 1, cfg.n_mfi + 1, cfg.macd_slow + cfg.macd_signal - 1,
                       cfg.n_bb}) ;
  if (len < min_len)
    throw DataError("compute_panel: series of length " + std::to_string(len) +
                    " shorter than indicator warm-up " + std::to_string(min_len));
  const ArrayXd px = closes(candles);
  IndicatorPanel panel;
  panel.config = cfg;
  panel.series[kRsi] = rsi(px, cfg.n_rsi);
  panel.series[kMfi] = mfi(candles, cfg.n_mfi);
  panel.series[kMacd] = macd_hist(px, cfg.macd_fast, cfg.macd_slow, cfg.macd_signal);
  panel.series[kBbp] = bb_percent(px, cfg.n_bb, cfg.k_bb);
  return panel;
}

}  // namespace sigwf

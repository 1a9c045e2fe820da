#pragma once

#include <array>
#include <string>

#include "sigwf/market_data.hpp"
#include "sigwf/series.hpp"

namespace sigwf {

enum IndicatorKey : int { kRsi = 0, kMfi = 1, kMacd = 2, kBbp = 3 };
inline constexpr int kNumIndicators = 4;
inline constexpr std::array<const char*, 4> kIndicatorNames{"rsi", "mfi", "macd", "bbp"};

struct IndicatorConfig {
  int n_rsi{14};
  int n_mfi{14};
  int macd_fast{12};
  int macd_slow{26};
  int macd_signal{9};
  int n_bb{20};
  double k_bb{2.0};
  // Reserved: Wilder recursive smoothing for RSI. Not implemented; the
  // simple trailing mean is the production mode.
  bool rsi_wilder{false};
};

/// The four raw indicator series aligned to the candle grid. RSI, MFI and
/// BB% live in [0,100] wherever valid; MACD is the histogram, in price units.
struct IndicatorPanel {
  std::array<Series, kNumIndicators> series;
  IndicatorConfig config;

  Index length() const { return series[0].size(); }
};

/// RSI over the trailing n one-bar changes ending at t, as the simple mean
/// of gains over mean of gains plus losses. Degenerate window (no moves)
/// maps to 50. Valid from index n.
Series rsi(const ArrayXd& closes, int n);

/// Money Flow Index over the trailing n bars ending at t. Typical price
/// ties contribute to neither flow; PMF = NMF = 0 maps to 50. Valid from n.
Series mfi(const CandleSeries& candles, int n);

/// MACD histogram = (EMA_fast - EMA_slow) - signal EMA, price units. Each
/// EMA is seeded with its first input. Valid from slow + signal - 2.
Series macd_hist(const ArrayXd& closes, int fast, int slow, int signal);

/// Bollinger %B on a trailing n-bar window (population sigma), scaled to
/// [0,100] and clamped. Sub-epsilon band width maps to 50. Valid from n-1.
Series bb_percent(const ArrayXd& closes, int n, double k);

/// All four indicators on a regularized series. Throws DataError if the
/// series is too short for any configured window.
IndicatorPanel compute_panel(const CandleSeries& candles, const IndicatorConfig& cfg);

}  // namespace sigwf

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "sigwf/series.hpp"

namespace sigwf {

inline constexpr int64_t kIntervalMs = 60000;

/// One OHLCV bar on the one-minute grid. Prices are quote currency per base
/// unit; volume is base-asset quantity.
struct Candle {
  int64_t timestamp{0};  // epoch ms, UTC, minute-aligned
  double open{0}, high{0}, low{0}, close{0};
  double volume{0};
};

struct CandleSeries {
  std::string symbol;
  int64_t interval_ms{kIntervalMs};
  std::vector<Candle> candles;

  Index size() const { return static_cast<Index>(candles.size()); }
};

/// Throws DataError naming the (1-based data) row on any invariant
/// violation: non-positive price, negative volume, high/low ordering,
/// timestamp not minute-aligned.
void validate_candle(const Candle& c, Index row);

/// Parse the candle file format: header `timestamp,open,high,low,close,volume`
/// then one candle per line, strictly increasing timestamps. An empty file
/// yields an empty series with the symbol preserved.
CandleSeries load_candles(const std::filesystem::path& path, const std::string& symbol);

/// Write a series in the candle file format (shortest round-trip floats).
void save_candles(const std::filesystem::path& path, const CandleSeries& series);

/// Fill every missing minute between the first and last timestamp with a flat
/// bar: O=H=L=C = previous close, volume = 0. Idempotent; original candles
/// are copied unchanged. Throws DataError on empty input.
CandleSeries regularize(const CandleSeries& series);

/// Number of bars regularize() would insert (missing minutes).
Index count_gaps(const CandleSeries& series);

ArrayXd closes(const CandleSeries& series);

}  // namespace sigwf

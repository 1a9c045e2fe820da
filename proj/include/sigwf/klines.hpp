#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "sigwf/market_data.hpp"

namespace sigwf {

/// One kline row as received: numeric fields kept verbatim so the stored
/// file preserves the exchange's precision.
struct RawKline {
  int64_t open_time{0};
  std::string open, high, low, close, volume;
};

struct FetchOptions {
  std::string base_url;               // e.g. "https://api.binance.com"
  std::string path{"/api/v3/klines"};
  int page_limit{1000};
  int max_retries{3};
  int backoff_ms{250};
};

/// Env var consulted by the CLI for the endpoint base URL.
inline constexpr const char* kKlinesUrlEnv = "SIGWF_KLINES_URL";

/// GET klines for [start_ms, end_ms), paginating transparently in pages of
/// page_limit. Retries transient failures with bounded exponential backoff.
/// Throws ConfigError if start >= end, DataError on schema mismatch or
/// exhausted retries.
std::vector<RawKline> fetch_klines(const FetchOptions& opts, const std::string& symbol,
                                   int64_t start_ms, int64_t end_ms);

/// Parse raw rows into a CandleSeries (validates every candle).
CandleSeries to_candle_series(const std::string& symbol, const std::vector<RawKline>& rows);

/// Write raw rows in the candle file format, fields verbatim as received.
void write_raw_klines(const std::filesystem::path& path, const std::vector<RawKline>& rows);

/// Drop rows whose open_time duplicates an earlier row (keeps the first).
std::vector<RawKline> dedupe_by_open_time(std::vector<RawKline> rows);

}  // namespace sigwf

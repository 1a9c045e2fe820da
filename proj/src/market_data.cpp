#include "sigwf/market_data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "sigwf/columnar.hpp"
#include "sigwf/errors.hpp"

namespace sigwf {

namespace {

constexpr const char* kHeader = "timestamp,open,high,low,close,volume";

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  size_t start = 0;
  while (true) {
    size_t pos = line.find(',', start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      break;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

double parse_double(std::string_view s, Index row, const char* field) {
  double v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw DataError("row " + std::to_string(row) + ": malformed " + field + " '" +
                    std::string(s) + "'");
  return v;
}

int64_t parse_int(std::string_view s, Index row, const char* field) {
  int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw DataError("row " + std::to_string(row) + ": malformed " + field + " '" +
                    std::string(s) + "'");
  return v;
}

}  // namespace

void validate_candle(const Candle& c, Index row) {
  auto fail = [&](const std::string& what) {
    throw DataError("row " + std::to_string(row) + ": " + what);
  };
  if (c.timestamp % kIntervalMs != 0) fail("timestamp not minute-aligned");
  if (!(c.open > 0) || !(c.high > 0) || !(c.low > 0) || !(c.close > 0))
    fail("non-positive price");
  if (!(c.volume >= 0)) fail("negative volume");
  if (c.low > std::min(c.open, c.close)) fail("low above min(open, close)");
  if (c.high < std::max(c.open, c.close)) fail("high below max(open, close)");
}

CandleSeries load_candles(const std::filesystem::path& path, const std::string& symbol) {
  std::ifstream in(path);
  if (!in) throw DataError("candle file not found: " + path.string());

  CandleSeries series;
  series.symbol = symbol;

  std::string line;
  if (!std::getline(in, line)) return series;  // empty file -> empty series
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kHeader)
    throw DataError("bad candle file header in " + path.string() + ": '" + line + "'");

  Index row = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    ++row;
    auto fields = split_fields(line);
    if (fields.size() != 6)
      throw DataError("row " + std::to_string(row) + ": expected 6 fields, got " +
                      std::to_string(fields.size()));
    Candle c;
    c.timestamp = parse_int(fields[0], row, "timestamp");
    c.open = parse_double(fields[1], row, "open");
    c.high = parse_double(fields[2], row, "high");
    c.low = parse_double(fields[3], row, "low");
    c.close = parse_double(fields[4], row, "close");
    c.volume = parse_double(fields[5], row, "volume");
    validate_candle(c, row);
    if (!series.candles.empty() && c.timestamp <= series.candles.back().timestamp)
      throw DataError("row " + std::to_string(row) + ": non-monotone timestamp");
    series.candles.push_back(c);
  }
  return series;
}

void save_candles(const std::filesystem::path& path, const CandleSeries& series) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write candle file: " + path.string());
  out << kHeader << "\n";
  for (const Candle& c : series.candles) {
    out << c.timestamp << ',' << format_double(c.open) << ',' << format_double(c.high) << ','
        << format_double(c.low) << ',' << format_double(c.close) << ','
        << format_double(c.volume) << "\n";
  }
}

CandleSeries regularize(const CandleSeries& series) {
  if (series.candles.empty()) throw DataError("regularize: empty series");
  CandleSeries out;
  out.symbol = series.symbol;
  out.interval_ms = series.interval_ms;
  const int64_t step = series.interval_ms;
  out.candles.reserve(series.candles.size());
  out.candles.push_back(series.candles.front());
  for (size_t i = 1; i < series.candles.size(); ++i) {
    const Candle& cur = series.candles[i];
    int64_t prev_ts = out.candles.back().timestamp;
    if (cur.timestamp <= prev_ts)
      throw DataError("regularize: non-increasing timestamp at input index " + std::to_string(i));
    const double fill_price = out.candles.back().close;
    for (int64_t ts = prev_ts + step; ts < cur.timestamp; ts += step) {
      // Flat synthetic bar: zero traded volume implies no intrabar range.
      out.candles.push_back(Candle{ts, fill_price, fill_price, fill_price, fill_price, 0.0});
    }
    out.candles.push_back(cur);
  }
  return out;
}

Index count_gaps(const CandleSeries& series) {
  if (series.candles.empty()) return 0;
  const int64_t span = series.candles.back().timestamp - series.candles.front().timestamp;
  const Index full = static_cast<Index>(span / series.interval_ms) + 1;
  return full - series.size();
}

ArrayXd closes(const CandleSeries& series) {
  ArrayXd out(series.size());
  for (Index i = 0; i < series.size(); ++i) out[i] = series.candles[static_cast<size_t>(i)].close;
  return out;
}

}  // namespace sigwf

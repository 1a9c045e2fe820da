#include "sigwf/klines.hpp"

#include <charconv>
#include <chrono>
#include <fstream>
#include <thread>
#include <unordered_set>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "sigwf/errors.hpp"

namespace sigwf {

namespace {

std::string number_field(const nlohmann::json& v, const char* what) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number()) return v.dump();
  throw DataError(std::string("kline response: unexpected type for ") + what);
}

double parse_price(const std::string& s, const char* what) {
  double v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw DataError(std::string("kline response: malformed ") + what + " '" + s + "'");
  return v;
}

}  // namespace

std::vector<RawKline> fetch_klines(const FetchOptions& opts, const std::string& symbol,
                                   int64_t start_ms, int64_t end_ms) {
  if (start_ms >= end_ms) throw ConfigError("fetch_klines: start must be < end");
  if (opts.base_url.empty()) throw ConfigError("fetch_klines: empty base URL");

  httplib::Client cli(opts.base_url);
  cli.set_connection_timeout(10, 0);
  cli.set_read_timeout(30, 0);

  std::vector<RawKline> out;
  int64_t cursor = start_ms;
  while (cursor < end_ms) {
    const std::string target = opts.path + "?symbol=" + symbol +
                               "&interval=1m&startTime=" + std::to_string(cursor) +
                               "&endTime=" + std::to_string(end_ms) +
                               "&limit=" + std::to_string(opts.page_limit);
    httplib::Result res;
    for (int attempt = 0;; ++attempt) {
      res = cli.Get(target);
      if (res && res->status == 200) break;
      if (attempt >= opts.max_retries) {
        const std::string why = res ? ("HTTP " + std::to_string(res->status))
                                    : httplib::to_string(res.error());
        throw DataError("fetch_klines: request failed after " +
                        std::to_string(opts.max_retries + 1) + " attempts (" + why + ")");
      }
      std::this_thread::sleep_for(
          std::chrono::milliseconds(opts.backoff_ms * (int64_t(1) << attempt)));
    }

    nlohmann::json page = nlohmann::json::parse(res->body, nullptr, false);
    if (page.is_discarded() || !page.is_array())
      throw DataError("fetch_klines: response is not a JSON array");
    if (page.empty()) break;

    int64_t last_open = cursor;
    size_t appended = 0;
    for (const nlohmann::json& row : page) {
      if (!row.is_array() || row.size() < 6)
        throw DataError("fetch_klines: kline row with fewer than 6 fields");
      if (!row[0].is_number_integer())
        throw DataError("fetch_klines: open-time is not an integer");
      RawKline k;
      k.open_time = row[0].get<int64_t>();
      k.open = number_field(row[1], "open");
      k.high = number_field(row[2], "high");
      k.low = number_field(row[3], "low");
      k.close = number_field(row[4], "close");
      k.volume = number_field(row[5], "volume");
      last_open = k.open_time;
      if (k.open_time < cursor) continue;  // server overlap at page boundary
      if (k.open_time >= end_ms) break;
      if (!out.empty() && k.open_time <= out.back().open_time) continue;
      out.push_back(std::move(k));
      ++appended;
    }
    if (last_open + kIntervalMs <= cursor && appended == 0) break;  // no forward progress
    if (static_cast<int>(page.size()) < opts.page_limit) break;     // final page
    cursor = last_open + kIntervalMs;
  }
  return out;
}

CandleSeries to_candle_series(const std::string& symbol, const std::vector<RawKline>& rows) {
  CandleSeries series;
  series.symbol = symbol;
  series.candles.reserve(rows.size());
  Index row_no = 0;
  for (const RawKline& k : rows) {
    ++row_no;
    Candle c;
    c.timestamp = k.open_time;
    c.open = parse_price(k.open, "open");
    c.high = parse_price(k.high, "high");
    c.low = parse_price(k.low, "low");
    c.close = parse_price(k.close, "close");
    c.volume = parse_price(k.volume, "volume");
    validate_candle(c, row_no);
    if (!series.candles.empty() && c.timestamp <= series.candles.back().timestamp)
      throw DataError("to_candle_series: non-monotone open time at row " + std::to_string(row_no));
    series.candles.push_back(c);
  }
  return series;
}

void write_raw_klines(const std::filesystem::path& path, const std::vector<RawKline>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write candle file: " + path.string());
  out << "timestamp,open,high,low,close,volume\n";
  for (const RawKline& k : rows)
    out << k.open_time << ',' << k.open << ',' << k.high << ',' << k.low << ',' << k.close << ','
        << k.volume << "\n";
}

std::vector<RawKline> dedupe_by_open_time(std::vector<RawKline> rows) {
  std::unordered_set<int64_t> seen;
  std::vector<RawKline> out;
  out.reserve(rows.size());
  for (RawKline& k : rows)
    if (seen.insert(k.open_time).second) out.push_back(std::move(k));
  return out;
}

}  // namespace sigwf

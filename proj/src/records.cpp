#include "sigwf/records.hpp"

#include <fstream>

#include "sigwf/errors.hpp"

namespace sigwf {

namespace {
constexpr const char* kArtifactVersion = "1.0.0";
}

json record_header(const std::string& digest) {
  json h;
  h["record"] = "header";
  h["digest"] = digest;
  h["version"] = kArtifactVersion;
  return h;
}

json epoch_to_json(const EpochRecord& e) {
  json j;
  j["record"] = "epoch";
  j["epoch"] = e.epoch;
  j["boundary"] = e.boundary;
  j["boundary_ts"] = e.boundary_ts;
  j["selected"] = e.selected;
  j["w_fit"] = e.params.win.w_fit;
  j["rho"] = e.params.win.rho;
  j["w_val"] = e.params.win.w_val;
  j["w_exec"] = e.params.win.w_exec;
  j["n_diff"] = e.params.sig.n_diff;
  j["w_ma"] = e.params.sig.w_ma;
  j["lambda1"] = e.params.sig.lambda1;
  j["lambda2"] = e.params.sig.lambda2;
  j["amp"] = e.params.sig.amp;
  j["j_val"] = e.score.j_val;
  j["pnl_val"] = e.score.pnl_val;
  j["turnover_val"] = e.score.turnover_val;
  j["t_eval"] = e.score.t_eval;
  j["oos_begin"] = e.oos_begin;
  j["oos_end"] = e.oos_end;
  j["oos_pnl"] = e.oos_pnl;
  j["carry_in"] = e.carry_in;
  j["carry_out"] = e.carry_out;
  return j;
}

EpochRecord epoch_from_json(const json& j) {
  EpochRecord e;
  e.epoch = j.at("epoch").get<int>();
  e.boundary = j.at("boundary").get<Index>();
  e.boundary_ts = j.at("boundary_ts").get<int64_t>();
  e.selected = j.at("selected").get<int>();
  e.params.win.w_fit = j.at("w_fit").get<int>();
  e.params.win.rho = j.at("rho").get<double>();
  e.params.win.w_val = j.at("w_val").get<int>();
  e.params.win.w_exec = j.at("w_exec").get<int>();
  e.params.sig.n_diff = j.at("n_diff").get<int>();
  e.params.sig.w_ma = j.at("w_ma").get<int>();
  e.params.sig.lambda1 = j.at("lambda1").get<double>();
  e.params.sig.lambda2 = j.at("lambda2").get<double>();
  e.params.sig.amp = j.at("amp").get<double>();
  e.score.candidate = e.selected;
  e.score.feasible = true;
  e.score.j_val = j.at("j_val").get<double>();
  e.score.pnl_val = j.at("pnl_val").get<double>();
  e.score.turnover_val = j.at("turnover_val").get<long>();
  e.score.t_eval = j.at("t_eval").get<Index>();
  e.oos_begin = j.at("oos_begin").get<Index>();
  e.oos_end = j.at("oos_end").get<Index>();
  e.oos_pnl = j.at("oos_pnl").get<double>();
  e.carry_in = j.at("carry_in").get<int>();
  e.carry_out = j.at("carry_out").get<int>();
  return e;
}

json performance_to_json(const PerformanceReport& rep) {
  json j;
  j["total_return"] = rep.total_return;
  j["volatility"] = rep.volatility;
  if (rep.downside_volatility) j["downside_volatility"] = *rep.downside_volatility;
  else j["downside_volatility"] = nullptr;
  j["max_drawdown"] = rep.max_drawdown;
  if (rep.sharpe) j["sharpe"] = *rep.sharpe;
  else j["sharpe"] = nullptr;
  if (rep.sortino) j["sortino"] = *rep.sortino;
  else j["sortino"] = nullptr;
  if (rep.calmar) j["calmar"] = *rep.calmar;
  else j["calmar"] = nullptr;
  j["ulcer_index"] = rep.ulcer_index;
  j["time_under_water"] = rep.time_under_water;
  j["total_trades"] = rep.total_trades;
  j["trades_per_1k"] = rep.trades_per_1k;
  j["bars"] = rep.bars;
  j["percentile_method"] = rep.percentile_method;
  j["downside_convention"] = rep.downside_convention;
  return j;
}

json duration_stats_to_json(const DurationStats& stats) {
  json j;
  j["empty"] = stats.empty;
  if (!stats.empty) {
    j["mean"] = stats.mean;
    j["median"] = stats.median;
    j["p25"] = stats.p25;
    j["p75"] = stats.p75;
    j["p90"] = stats.p90;
    j["max"] = stats.max;
    if (stats.max_start_ts) j["max_start_ts"] = *stats.max_start_ts;
    if (stats.max_end_ts) j["max_end_ts"] = *stats.max_end_ts;
    j["percentile_method"] = stats.percentile_method;
  }
  return j;
}

json frequencies_to_json(const SelectionFrequencies& freq) {
  json j;
  for (const auto& [dim, counts] : freq) {
    json c;
    for (const auto& [value, count] : counts) c[value] = count;
    j[dim] = c;
  }
  return j;
}

RecordWriter::RecordWriter(const std::filesystem::path& path, const std::string& digest,
                           bool append)
    : path_(path) {
  if (append && std::filesystem::exists(path)) return;
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write record file: " + path.string());
  out << record_header(digest).dump() << "\n";
}

void RecordWriter::write(const json& record) {
  std::ofstream out(path_, std::ios::binary | std::ios::app);
  if (!out) throw DataError("cannot append record file: " + path_.string());
  out << record.dump() << "\n";
}

void RecordWriter::flush() {}

std::vector<json> read_records(const std::filesystem::path& path,
                               const std::string& expect_digest) {
  std::ifstream in(path);
  if (!in) throw DataError("record file not found: " + path.string());
  std::vector<json> out;
  std::string line;
  bool saw_header = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded()) throw DataError("malformed record line in " + path.string());
    if (!saw_header) {
      if (j.value("record", "") != "header")
        throw DataError("record file missing header line: " + path.string());
      if (!expect_digest.empty() && j.value("digest", "") != expect_digest)
        throw DataError("record file digest mismatch in " + path.string() +
                        " (config or input data changed)");
      saw_header = true;
      continue;
    }
    out.push_back(std::move(j));
  }
  if (!saw_header) throw DataError("record file missing header line: " + path.string());
  return out;
}

}  // namespace sigwf

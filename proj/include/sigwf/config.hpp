#pragma once

#include <array>
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sigwf/demo.hpp"
#include "sigwf/synthetic.hpp"
#include "sigwf/walkforward.hpp"

namespace sigwf {

/// Full run configuration. Every field has a default; the effective-config
/// dump always renders all of them so no silent defaults exist.
struct RunConfig {
  // data source
  std::string data_path;
  std::string symbol{"SYNTH"};
  bool use_synthetic{true};
  SyntheticSpec synthetic;
  // fetch
  std::string klines_base_url{"https://api.binance.com"};
  int64_t fetch_start_ms{0};
  int64_t fetch_end_ms{0};
  int fetch_page_limit{1000};
  int fetch_max_retries{3};
  int fetch_backoff_ms{250};
  // pipeline
  PipelineConfig pipeline;
  SignalParams signal;  // fixed-parameter backtest / sweep defaults
  std::vector<double> thetas{0.6, 0.8, 1.0, 1.4, 1.6};
  // declared but not implemented; any nonzero value is a loud error
  double transaction_cost{0.0};
  // walk-forward
  Grid grid;
  long t0{-1};
  int workers{1};
  double tie_eps{0.0};
  // sweep
  long sweep_window{100000};
  // metrics conventions
  MetricsConfig metrics;
  // demo
  DemoConfig demo;
  // output
  std::string out_dir{"out"};
  bool resume{false};
};

RunConfig config_from_json(const nlohmann::ordered_json& j);
RunConfig load_config(const std::filesystem::path& path);

/// Complete dump: every field explicit, keys in a fixed order, byte-stable
/// across runs.
nlohmann::ordered_json effective_config(const RunConfig& cfg);

/// Digest over the effective config text plus the input data bytes (when a
/// data file is configured).
std::string run_digest(const RunConfig& cfg);

}  // namespace sigwf

#pragma once

#include "sigwf/config.hpp"

namespace sigwf::cli {

// Subcommand bodies. Each reads/writes only through RunConfig and the
// filesystem; main() maps exceptions to exit codes (config=2, data=3,
// pipeline=4).
int cmd_fetch(const RunConfig& cfg);
int cmd_backtest(const RunConfig& cfg);
int cmd_walkforward(const RunConfig& cfg);
int cmd_demo(const RunConfig& cfg);
int cmd_sweep(const RunConfig& cfg);
int cmd_report(const RunConfig& cfg);

/// Load (or synthesize) the configured candle data, regularized.
CandleSeries load_input_data(const RunConfig& cfg, Index* gap_fills = nullptr);

}  // namespace sigwf::cli

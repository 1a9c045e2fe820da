#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sigwf/decision.hpp"
#include "sigwf/series.hpp"

namespace sigwf {

struct MetricsConfig {
  // Percentiles: linear interpolation between order statistics, or
  // nearest-rank.
  bool nearest_rank{false};
  // Downside volatility: population std of the strictly negative returns
  // about their own mean (default), or the rms of negative returns about 0.
  bool downside_about_zero{false};
};

/// Risk/return summary of one equity path. Ratios are per-bar
/// (non-annualized); annualized Sharpe = sharpe * sqrt(365*24*60).
/// Undefined ratios (zero variance, no losses, no drawdown) are absent
/// rather than 0.
struct PerformanceReport {
  double total_return{0};
  double volatility{0};
  std::optional<double> downside_volatility;
  double max_drawdown{0};  // in [-1, 0]
  std::optional<double> sharpe;
  std::optional<double> sortino;
  std::optional<double> calmar;
  double ulcer_index{0};       // percent units
  double time_under_water{0};  // fraction in [0, 1]
  long total_trades{0};
  double trades_per_1k{0};
  Index bars{0};
  std::string percentile_method{"linear"};
  std::string downside_convention{"subsample_std"};
};

/// min over t of V_t / max_{tau<=t} V_tau - 1. Throws DataError on empty
/// input; equity must be positive.
double max_drawdown(const ArrayXd& equity);

/// total_return / |max_drawdown|; no annualization.
double calmar_ratio(double total_return, double mdd);

PerformanceReport summarize(const ArrayXd& returns, const ArrayXd& equity,
                            const PositionPath& path, const MetricsConfig& cfg = {});

/// Order statistics of non-flat position durations. `empty` is the explicit
/// no-durations value.
struct DurationStats {
  bool empty{true};
  double mean{0}, median{0}, p25{0}, p75{0}, p90{0};
  Index max{0};
  std::optional<int64_t> max_start_ts, max_end_ts;  // when timestamps known
  std::string percentile_method{"linear"};
};

DurationStats duration_stats(const DurationList& durations,
                             const std::vector<int64_t>* timestamps = nullptr,
                             const MetricsConfig& cfg = {});

}  // namespace sigwf

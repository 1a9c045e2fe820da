#include "sigwf/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "sigwf/errors.hpp"

namespace sigwf {

namespace {

double percentile(const std::vector<double>& sorted, double p, bool nearest_rank) {
  const size_t n = sorted.size();
  if (n == 1) return sorted[0];
  if (nearest_rank) {
    const size_t rank = static_cast<size_t>(std::ceil(p / 100.0 * static_cast<double>(n)));
    return sorted[std::min(n - 1, rank > 0 ? rank - 1 : 0)];
  }
  const double h = (static_cast<double>(n) - 1.0) * p / 100.0;
  const size_t lo = static_cast<size_t>(std::floor(h));
  const size_t hi = std::min(n - 1, lo + 1);
  const double frac = h - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

double population_std(const std::vector<double>& xs) {
  const double n = static_cast<double>(xs.size());
  double mean = 0;
  for (double x : xs) mean += x;
  mean /= n;
  double ss = 0;
  for (double x : xs) {
    const double d = x - mean;
    ss += d * d;
  }
  return std::sqrt(ss / n);
}

}  // namespace

double max_drawdown(const ArrayXd& equity) {
  if (equity.size() == 0) throw DataError("max_drawdown: empty equity series");
  double peak = equity[0];
  double mdd = 0;
  for (Index t = 0; t < equity.size(); ++t) {
    if (!(equity[t] > 0)) throw DataError("max_drawdown: equity must be positive");
    peak = std::max(peak, equity[t]);
    mdd = std::min(mdd, equity[t] / peak - 1.0);
  }
  return mdd;
}

double calmar_ratio(double total_return, double mdd) {
  return total_return / std::abs(mdd);
}

PerformanceReport summarize(const ArrayXd& returns, const ArrayXd& equity,
                            const PositionPath& path, const MetricsConfig& cfg) {
  if (returns.size() + 1 != equity.size())
    throw PipelineError("summarize: equity must be returns.size() + 1 long");
  if (returns.size() == 0) throw PipelineError("summarize: empty returns");

  PerformanceReport rep;
  rep.bars = returns.size();
  rep.percentile_method = cfg.nearest_rank ? "nearest_rank" : "linear";
  rep.downside_convention = cfg.downside_about_zero ? "rms_about_zero" : "subsample_std";

  rep.total_return = equity[equity.size() - 1] - 1.0;

  const double n = static_cast<double>(returns.size());
  double mean = 0;
  for (Index i = 0; i < returns.size(); ++i) mean += returns[i];
  mean /= n;
  double ss = 0;
  for (Index i = 0; i < returns.size(); ++i) {
    const double d = returns[i] - mean;
    ss += d * d;
  }
  rep.volatility = std::sqrt(ss / n);

  std::vector<double> losses;
  for (Index i = 0; i < returns.size(); ++i)
    if (returns[i] < 0) losses.push_back(returns[i]);
  if (!losses.empty()) {
    if (cfg.downside_about_zero) {
      double ss2 = 0;
      for (double l : losses) ss2 += l * l;
      rep.downside_volatility = std::sqrt(ss2 / static_cast<double>(losses.size()));
    } else {
      rep.downside_volatility = population_std(losses);
    }
  }

  rep.max_drawdown = max_drawdown(equity);

  if (rep.volatility > 0) rep.sharpe = mean / rep.volatility;
  if (rep.downside_volatility && *rep.downside_volatility > 0)
    rep.sortino = mean / *rep.downside_volatility;
  if (rep.max_drawdown < 0) rep.calmar = calmar_ratio(rep.total_return, rep.max_drawdown);

  // Drawdown profile: peak includes the current bar, so new highs are "not
  // under water" and carry zero drawdown.
  double peak = equity[0];
  double sum_d2 = 0;
  Index under = 0;
  for (Index t = 0; t < equity.size(); ++t) {
    peak = std::max(peak, equity[t]);
    const double d_pct = 100.0 * (equity[t] / peak - 1.0);
    sum_d2 += d_pct * d_pct;
    if (equity[t] < peak) ++under;
  }
  rep.ulcer_index = std::sqrt(sum_d2 / static_cast<double>(equity.size()));
  rep.time_under_water = static_cast<double>(under) / static_cast<double>(equity.size());

  rep.total_trades = turnover(path);
  rep.trades_per_1k = 1000.0 * static_cast<double>(rep.total_trades) / n;
  return rep;
}

DurationStats duration_stats(const DurationList& durations, const std::vector<int64_t>* timestamps,
                             const MetricsConfig& cfg) {
  DurationStats stats;
  stats.percentile_method = cfg.nearest_rank ? "nearest_rank" : "linear";
  if (durations.lengths.empty()) return stats;

  stats.empty = false;
  std::vector<double> sorted;
  sorted.reserve(durations.lengths.size());
  double sum = 0;
  Index max_len = 0;
  size_t max_at = 0;
  for (size_t i = 0; i < durations.lengths.size(); ++i) {
    const Index len = durations.lengths[i];
    sorted.push_back(static_cast<double>(len));
    sum += static_cast<double>(len);
    if (len > max_len) {
      max_len = len;
      max_at = i;
    }
  }
  std::sort(sorted.begin(), sorted.end());
  stats.mean = sum / static_cast<double>(sorted.size());
  stats.median = percentile(sorted, 50, cfg.nearest_rank);
  stats.p25 = percentile(sorted, 25, cfg.nearest_rank);
  stats.p75 = percentile(sorted, 75, cfg.nearest_rank);
  stats.p90 = percentile(sorted, 90, cfg.nearest_rank);
  stats.max = max_len;

  if (timestamps && !timestamps->empty()) {
    const Index start = durations.start_index[max_at];
    const Index end = start + max_len - 1;
    if (end < static_cast<Index>(timestamps->size())) {
      stats.max_start_ts = (*timestamps)[static_cast<size_t>(start)];
      stats.max_end_ts = (*timestamps)[static_cast<size_t>(end)];
    }
  }
  return stats;
}

}  // namespace sigwf

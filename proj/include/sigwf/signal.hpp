#pragma once

#include <array>
#include <cmath>
#include <map>
#include <utility>
#include <vector>

#include "sigwf/normalization.hpp"
#include "sigwf/series.hpp"

namespace sigwf {

struct SignalParams {
  std::array<double, kNumIndicators> weights{0.25, 0.25, 0.25, 0.25};
  int n_diff{2};
  int w_ma{2};
  double lambda1{1.0};
  double lambda2{1.0};
  double amp{1.0};
};

/// Composite level signal, its causal derivative channel and the gated mix
/// f = c1*f0 + c2*d_smooth, all aligned to the bar grid.
struct SignalFrame {
  Series f0;        // dimensionless level
  Series d_raw;     // per-bar slope of f0
  Series d_smooth;  // trailing-MA smoothed slope
  Series c1, c2;    // gate coefficients
  Series f;
  SignalParams params;
  Index valid_from{0};
};

/// Gate evaluation at one bar. Kept scalar so the backtest and walk-forward
/// paths share bit-identical arithmetic.
struct GatePoint {
  double c1, c2, f;
};
inline GatePoint gate_point(double f0, double d_smooth, const SignalParams& p) {
  const double c1 = std::tanh(std::abs(p.lambda1 * f0));
  const double c2 = p.amp * (1.0 - std::tanh(std::abs(p.lambda2 * f0)));
  return {c1, c2, c1 * f0 + c2 * d_smooth};
}

/// f0[t] = sum_k weights[k] * Z_t^(k). Throws ConfigError unless the weights
/// are convex (non-negative, summing to 1 within 1e-12).
Series composite(const NormalizedPanel& panel, const std::array<double, kNumIndicators>& weights);

/// out[t] = (f0[t] - f0[t - n_diff]) / n_diff.
Series causal_derivative(const Series& f0, int n_diff);

/// Trailing moving average over {t - w_ma + 1, ..., t}, inclusive of t.
Series smooth_ma(const Series& x, int w_ma);

/// Element-wise gates over the aligned valid region.
void gate(const Series& f0, const Series& d_smooth, const SignalParams& p,
          Series& c1, Series& c2, Series& f);

SignalFrame build_frame(const NormalizedPanel& panel, const SignalParams& p);

/// Warm-up of the gated signal for given derivative parameters:
/// panel valid_from + n_diff + w_ma - 1.
Index frame_valid_from(const NormalizedPanel& panel, int n_diff, int w_ma);

/// Precomputed smoothed-derivative channels per (n_diff, w_ma), shared by
/// the walk-forward grid. Construct with every pair the grid needs, then
/// read concurrently; get() on a missing pair throws PipelineError.
class DerivativeCache {
 public:
  DerivativeCache() = default;
  DerivativeCache(const Series& f0, const std::vector<std::pair<int, int>>& diff_ma_pairs);
  const Series& get(int n_diff, int w_ma) const;

 private:
  std::map<std::pair<int, int>, Series> cache_;
};

/// Horizon trend (mean of the next H prices vs mean of the trailing H,
/// relative). Diagnostic only: the result is flagged non-causal and the
/// decision stage refuses it.
Series horizon_trend(const ArrayXd& prices, int H);

/// f(t) = sin(a*t + A0*sin(w*t)) + m*t - 1 on the given sample times.
ArrayXd demo_signal(double a, double A0, double w, double m, const ArrayXd& t);

struct LeadStats {
  bool empty{true};        // no crossings found in one of the series
  double mean_lead{0};     // samples; positive = enhanced leads
  double median_lead{0};
  int matched{0};
  int unmatched_enhanced{0};
  int unmatched_base{0};
};

/// Match each crossing of ref_level in `enhanced` to the nearest
/// same-direction crossing in `base` within `radius` samples (radius < 0:
/// half the median inter-crossing gap of base). Lead = base index - enhanced
/// index.
LeadStats zero_crossing_lead(const ArrayXd& base, const ArrayXd& enhanced, double ref_level,
                             double radius = -1.0);

struct SweepRow {
  std::string axis;  // "lambda1" | "lambda2" | "amp"
  double value;      // the swept value
  double lambda1, lambda2, amp;
  double median_abs_f;
};

struct GateGrid {
  std::vector<double> lambda1, lambda2, amp;
};

/// median|F| per configuration: each axis swept with the other two held at
/// `fixed`; n_diff/w_ma come from `fixed` as well. The median is taken over
/// the trailing tail_window valid bars (tail_window < 0: all valid bars).
std::vector<SweepRow> median_abs_sweep(const NormalizedPanel& panel, const GateGrid& grid,
                                       const SignalParams& fixed, Index tail_window = -1);

}  // namespace sigwf

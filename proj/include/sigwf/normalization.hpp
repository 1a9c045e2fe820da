#pragma once

#include <array>

#include "sigwf/indicators.hpp"
#include "sigwf/series.hpp"

namespace sigwf {

/// Robustly normalized indicator panel: Z = (I - m) / s with m the causal
/// rolling median over the w_norm bars strictly prior to t and s the causal
/// MAD of the per-bar centered series plus the floor eps. Z is dimensionless;
/// m and s stay in indicator units.
struct NormalizedPanel {
  std::array<Series, kNumIndicators> z;
  std::array<Series, kNumIndicators> baseline;  // m_t
  std::array<Series, kNumIndicators> scale;     // s_t >= eps
  int w_norm{0};
  double eps{0};

  Index length() const { return z[0].size(); }
  /// First index where every key's Z is valid.
  Index valid_from() const;
};

/// out[t] = median of {x[t-w], ..., x[t-1]}; the value at t itself is
/// excluded. Valid from x.valid_from + w.
Series rolling_median_causal(const Series& x, int w);

/// out[t] = median of {|centered[tau]| : t-w <= tau < t} + eps.
/// Valid from centered.valid_from + w.
Series rolling_mad_causal(const Series& centered, int w, double eps);

/// Per key: m, centered = I - m (each bar against its own baseline),
/// s = MAD(centered) + eps, Z = (I - m)/s. Per-key valid_from is the
/// indicator's valid_from + 2*w_norm; series shorter than the warm-up get
/// an empty valid region, not an exception.
NormalizedPanel normalize(const IndicatorPanel& panel, int w_norm, double eps);

}  // namespace sigwf

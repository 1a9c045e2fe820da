#include "sigwf/normalization.hpp"

#include <algorithm>
#include <cmath>

#include "sigwf/errors.hpp"
#include "sigwf/rolling.hpp"

namespace sigwf {

Index NormalizedPanel::valid_from() const {
  Index v = 0;
  for (const Series& s : z) v = std::max(v, s.valid_from);
  return v;
}

Series rolling_median_causal(const Series& x, int w) {
  if (w < 1) throw ConfigError("rolling_median_causal: window must be >= 1");
  const Index len = x.size();
  const Index vf = x.valid_from;
  Series out = nan_series(len, std::min<Index>(vf + w, len), x.causal);
  SlidingMedian<double> med;
  for (Index t = vf; t < len; ++t) {
    if (t - vf >= w) {
      out.values[t] = med.median();
      med.evict(x.values[t - w]);
    }
    med.insert(x.values[t]);
  }
  return out;
}

Series rolling_mad_causal(const Series& centered, int w, double eps) {
  if (w < 1) throw ConfigError("rolling_mad_causal: window must be >= 1");
  if (!(eps > 0)) throw ConfigError("rolling_mad_causal: eps must be > 0");
  const Index len = centered.size();
  const Index vf = centered.valid_from;
  Series out = nan_series(len, std::min<Index>(vf + w, len), centered.causal);
  SlidingMedian<double> med;
  for (Index t = vf; t < len; ++t) {
    if (t - vf >= w) {
      out.values[t] = med.median() + eps;
      med.evict(std::abs(centered.values[t - w]));
    }
    med.insert(std::abs(centered.values[t]));
  }
  return out;
}

NormalizedPanel normalize(const IndicatorPanel& panel, int w_norm, double eps) {
  if (w_norm < 2) throw ConfigError("normalize: w_norm must be >= 2");
  if (!(eps > 0)) throw ConfigError("normalize: eps must be > 0");
  NormalizedPanel out;
  out.w_norm = w_norm;
  out.eps = eps;
  const Index len = panel.length();
  for (int k = 0; k < kNumIndicators; ++k) {
    const Series& ind = panel.series[k];
    Series m = rolling_median_causal(ind, w_norm);
    // Each bar is centered against its own baseline.
    Series centered = nan_series(len, m.valid_from);
    for (Index t = m.valid_from; t < len; ++t) centered.values[t] = ind.values[t] - m.values[t];
    Series s = rolling_mad_causal(centered, w_norm, eps);
    Series z = nan_series(len, s.valid_from);
    for (Index t = s.valid_from; t < len; ++t)
      z.values[t] = (ind.values[t] - m.values[t]) / s.values[t];
    out.baseline[k] = std::move(m);
    out.scale[k] = std::move(s);
    out.z[k] = std::move(z);
  }
  return out;
}

}  // namespace sigwf

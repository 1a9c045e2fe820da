#include "sigwf/signal.hpp"

#include <algorithm>
#include <cmath>

#include "sigwf/errors.hpp"

namespace sigwf {

Series composite(const NormalizedPanel& panel, const std::array<double, kNumIndicators>& weights) {
  double sum = 0;
  for (double w : weights) {
    if (w < 0) throw ConfigError("composite: weights must be non-negative");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-12)
    throw ConfigError("composite: weights must sum to 1 (got " + std::to_string(sum) + ")");

  const Index len = panel.length();
  const Index vf = panel.valid_from();
  Series out = nan_series(len, vf);
  for (Index t = vf; t < len; ++t) {
    double acc = 0;
    for (int k = 0; k < kNumIndicators; ++k) acc += weights[k] * panel.z[k].values[t];
    out.values[t] = acc;
  }
  return out;
}

Series causal_derivative(const Series& f0, int n_diff) {
  if (n_diff < 1) throw ConfigError("causal_derivative: n_diff must be >= 1");
  const Index len = f0.size();
  Series out = nan_series(len, std::min<Index>(f0.valid_from + n_diff, len), f0.causal);
  for (Index t = out.valid_from; t < len; ++t)
    out.values[t] = (f0.values[t] - f0.values[t - n_diff]) / n_diff;
  return out;
}

Series smooth_ma(const Series& x, int w_ma) {
  if (w_ma < 1) throw ConfigError("smooth_ma: w_ma must be >= 1");
  const Index len = x.size();
  Series out = nan_series(len, std::min<Index>(x.valid_from + w_ma - 1, len), x.causal);
  for (Index t = out.valid_from; t < len; ++t) {
    double sum = 0;
    for (Index tau = t - w_ma + 1; tau <= t; ++tau) sum += x.values[tau];
    out.values[t] = sum / w_ma;
  }
  return out;
}

void gate(const Series& f0, const Series& d_smooth, const SignalParams& p,
          Series& c1, Series& c2, Series& f) {
  const Index len = f0.size();
  const Index vf = std::max(f0.valid_from, d_smooth.valid_from);
  const bool causal = f0.causal && d_smooth.causal;
  c1 = nan_series(len, vf, causal);
  c2 = nan_series(len, vf, causal);
  f = nan_series(len, vf, causal);
  for (Index t = vf; t < len; ++t) {
    const GatePoint g = gate_point(f0.values[t], d_smooth.values[t], p);
    c1.values[t] = g.c1;
    c2.values[t] = g.c2;
    f.values[t] = g.f;
  }
}

Index frame_valid_from(const NormalizedPanel& panel, int n_diff, int w_ma) {
  return panel.valid_from() + n_diff + w_ma - 1;
}

SignalFrame build_frame(const NormalizedPanel& panel, const SignalParams& p) {
  SignalFrame frame;
  frame.params = p;
  frame.f0 = composite(panel, p.weights);
  if (!frame.f0.has_valid())
    throw PipelineError("build_frame: no valid samples after normalization warm-up");
  frame.d_raw = causal_derivative(frame.f0, p.n_diff);
  frame.d_smooth = smooth_ma(frame.d_raw, p.w_ma);
  gate(frame.f0, frame.d_smooth, p, frame.c1, frame.c2, frame.f);
  frame.valid_from = frame.f.valid_from;
  if (frame.valid_from >= frame.f.size())
    throw PipelineError("build_frame: insufficient valid length for derivative windows");
  return frame;
}

DerivativeCache::DerivativeCache(const Series& f0,
                                 const std::vector<std::pair<int, int>>& diff_ma_pairs) {
  for (const auto& [nd, wm] : diff_ma_pairs) {
    if (cache_.count({nd, wm})) continue;
    cache_.emplace(std::make_pair(nd, wm), smooth_ma(causal_derivative(f0, nd), wm));
  }
}

const Series& DerivativeCache::get(int n_diff, int w_ma) const {
  auto it = cache_.find({n_diff, w_ma});
  if (it == cache_.end())
    throw PipelineError("DerivativeCache: missing pair (" + std::to_string(n_diff) + ", " +
                        std::to_string(w_ma) + ")");
  return it->second;
}

Series horizon_trend(const ArrayXd& prices, int H) {
  if (H < 1) throw ConfigError("horizon_trend: H must be >= 1");
  const Index len = prices.size();
  // Non-causal diagnostic: needs H future bars, so the last H entries stay
  // NaN as well.
  Series out = nan_series(len, std::min<Index>(H - 1, len), /*causal=*/false);
  for (Index t = H - 1; t + H < len; ++t) {
    double past = 0, fut = 0;
    for (Index i = 0; i < H; ++i) {
      past += prices[t - i];
      fut += prices[t + 1 + i];
    }
    past /= H;
    fut /= H;
    out.values[t] = (fut - past) / past;
  }
  return out;
}

ArrayXd demo_signal(double a, double A0, double w, double m, const ArrayXd& t) {
  ArrayXd out(t.size());
  for (Index i = 0; i < t.size(); ++i)
    out[i] = std::sin(a * t[i] + A0 * std::sin(w * t[i])) + m * t[i] - 1.0;
  return out;
}

namespace {

struct Crossing {
  Index index;
  int direction;  // +1 up, -1 down
};

std::vector<Crossing> find_crossings(const ArrayXd& x, double ref) {
  std::vector<Crossing> out;
  for (Index i = 1; i < x.size(); ++i) {
    const double a = x[i - 1] - ref;
    const double b = x[i] - ref;
    if (a < 0 && b > 0) out.push_back({i, +1});
    else if (a > 0 && b < 0) out.push_back({i, -1});
  }
  return out;
}

}  // namespace

LeadStats zero_crossing_lead(const ArrayXd& base, const ArrayXd& enhanced, double ref_level,
                             double radius) {
  if (base.size() != enhanced.size())
    throw PipelineError("zero_crossing_lead: series must share the grid");
  const auto base_x = find_crossings(base, ref_level);
  const auto enh_x = find_crossings(enhanced, ref_level);

  LeadStats stats;
  if (base_x.empty() || enh_x.empty()) {
    stats.empty = true;
    stats.unmatched_enhanced = static_cast<int>(enh_x.size());
    stats.unmatched_base = static_cast<int>(base_x.size());
    return stats;
  }

  if (radius < 0) {
    // Half the median inter-crossing gap of the base keeps matches within
    // one oscillation period.
    std::vector<double> gaps;
    for (size_t i = 1; i < base_x.size(); ++i)
      gaps.push_back(static_cast<double>(base_x[i].index - base_x[i - 1].index));
    if (gaps.empty()) {
      radius = static_cast<double>(base.size());
    } else {
      std::sort(gaps.begin(), gaps.end());
      const size_t mid = gaps.size() / 2;
      const double med =
          (gaps.size() % 2) ? gaps[mid] : (gaps[mid - 1] + gaps[mid]) / 2.0;
      radius = med / 2.0;
    }
  }

  std::vector<double> leads;
  std::vector<bool> base_used(base_x.size(), false);
  for (const Crossing& e : enh_x) {
    double best = radius + 1;
    int best_idx = -1;
    for (size_t b = 0; b < base_x.size(); ++b) {
      if (base_x[b].direction != e.direction) continue;
      const double dist = std::abs(static_cast<double>(base_x[b].index - e.index));
      if (dist < best) {
        best = dist;
        best_idx = static_cast<int>(b);
      }
    }
    if (best_idx >= 0 && best <= radius) {
      leads.push_back(static_cast<double>(base_x[static_cast<size_t>(best_idx)].index - e.index));
      base_used[static_cast<size_t>(best_idx)] = true;
    } else {
      ++stats.unmatched_enhanced;
    }
  }
  for (bool used : base_used)
    if (!used) ++stats.unmatched_base;

  if (leads.empty()) {
    stats.empty = true;
    return stats;
  }
  stats.empty = false;
  stats.matched = static_cast<int>(leads.size());
  double sum = 0;
  for (double l : leads) sum += l;
  stats.mean_lead = sum / static_cast<double>(leads.size());
  std::sort(leads.begin(), leads.end());
  const size_t mid = leads.size() / 2;
  stats.median_lead = (leads.size() % 2) ? leads[mid] : (leads[mid - 1] + leads[mid]) / 2.0;
  return stats;
}

namespace {

double median_abs_f(const Series& f0, const Series& d, const SignalParams& p, Index tail) {
  Index vf = std::max(f0.valid_from, d.valid_from);
  if (tail >= 0 && f0.size() - vf > tail) vf = f0.size() - tail;
  std::vector<double> mags;
  mags.reserve(static_cast<size_t>(f0.size() - vf));
  for (Index t = vf; t < f0.size(); ++t)
    mags.push_back(std::abs(gate_point(f0.values[t], d.values[t], p).f));
  if (mags.empty()) throw PipelineError("median_abs_sweep: empty valid region");
  std::sort(mags.begin(), mags.end());
  const size_t mid = mags.size() / 2;
  return (mags.size() % 2) ? mags[mid] : (mags[mid - 1] + mags[mid]) / 2.0;
}

}  // namespace

std::vector<SweepRow> median_abs_sweep(const NormalizedPanel& panel, const GateGrid& grid,
                                       const SignalParams& fixed, Index tail_window) {
  Series f0 = composite(panel, fixed.weights);
  Series d = smooth_ma(causal_derivative(f0, fixed.n_diff), fixed.w_ma);

  std::vector<SweepRow> rows;
  auto sweep_axis = [&](const std::string& axis, const std::vector<double>& values) {
    for (double v : values) {
      SignalParams p = fixed;
      if (axis == "lambda1") p.lambda1 = v;
      else if (axis == "lambda2") p.lambda2 = v;
      else p.amp = v;
      rows.push_back({axis, v, p.lambda1, p.lambda2, p.amp, median_abs_f(f0, d, p)});
    }
  };
  sweep_axis("lambda1", grid.lambda1);
  sweep_axis("lambda2", grid.lambda2);
  sweep_axis("amp", grid.amp);
  return rows;
}

}  // namespace sigwf

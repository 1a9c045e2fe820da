#include "sigwf/demo.hpp"

#include <algorithm>
#include <cmath>

#include "sigwf/errors.hpp"

namespace sigwf {

DemoResult run_demo(const DemoConfig& cfg) {
  if (!(cfg.dt > 0) || !(cfg.t_max > 0)) throw ConfigError("demo: dt and t_max must be > 0");
  if (cfg.n_backdiff < 1) throw ConfigError("demo: n_backdiff must be >= 1");

  const Index n_raw = static_cast<Index>(std::floor(cfg.t_max / cfg.dt)) + 1;
  ArrayXd t_raw(n_raw);
  for (Index i = 0; i < n_raw; ++i) t_raw[i] = cfg.dt * static_cast<double>(i);
  const ArrayXd f_raw = demo_signal(cfg.a, cfg.a0, cfg.w, cfg.m, t_raw);

  const Index k = cfg.n_backdiff;
  if (n_raw <= k) throw ConfigError("demo: grid too short for the backward difference");
  const Index n = n_raw - k;

  DemoResult out;
  out.t = t_raw.segment(k, n);
  out.f = f_raw.segment(k, n);
  out.dfdt.resize(n);
  const double denom = static_cast<double>(k) * cfg.dt;
  for (Index i = 0; i < n; ++i) out.dfdt[i] = (f_raw[k + i] - f_raw[i]) / denom;

  for (double amp : cfg.amps) {
    ArrayXd enhanced(n);
    for (Index i = 0; i < n; ++i) enhanced[i] = out.f[i] + amp * out.dfdt[i];
    out.enhanced_lead.emplace_back(amp, zero_crossing_lead(out.f, enhanced, 0.0));
    out.enhanced.emplace_back(amp, std::move(enhanced));
  }

  // Threshold for "away from zero-crossings": the median magnitude of f.
  std::vector<double> mags(static_cast<size_t>(n));
  for (Index i = 0; i < n; ++i) mags[static_cast<size_t>(i)] = std::abs(out.f[i]);
  std::sort(mags.begin(), mags.end());
  const size_t mid = mags.size() / 2;
  const double margin = (mags.size() % 2) ? mags[mid] : (mags[mid - 1] + mags[mid]) / 2.0;

  for (double l2 : cfg.lambda2s) {
    ArrayXd c2(n), gated(n);
    for (Index i = 0; i < n; ++i) {
      // Saturated-lambda1 limit: c1 == 1 identically.
      c2[i] = cfg.gate_amp * (1.0 - std::tanh(std::abs(l2 * out.f[i])));
      gated[i] = out.f[i] + c2[i] * out.dfdt[i];
    }
    double sum = 0;
    Index away = 0;
    for (Index i = 0; i < n; ++i) {
      if (std::abs(out.f[i]) >= margin) {
        sum += std::abs(c2[i]);
        ++away;
      }
    }
    out.mean_abs_c2_away.emplace_back(l2, away > 0 ? sum / static_cast<double>(away) : 0.0);
    out.gated_lead.emplace_back(l2, zero_crossing_lead(out.f, gated, 0.0));
    out.gated_c2.emplace_back(l2, std::move(c2));
    out.gated.emplace_back(l2, std::move(gated));
  }
  return out;
}

}  // namespace sigwf

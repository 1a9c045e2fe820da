#pragma once

#include <utility>
#include <vector>

#include "sigwf/series.hpp"
#include "sigwf/signal.hpp"

namespace sigwf {

/// Synthetic derivative-leading laboratory: an oscillatory drifting signal,
/// its n-step backward-difference derivative, ungated derivative-enhanced
/// variants per amplitude, and gated variants (c1 pinned at 1, the saturated
/// lambda1 limit) per lambda2.
struct DemoConfig {
  double a{0.5}, a0{2.0}, w{1.0}, m{0.1};
  double dt{0.01};
  double t_max{20.0};
  int n_backdiff{5};
  std::vector<double> amps{2.0, 5.0, 10.0};
  std::vector<double> lambda2s{0.0, 0.5, 1.0, 2.0};
  double gate_amp{10.0};
};

struct DemoResult {
  ArrayXd t;      // sample times on the common valid slice
  ArrayXd f;      // base signal
  ArrayXd dfdt;   // backward finite difference
  std::vector<std::pair<double, ArrayXd>> enhanced;        // per amp: f + A*f'
  std::vector<std::pair<double, LeadStats>> enhanced_lead; // per amp
  std::vector<std::pair<double, ArrayXd>> gated;           // per lambda2: f + c2*f'
  std::vector<std::pair<double, ArrayXd>> gated_c2;        // per lambda2
  std::vector<std::pair<double, LeadStats>> gated_lead;    // per lambda2
  std::vector<std::pair<double, double>> mean_abs_c2_away; // per lambda2, |f| >= median|f|
};

DemoResult run_demo(const DemoConfig& cfg);

}  // namespace sigwf

#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "sigwf/decision.hpp"
#include "sigwf/market_data.hpp"
#include "sigwf/metrics.hpp"
#include "sigwf/signal.hpp"

namespace sigwf {

/// Run-level pipeline constants (not part of the searched grid).
struct PipelineConfig {
  IndicatorConfig indicators;
  int w_norm{5000};
  double eps{1e-9};
  std::array<double, kNumIndicators> weights{0.25, 0.25, 0.25, 0.25};
};

/// Windows derived from (w_fit, rho): w_val = round(w_fit / rho) and
/// w_exec = w_val.
struct WindowParams {
  int w_fit{0};
  double rho{0};
  int w_val{0};
  int w_exec{0};
};

WindowParams derive_windows(int w_fit, double rho);

/// One grid candidate: signal-construction parameters plus window
/// parameters. The hysteresis threshold theta is a run-level constant.
struct ParamSet {
  SignalParams sig;
  WindowParams win;
};

struct Grid {
  std::vector<int> n_diff{2};
  std::vector<int> w_ma{2};
  std::vector<double> lambda1{0.01, 0.5, 1.0, 1.5};
  std::vector<double> lambda2{0.01, 0.5, 1.0, 1.5};
  std::vector<double> amp{0.75, 1.0, 2.0};
  std::vector<int> w_fit{720, 1440, 2880, 7200, 12000};
  std::vector<double> rho{2, 3, 5, 6};

  /// Deterministic enumeration: w_fit, rho, n_diff, w_ma, lambda1, lambda2,
  /// amp, slowest to fastest. Ties in selection fall back to this order.
  std::vector<ParamSet> enumerate() const;
  std::size_t cardinality() const;
};

struct CandidateScore {
  int candidate{-1};
  bool feasible{false};
  double pnl_val{0};
  double j_val{0};
  long turnover_val{0};
  Index t_eval{0};
};

/// pnl = prod(1+R) - 1 over the window; j = pnl / sqrt(t_eval).
/// Throws PipelineError on an empty window.
CandidateScore objective(const ArrayXd& returns);

/// argmax of j among feasible scores; within tie_eps of the max the lowest
/// turnover wins, remaining ties go to the lowest candidate index. Returns
/// -1 when nothing is feasible.
int select(const std::vector<CandidateScore>& scores, double tie_eps = 0.0);

struct EpochRecord {
  int epoch{0};
  Index boundary{0};
  int64_t boundary_ts{0};
  int selected{-1};        // candidate index in grid enumeration order
  ParamSet params;
  CandidateScore score;
  Index oos_begin{0}, oos_end{0};
  double oos_pnl{0};
  int carry_in{0}, carry_out{0};
  ArrayXd oos_returns;
  ArrayXi oos_positions;
};

struct WalkForwardResult {
  std::vector<EpochRecord> epochs;
  Index t0{0};
  double theta{0};
  ArrayXd global_returns;   // concatenated OOS returns
  ArrayXd global_equity;    // length global_returns.size() + 1, starts at 1
  ArrayXi global_positions; // concatenated OOS positions
  std::vector<int64_t> oos_timestamps;
  Index skipped_candidates{0};  // infeasible (boundary, candidate) pairs
};

/// Immutable per-dataset state shared by every candidate evaluation.
struct WalkForwardInputs {
  ArrayXd close;
  std::vector<int64_t> timestamps;
  NormalizedPanel panel;
  Series f0;
  DerivativeCache deriv;
};

WalkForwardInputs prepare_inputs(const CandleSeries& data, const PipelineConfig& pipe,
                                 const Grid& grid);

/// Validation score for one candidate at boundary t: signal warm-started
/// from the earliest available bar, hysteresis entered flat, returns taken
/// on [t - w_val, t) only. Reads no bar at index >= t. Infeasible (too
/// little history for w_fit + w_val past the warm-up) yields
/// feasible = false.
CandidateScore evaluate_candidate(const WalkForwardInputs& in, const ParamSet& params,
                                  double theta, Index boundary);

struct WalkForwardOptions {
  Index t0{-1};        // -1: earliest boundary at which every candidate fits
  int workers{1};
  double tie_eps{0.0};
  /// Called after each epoch completes (incremental persistence hook).
  std::function<void(const EpochRecord&)> epoch_sink;
  /// Resume support: epochs already executed (from persisted records).
  std::vector<EpochRecord> resume_epochs;
};

/// The walk-forward loop: at each boundary score the whole grid on the
/// validation block, select, execute OOS with the carried position state,
/// advance by the selected w_exec. Epochs are sequential; candidate
/// evaluations within an epoch are parallel and bit-deterministic for any
/// worker count.
WalkForwardResult run_walkforward(const CandleSeries& data, const PipelineConfig& pipe,
                                  const Grid& grid, double theta,
                                  const WalkForwardOptions& opts = {});

/// Earliest boundary at which every grid candidate is feasible.
Index first_feasible_boundary(const WalkForwardInputs& in, const Grid& grid);

/// Per-dimension selection counts across epochs (keys are the grid values
/// rendered as shortest round-trip text).
using SelectionFrequencies = std::map<std::string, std::map<std::string, int>>;
SelectionFrequencies selection_frequencies(const std::vector<EpochRecord>& epochs);

}  // namespace sigwf

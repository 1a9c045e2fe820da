#pragma once

#include <vector>

#include "sigwf/series.hpp"

namespace sigwf {

/// Binary exposure path from the hysteresis rule: 0 = flat, 1 = long.
/// Positions at indices < valid_from equal start_state.
struct PositionPath {
  ArrayXi positions;
  double theta{0};
  int start_state{0};
  Index valid_from{0};
};

/// One hysteresis transition: flat->long only when s > +theta, long->flat
/// only when s < -theta, otherwise hold (equality holds the state).
inline int hysteresis_step(int state, double s, double theta) {
  if (state == 0 && s > theta) return 1;
  if (state == 1 && s < -theta) return 0;
  return state;
}

/// Sequential application of the rule from start_state over the valid
/// region. Throws PipelineError on a non-causal input series or theta <= 0.
PositionPath hysteresis_positions(const Series& signal, double theta, int start_state = 0);

/// R[i] = p_i * r_{i+1} for i in [0, n-1): the return over bar i -> i+1 is
/// earned by the position decided at bar i (one-step execution delay).
/// Output length = prices.size() - 1; entry i corresponds to bar i+1.
ArrayXd strategy_returns(const PositionPath& path, const ArrayXd& prices);

/// Compounded equity, length returns.size() + 1 with equity[0] = 1.
/// Throws PipelineError on any return <= -1 (wipeout is flagged, not clamped).
ArrayXd equity_curve(const ArrayXd& returns);

/// Total transition count; the first transition is measured against
/// start_state.
long turnover(const PositionPath& path);

struct DurationList {
  std::vector<Index> lengths;       // maximal runs of p = 1, in bars
  std::vector<Index> start_index;   // run start bar
  bool last_open{false};            // last run still open at series end
};

DurationList position_durations(const PositionPath& path);

}  // namespace sigwf

#include "sigwf/decision.hpp"

#include <cmath>

#include "sigwf/errors.hpp"

namespace sigwf {

PositionPath hysteresis_positions(const Series& signal, double theta, int start_state) {
  if (!signal.causal)
    throw PipelineError("hysteresis_positions: refusing a non-causal diagnostic series");
  if (!(theta > 0)) throw PipelineError("hysteresis_positions: theta must be > 0");
  if (start_state != 0 && start_state != 1)
    throw PipelineError("hysteresis_positions: start_state must be 0 or 1");

  PositionPath path;
  path.theta = theta;
  path.start_state = start_state;
  path.valid_from = signal.valid_from;
  path.positions = ArrayXi::Constant(signal.size(), start_state);
  int state = start_state;
  for (Index t = signal.valid_from; t < signal.size(); ++t) {
    state = hysteresis_step(state, signal.values[t], theta);
    path.positions[t] = state;
  }
  return path;
}

ArrayXd strategy_returns(const PositionPath& path, const ArrayXd& prices) {
  if (path.positions.size() != prices.size())
    throw PipelineError("strategy_returns: misaligned position/price lengths");
  const Index n = prices.size();
  ArrayXd out(n > 0 ? n - 1 : 0);
  for (Index t = 1; t < n; ++t) {
    const double r = (prices[t] - prices[t - 1]) / prices[t - 1];
    out[t - 1] = path.positions[t - 1] ? r : 0.0;
  }
  return out;
}

ArrayXd equity_curve(const ArrayXd& returns) {
  ArrayXd out(returns.size() + 1);
  out[0] = 1.0;
  for (Index i = 0; i < returns.size(); ++i) {
    if (returns[i] <= -1.0)
      throw PipelineError("equity_curve: return <= -1 at index " + std::to_string(i) +
                          " (equity wipeout)");
    out[i + 1] = out[i] * (1.0 + returns[i]);
  }
  return out;
}

long turnover(const PositionPath& path) {
  long count = 0;
  int prev = path.start_state;
  for (Index t = 0; t < path.positions.size(); ++t) {
    count += std::abs(path.positions[t] - prev);
    prev = path.positions[t];
  }
  return count;
}

DurationList position_durations(const PositionPath& path) {
  DurationList out;
  Index run_start = -1;
  for (Index t = 0; t < path.positions.size(); ++t) {
    if (path.positions[t] == 1 && run_start < 0) run_start = t;
    if (path.positions[t] == 0 && run_start >= 0) {
      out.lengths.push_back(t - run_start);
      out.start_index.push_back(run_start);
      run_start = -1;
    }
  }
  if (run_start >= 0) {
    out.lengths.push_back(path.positions.size() - run_start);
    out.start_index.push_back(run_start);
    out.last_open = true;
  }
  return out;
}

}  // namespace sigwf

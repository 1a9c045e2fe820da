#include "sigwf/walkforward.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "sigwf/columnar.hpp"
#include "sigwf/errors.hpp"
#include "sigwf/normalization.hpp"

namespace sigwf {

WindowParams derive_windows(int w_fit, double rho) {
  if (w_fit < 1 || !(rho > 0)) throw ConfigError("derive_windows: need w_fit >= 1 and rho > 0");
  WindowParams w;
  w.w_fit = w_fit;
  w.rho = rho;
  w.w_val = static_cast<int>(std::lround(static_cast<double>(w_fit) / rho));
  if (w.w_val < 1) throw ConfigError("derive_windows: w_val rounds to zero");
  w.w_exec = w.w_val;
  return w;
}

std::vector<ParamSet> Grid::enumerate() const {
  if (n_diff.empty() || w_ma.empty() || lambda1.empty() || lambda2.empty() || amp.empty() ||
      w_fit.empty() || rho.empty())
    throw ConfigError("grid: every dimension must be non-empty");
  std::vector<ParamSet> out;
  out.reserve(cardinality());
  for (int wf : w_fit)
    for (double r : rho)
      for (int nd : n_diff)
        for (int wm : w_ma)
          for (double l1 : lambda1)
            for (double l2 : lambda2)
              for (double a : amp) {
                ParamSet p;
                p.sig.n_diff = nd;
                p.sig.w_ma = wm;
                p.sig.lambda1 = l1;
                p.sig.lambda2 = l2;
                p.sig.amp = a;
                p.win = derive_windows(wf, r);
                out.push_back(p);
              }
  return out;
}

std::size_t Grid::cardinality() const {
  return n_diff.size() * w_ma.size() * lambda1.size() * lambda2.size() * amp.size() *
         w_fit.size() * rho.size();
}

CandidateScore objective(const ArrayXd& returns) {
  if (returns.size() == 0) throw PipelineError("objective: empty evaluation window");
  CandidateScore s;
  s.feasible = true;
  s.t_eval = returns.size();
  double equity = 1.0;
  for (Index i = 0; i < returns.size(); ++i) equity *= 1.0 + returns[i];
  s.pnl_val = equity - 1.0;
  s.j_val = s.pnl_val / std::sqrt(static_cast<double>(s.t_eval));
  return s;
}

int select(const std::vector<CandidateScore>& scores, double tie_eps) {
  double best_j = 0;
  bool any = false;
  for (const CandidateScore& s : scores) {
    if (!s.feasible) continue;
    if (!any || s.j_val > best_j) best_j = s.j_val;
    any = true;
  }
  if (!any) return -1;
  const double cutoff = best_j - tie_eps * std::abs(best_j);
  int winner = -1;
  long best_turn = 0;
  for (size_t i = 0; i < scores.size(); ++i) {
    const CandidateScore& s = scores[i];
    if (!s.feasible || s.j_val < cutoff) continue;
    // Lowest turnover wins within the tie band; remaining ties keep the
    // earliest enumeration index.
    if (winner < 0 || s.turnover_val < best_turn) {
      winner = static_cast<int>(i);
      best_turn = s.turnover_val;
    }
  }
  return winner;
}

WalkForwardInputs prepare_inputs(const CandleSeries& data, const PipelineConfig& pipe,
                                 const Grid& grid) {
  WalkForwardInputs in;
  in.close = closes(data);
  in.timestamps.reserve(static_cast<size_t>(data.size()));
  for (const Candle& c : data.candles) in.timestamps.push_back(c.timestamp);

  IndicatorPanel panel = compute_panel(data, pipe.indicators);
  in.panel = normalize(panel, pipe.w_norm, pipe.eps);
  in.f0 = composite(in.panel, pipe.weights);

  std::vector<std::pair<int, int>> pairs;
  for (int nd : grid.n_diff)
    for (int wm : grid.w_ma) pairs.emplace_back(nd, wm);
  in.deriv = DerivativeCache(in.f0, pairs);
  return in;
}

CandidateScore evaluate_candidate(const WalkForwardInputs& in, const ParamSet& params,
                                  double theta, Index boundary) {
  if (!(theta > 0)) throw ConfigError("evaluate_candidate: theta must be > 0");
  CandidateScore score;
  score.t_eval = params.win.w_val;

  const Series& d = in.deriv.get(params.sig.n_diff, params.sig.w_ma);
  const Index warm = std::max(in.f0.valid_from, d.valid_from);
  const Index w_val = params.win.w_val;
  if (boundary > in.f0.size()) return score;  // beyond data: infeasible
  if (boundary - w_val - params.win.w_fit < warm) return score;  // not enough history

  score.feasible = true;
  int state = 0;  // validation always entered flat, for cross-candidate comparability
  double equity = 1.0;
  long transitions = 0;
  for (Index t = boundary - w_val; t < boundary; ++t) {
    if (state == 1) {
      const double r = (in.close[t] - in.close[t - 1]) / in.close[t - 1];
      equity *= 1.0 + r;
    }
    const double f = gate_point(in.f0.values[t], d.values[t], params.sig).f;
    const int next = hysteresis_step(state, f, theta);
    transitions += std::abs(next - state);
    state = next;
  }
  score.pnl_val = equity - 1.0;
  score.j_val = score.pnl_val / std::sqrt(static_cast<double>(w_val));
  score.turnover_val = transitions;
  return score;
}

Index first_feasible_boundary(const WalkForwardInputs& in, const Grid& grid) {
  Index t0 = 0;
  for (const ParamSet& p : grid.enumerate()) {
    const Series& d = in.deriv.get(p.sig.n_diff, p.sig.w_ma);
    const Index warm = std::max(in.f0.valid_from, d.valid_from);
    t0 = std::max(t0, warm + p.win.w_fit + p.win.w_val);
  }
  return t0;
}

namespace {

void score_all(const WalkForwardInputs& in, const std::vector<ParamSet>& candidates,
               double theta, Index boundary, int workers, std::vector<CandidateScore>& scores) {
  scores.assign(candidates.size(), CandidateScore{});
  auto eval_range = [&](std::atomic<size_t>& cursor) {
    for (size_t i = cursor.fetch_add(1); i < candidates.size(); i = cursor.fetch_add(1)) {
      scores[i] = evaluate_candidate(in, candidates[i], theta, boundary);
      scores[i].candidate = static_cast<int>(i);
    }
  };
  if (workers <= 1) {
    std::atomic<size_t> cursor{0};
    eval_range(cursor);
    return;
  }
  std::atomic<size_t> cursor{0};
  std::vector<std::thread> pool;
  const int n_threads = std::min<int>(workers, static_cast<int>(candidates.size()));
  pool.reserve(static_cast<size_t>(n_threads));
  for (int w = 0; w < n_threads; ++w) pool.emplace_back([&] { eval_range(cursor); });
  for (std::thread& th : pool) th.join();
}

}  // namespace

WalkForwardResult run_walkforward(const CandleSeries& data, const PipelineConfig& pipe,
                                  const Grid& grid, double theta,
                                  const WalkForwardOptions& opts) {
  WalkForwardInputs in = prepare_inputs(data, pipe, grid);
  const std::vector<ParamSet> candidates = grid.enumerate();
  const Index n = data.size();

  WalkForwardResult result;
  result.theta = theta;
  const Index feasible_t0 = first_feasible_boundary(in, grid);
  result.t0 = opts.t0 >= 0 ? opts.t0 : feasible_t0;
  if (result.t0 >= n)
    throw DataError("run_walkforward: data ends before the first feasible boundary (" +
                    std::to_string(result.t0) + " >= " + std::to_string(n) + ")");

  Index t = result.t0;
  int carry = 0;
  int epoch_idx = 0;
  std::vector<double> global_returns;
  std::vector<int> global_positions;

  // Resume: trust persisted epochs, re-establish the boundary and carry.
  for (const EpochRecord& e : opts.resume_epochs) {
    if (e.boundary != t)
      throw DataError("run_walkforward: resume records are not contiguous at epoch " +
                      std::to_string(e.epoch));
    result.epochs.push_back(e);
    for (Index i = 0; i < e.oos_returns.size(); ++i) global_returns.push_back(e.oos_returns[i]);
    for (Index i = 0; i < e.oos_positions.size(); ++i)
      global_positions.push_back(e.oos_positions[i]);
    for (Index tau = e.oos_begin; tau < e.oos_end; ++tau)
      result.oos_timestamps.push_back(in.timestamps[static_cast<size_t>(tau)]);
    t = e.oos_end;
    carry = e.carry_out;
    epoch_idx = e.epoch + 1;
  }

  std::vector<CandidateScore> scores;
  int prev_selected = -1;
  if (!result.epochs.empty()) prev_selected = result.epochs.back().selected;

  while (t < n) {
    score_all(in, candidates, theta, t, opts.workers, scores);
    for (const CandidateScore& s : scores)
      if (!s.feasible) ++result.skipped_candidates;

    int selected = select(scores, opts.tie_eps);
    if (selected < 0) {
      // Feasibility only grows with t, so this can happen at the first
      // boundary only; fail loudly rather than guess.
      if (prev_selected < 0)
        throw PipelineError("run_walkforward: no feasible candidate at the first boundary " +
                            std::to_string(t) + "; raise t0 or shrink the grid");
      selected = prev_selected;
    }
    const ParamSet& chosen = candidates[static_cast<size_t>(selected)];
    const Index w_exec = chosen.win.w_exec;
    if (t + w_exec > n) break;  // next block would exceed the data

    EpochRecord rec;
    rec.epoch = epoch_idx;
    rec.boundary = t;
    rec.boundary_ts = in.timestamps[static_cast<size_t>(t)];
    rec.selected = selected;
    rec.params = chosen;
    rec.score = scores[static_cast<size_t>(selected)];
    rec.oos_begin = t;
    rec.oos_end = t + w_exec;
    rec.carry_in = carry;

    const Series& d = in.deriv.get(chosen.sig.n_diff, chosen.sig.w_ma);
    rec.oos_returns = ArrayXd::Zero(w_exec);
    rec.oos_positions = ArrayXi::Zero(w_exec);
    int state = carry;
    double equity = 1.0;
    for (Index tau = t; tau < t + w_exec; ++tau) {
      double r_strategy = 0.0;
      if (state == 1) r_strategy = (in.close[tau] - in.close[tau - 1]) / in.close[tau - 1];
      equity *= 1.0 + r_strategy;
      rec.oos_returns[tau - t] = r_strategy;
      const double f = gate_point(in.f0.values[tau], d.values[tau], chosen.sig).f;
      state = hysteresis_step(state, f, theta);
      rec.oos_positions[tau - t] = state;
    }
    rec.oos_pnl = equity - 1.0;
    rec.carry_out = state;

    for (Index i = 0; i < w_exec; ++i) {
      global_returns.push_back(rec.oos_returns[i]);
      global_positions.push_back(rec.oos_positions[i]);
      result.oos_timestamps.push_back(in.timestamps[static_cast<size_t>(t + i)]);
    }
    carry = state;
    prev_selected = selected;
    if (opts.epoch_sink) opts.epoch_sink(rec);
    result.epochs.push_back(std::move(rec));
    t += w_exec;
    ++epoch_idx;
  }

  result.global_returns = Eigen::Map<const ArrayXd>(global_returns.data(),
                                                    static_cast<Index>(global_returns.size()));
  result.global_positions.resize(static_cast<Index>(global_positions.size()));
  for (size_t i = 0; i < global_positions.size(); ++i)
    result.global_positions[static_cast<Index>(i)] = global_positions[i];
  result.global_equity = equity_curve(result.global_returns);
  return result;
}

SelectionFrequencies selection_frequencies(const std::vector<EpochRecord>& epochs) {
  SelectionFrequencies freq;
  for (const EpochRecord& e : epochs) {
    freq["w_fit"][std::to_string(e.params.win.w_fit)]++;
    freq["rho"][format_double(e.params.win.rho)]++;
    freq["w_exec"][std::to_string(e.params.win.w_exec)]++;
    freq["lambda1"][format_double(e.params.sig.lambda1)]++;
    freq["lambda2"][format_double(e.params.sig.lambda2)]++;
    freq["amp"][format_double(e.params.sig.amp)]++;
  }
  return freq;
}

}  // namespace sigwf

#include "sigwf/config.hpp"

#include <fstream>

#include "sigwf/digest.hpp"
#include "sigwf/errors.hpp"

namespace sigwf {

namespace {

using ojson = nlohmann::ordered_json;

void check_keys(const ojson& j, const std::string& section,
                std::initializer_list<const char*> allowed) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* k : allowed)
      if (it.key() == k) {
        ok = true;
        break;
      }
    if (!ok) throw ConfigError("unknown config key '" + section + "." + it.key() + "'");
  }
}

template <class T>
void get_if(const ojson& j, const char* key, T& out) {
  if (j.contains(key)) {
    try {
      out = j.at(key).get<T>();
    } catch (const std::exception& e) {
      throw ConfigError(std::string("bad value for config key '") + key + "': " + e.what());
    }
  }
}

}  // namespace

RunConfig config_from_json(const ojson& j) {
  RunConfig cfg;
  check_keys(j, "", {"data", "synthetic", "fetch", "indicators", "normalization", "signal",
                     "decision", "grid", "walkforward", "sweep", "metrics", "demo", "output"});

  if (j.contains("data")) {
    const ojson& d = j.at("data");
    check_keys(d, "data", {"path", "symbol", "use_synthetic"});
    get_if(d, "path", cfg.data_path);
    get_if(d, "symbol", cfg.symbol);
    get_if(d, "use_synthetic", cfg.use_synthetic);
  }
  if (j.contains("synthetic")) {
    const ojson& s = j.at("synthetic");
    check_keys(s, "synthetic",
               {"n_bars", "seed_text", "p0", "trend_per_bar", "osc_amp", "osc_period_bars",
                "noise", "base_volume", "start_ts"});
    long n_bars = cfg.synthetic.n_bars;
    get_if(s, "n_bars", n_bars);
    cfg.synthetic.n_bars = n_bars;
    get_if(s, "seed_text", cfg.synthetic.seed_text);
    get_if(s, "p0", cfg.synthetic.p0);
    get_if(s, "trend_per_bar", cfg.synthetic.trend_per_bar);
    get_if(s, "osc_amp", cfg.synthetic.osc_amp);
    get_if(s, "osc_period_bars", cfg.synthetic.osc_period_bars);
    get_if(s, "noise", cfg.synthetic.noise);
    get_if(s, "base_volume", cfg.synthetic.base_volume);
    get_if(s, "start_ts", cfg.synthetic.start_ts);
  }
  if (j.contains("fetch")) {
    const ojson& f = j.at("fetch");
    check_keys(f, "fetch",
               {"base_url", "start_ms", "end_ms", "page_limit", "max_retries", "backoff_ms"});
    get_if(f, "base_url", cfg.klines_base_url);
    get_if(f, "start_ms", cfg.fetch_start_ms);
    get_if(f, "end_ms", cfg.fetch_end_ms);
    get_if(f, "page_limit", cfg.fetch_page_limit);
    get_if(f, "max_retries", cfg.fetch_max_retries);
    get_if(f, "backoff_ms", cfg.fetch_backoff_ms);
  }
  if (j.contains("indicators")) {
    const ojson& i = j.at("indicators");
    check_keys(i, "indicators",
               {"n_rsi", "n_mfi", "macd_fast", "macd_slow", "macd_signal", "n_bb", "k_bb",
                "rsi_wilder"});
    IndicatorConfig& ic = cfg.pipeline.indicators;
    get_if(i, "n_rsi", ic.n_rsi);
    get_if(i, "n_mfi", ic.n_mfi);
    get_if(i, "macd_fast", ic.macd_fast);
    get_if(i, "macd_slow", ic.macd_slow);
    get_if(i, "macd_signal", ic.macd_signal);
    get_if(i, "n_bb", ic.n_bb);
    get_if(i, "k_bb", ic.k_bb);
    get_if(i, "rsi_wilder", ic.rsi_wilder);
  }
  if (j.contains("normalization")) {
    const ojson& n = j.at("normalization");
    check_keys(n, "normalization", {"w_norm", "eps"});
    get_if(n, "w_norm", cfg.pipeline.w_norm);
    get_if(n, "eps", cfg.pipeline.eps);
  }
  if (j.contains("signal")) {
    const ojson& s = j.at("signal");
    check_keys(s, "signal", {"weights", "n_diff", "w_ma", "lambda1", "lambda2", "amp"});
    if (s.contains("weights")) {
      auto w = s.at("weights").get<std::vector<double>>();
      if (w.size() != kNumIndicators)
        throw ConfigError("signal.weights must have exactly 4 entries");
      for (int k = 0; k < kNumIndicators; ++k) cfg.pipeline.weights[static_cast<size_t>(k)] = w[static_cast<size_t>(k)];
    }
    get_if(s, "n_diff", cfg.signal.n_diff);
    get_if(s, "w_ma", cfg.signal.w_ma);
    get_if(s, "lambda1", cfg.signal.lambda1);
    get_if(s, "lambda2", cfg.signal.lambda2);
    get_if(s, "amp", cfg.signal.amp);
  }
  cfg.signal.weights = cfg.pipeline.weights;
  if (j.contains("decision")) {
    const ojson& d = j.at("decision");
    check_keys(d, "decision", {"thetas", "transaction_cost"});
    get_if(d, "thetas", cfg.thetas);
    get_if(d, "transaction_cost", cfg.transaction_cost);
  }
  if (j.contains("grid")) {
    const ojson& g = j.at("grid");
    check_keys(g, "grid", {"n_diff", "w_ma", "lambda1", "lambda2", "amp", "w_fit", "rho"});
    get_if(g, "n_diff", cfg.grid.n_diff);
    get_if(g, "w_ma", cfg.grid.w_ma);
    get_if(g, "lambda1", cfg.grid.lambda1);
    get_if(g, "lambda2", cfg.grid.lambda2);
    get_if(g, "amp", cfg.grid.amp);
    get_if(g, "w_fit", cfg.grid.w_fit);
    get_if(g, "rho", cfg.grid.rho);
  }
  if (j.contains("walkforward")) {
    const ojson& w = j.at("walkforward");
    check_keys(w, "walkforward", {"t0", "workers", "tie_eps"});
    get_if(w, "t0", cfg.t0);
    get_if(w, "workers", cfg.workers);
    get_if(w, "tie_eps", cfg.tie_eps);
  }
  if (j.contains("sweep")) {
    const ojson& s = j.at("sweep");
    check_keys(s, "sweep", {"window"});
    get_if(s, "window", cfg.sweep_window);
  }
  if (j.contains("metrics")) {
    const ojson& m = j.at("metrics");
    check_keys(m, "metrics", {"percentile_method", "downside_convention"});
    std::string pm = cfg.metrics.nearest_rank ? "nearest_rank" : "linear";
    std::string dc = cfg.metrics.downside_about_zero ? "rms_about_zero" : "subsample_std";
    get_if(m, "percentile_method", pm);
    get_if(m, "downside_convention", dc);
    if (pm != "linear" && pm != "nearest_rank")
      throw ConfigError("metrics.percentile_method must be 'linear' or 'nearest_rank'");
    if (dc != "subsample_std" && dc != "rms_about_zero")
      throw ConfigError("metrics.downside_convention must be 'subsample_std' or 'rms_about_zero'");
    cfg.metrics.nearest_rank = pm == "nearest_rank";
    cfg.metrics.downside_about_zero = dc == "rms_about_zero";
  }
  if (j.contains("demo")) {
    const ojson& d = j.at("demo");
    check_keys(d, "demo",
               {"a", "a0", "w", "m", "dt", "t_max", "n_backdiff", "amps", "lambda2s", "gate_amp"});
    get_if(d, "a", cfg.demo.a);
    get_if(d, "a0", cfg.demo.a0);
    get_if(d, "w", cfg.demo.w);
    get_if(d, "m", cfg.demo.m);
    get_if(d, "dt", cfg.demo.dt);
    get_if(d, "t_max", cfg.demo.t_max);
    get_if(d, "n_backdiff", cfg.demo.n_backdiff);
    get_if(d, "amps", cfg.demo.amps);
    get_if(d, "lambda2s", cfg.demo.lambda2s);
    get_if(d, "gate_amp", cfg.demo.gate_amp);
  }
  if (j.contains("output")) {
    const ojson& o = j.at("output");
    check_keys(o, "output", {"dir", "resume"});
    get_if(o, "dir", cfg.out_dir);
    get_if(o, "resume", cfg.resume);
  }

  // validation
  for (double th : cfg.thetas)
    if (!(th > 0)) throw ConfigError("decision.thetas must all be > 0");
  if (cfg.thetas.empty()) throw ConfigError("decision.thetas must be non-empty");
  if (cfg.grid.cardinality() == 0) throw ConfigError("grid: every dimension must be non-empty");
  if (cfg.pipeline.w_norm < 2) throw ConfigError("normalization.w_norm must be >= 2");
  if (!(cfg.pipeline.eps > 0)) throw ConfigError("normalization.eps must be > 0");
  if (cfg.workers < 1) throw ConfigError("walkforward.workers must be >= 1");
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config file not found: " + path.string());
  ojson j = ojson::parse(in, nullptr, false);
  if (j.is_discarded()) throw ConfigError("config file is not valid JSON: " + path.string());
  return config_from_json(j);
}

ojson effective_config(const RunConfig& cfg) {
  ojson j;
  j["data"] = {{"path", cfg.data_path}, {"symbol", cfg.symbol},
               {"use_synthetic", cfg.use_synthetic}};
  j["synthetic"] = {{"n_bars", cfg.synthetic.n_bars},
                    {"seed_text", cfg.synthetic.seed_text},
                    {"p0", cfg.synthetic.p0},
                    {"trend_per_bar", cfg.synthetic.trend_per_bar},
                    {"osc_amp", cfg.synthetic.osc_amp},
                    {"osc_period_bars", cfg.synthetic.osc_period_bars},
                    {"noise", cfg.synthetic.noise},
                    {"base_volume", cfg.synthetic.base_volume},
                    {"start_ts", cfg.synthetic.start_ts}};
  j["fetch"] = {{"base_url", cfg.klines_base_url}, {"start_ms", cfg.fetch_start_ms},
                {"end_ms", cfg.fetch_end_ms},       {"page_limit", cfg.fetch_page_limit},
                {"max_retries", cfg.fetch_max_retries}, {"backoff_ms", cfg.fetch_backoff_ms}};
  const IndicatorConfig& ic = cfg.pipeline.indicators;
  j["indicators"] = {{"n_rsi", ic.n_rsi},     {"n_mfi", ic.n_mfi},
                     {"macd_fast", ic.macd_fast}, {"macd_slow", ic.macd_slow},
                     {"macd_signal", ic.macd_signal}, {"n_bb", ic.n_bb},
                     {"k_bb", ic.k_bb},       {"rsi_wilder", ic.rsi_wilder}};
  j["normalization"] = {{"w_norm", cfg.pipeline.w_norm}, {"eps", cfg.pipeline.eps}};
  j["signal"] = {{"weights", cfg.pipeline.weights},
                 {"n_diff", cfg.signal.n_diff},
                 {"w_ma", cfg.signal.w_ma},
                 {"lambda1", cfg.signal.lambda1},
                 {"lambda2", cfg.signal.lambda2},
                 {"amp", cfg.signal.amp}};
  j["decision"] = {{"thetas", cfg.thetas}, {"transaction_cost", cfg.transaction_cost}};
  j["grid"] = {{"n_diff", cfg.grid.n_diff},   {"w_ma", cfg.grid.w_ma},
               {"lambda1", cfg.grid.lambda1}, {"lambda2", cfg.grid.lambda2},
               {"amp", cfg.grid.amp},         {"w_fit", cfg.grid.w_fit},
               {"rho", cfg.grid.rho}};
  j["walkforward"] = {{"t0", cfg.t0}, {"workers", cfg.workers}, {"tie_eps", cfg.tie_eps}};
  j["sweep"] = {{"window", cfg.sweep_window}};
  j["metrics"] = {{"percentile_method", cfg.metrics.nearest_rank ? "nearest_rank" : "linear"},
                  {"downside_convention",
                   cfg.metrics.downside_about_zero ? "rms_about_zero" : "subsample_std"}};
  j["demo"] = {{"a", cfg.demo.a},           {"a0", cfg.demo.a0},
               {"w", cfg.demo.w},           {"m", cfg.demo.m},
               {"dt", cfg.demo.dt},         {"t_max", cfg.demo.t_max},
               {"n_backdiff", cfg.demo.n_backdiff}, {"amps", cfg.demo.amps},
               {"lambda2s", cfg.demo.lambda2s},     {"gate_amp", cfg.demo.gate_amp}};
  j["output"] = {{"dir", cfg.out_dir}, {"resume", cfg.resume}};
  return j;
}

std::string run_digest(const RunConfig& cfg) {
  uint64_t h = fnv1a64(effective_config(cfg).dump());
  if (!cfg.use_synthetic && !cfg.data_path.empty() &&
      std::filesystem::exists(cfg.data_path))
    h = digest_file(cfg.data_path, h);
  return digest_hex(h);
}

}  // namespace sigwf

#pragma once

#include <Eigen/Core>
#include <limits>

namespace sigwf {

using Eigen::ArrayXd;
using Eigen::ArrayXi;
using Index = Eigen::Index;

inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

/// Bar-aligned time series. Entries at indices < valid_from are NaN and must
/// never be read downstream. `causal` marks whether the value at t depends
/// only on bars <= t; diagnostic look-ahead series carry causal = false and
/// are rejected by the decision stage.
struct Series {
  ArrayXd values;
  Index valid_from{0};
  bool causal{true};

  Index size() const { return values.size(); }
  bool has_valid() const { return valid_from < values.size(); }
  double operator[](Index t) const { return values[t]; }
};

/// All-NaN series of length n; the caller fills [valid_from, n).
inline Series nan_series(Index n, Index valid_from, bool causal = true) {
  Series s;
  s.values = ArrayXd::Constant(n, kNaN);
  s.valid_from = valid_from;
  s.causal = causal;
  return s;
}

}  // namespace sigwf

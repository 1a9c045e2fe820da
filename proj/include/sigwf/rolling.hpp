#pragma once

#include <cstddef>
#include <functional>
#include <set>

namespace sigwf {

/// Order-maintained sliding-window median. Lower half is kept in descending
/// order, upper half ascending, with |lower| == |upper| or |lower| ==
/// |upper| + 1, so insert/evict are O(log w) and the median is O(1).
/// The even-count median is the mean of the two central order statistics.
template <class Scalar>
class SlidingMedian {
 public:
  void insert(Scalar x) {
    if (lower_.empty() || !(*lower_.begin() < x)) {
      lower_.insert(x);
    } else {
      upper_.insert(x);
    }
    rebalance();
  }

  // x must currently be in the window.
  void evict(Scalar x) {
    auto it = lower_.find(x);
    if (it != lower_.end()) {
      lower_.erase(it);
    } else {
      upper_.erase(upper_.find(x));
    }
    rebalance();
  }

  Scalar median() const {
    if (lower_.size() > upper_.size()) return *lower_.begin();
    return (*lower_.begin() + *upper_.begin()) / Scalar(2);
  }

  std::size_t size() const { return lower_.size() + upper_.size(); }

 private:
  void rebalance() {
    while (lower_.size() > upper_.size() + 1) {
      auto it = lower_.begin();  // largest of the small half
      upper_.insert(*it);
      lower_.erase(it);
    }
    while (upper_.size() > lower_.size()) {
      auto it = upper_.begin();  // smallest of the large half
      lower_.insert(*it);
      upper_.erase(it);
    }
  }

  std::multiset<Scalar, std::greater<Scalar>> lower_;
  std::multiset<Scalar> upper_;
};

}  // namespace sigwf

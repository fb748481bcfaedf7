#pragma once

#include "bcdsat/cnf.hpp"

#include <optional>
#include <span>
#include <vector>

namespace bcdsat {

/// Exponential VSIDS scores with a binary max-heap over variables.
///
/// Each bump adds the current increment; each decay divides the increment by
/// the decay factor. When an activity passes 1e100 every activity and the
/// increment are scaled by 1e-100, which keeps the order intact. Ties
/// between equal activities go to the lower variable index.
class Evsids {
public:
  static constexpr double kRescaleLimit = 1e100;
  static constexpr double kRescaleFactor = 1e-100;

  explicit Evsids(int numVars = 0, double decay = 0.95);

  int numVars() const { return static_cast<int>(activity_.size()) - 1; }
  double activity(Var v) const { return activity_[v]; }
  double increment() const { return increment_; }
  double decayFactor() const { return decay_; }

  /// Overwrites a score (initial jitter); reorders the heap.
  void setActivity(Var v, double value);

  void bump(Var v);
  void decay() { increment_ /= decay_; }
  /// One conflict's worth of updates: bump each of `vars`, then decay once.
  void bumpAndDecay(std::span<const Var> vars);

  bool inHeap(Var v) const { return position_[v] >= 0; }
  bool heapEmpty() const { return heap_.empty(); }
  void insert(Var v);
  /// Highest-scoring variable in the heap, without removing it.
  Var top() const { return heap_.front(); }
  Var popMax();

  /// True iff `a` ranks above `b`.
  bool before(Var a, Var b) const {
    return activity_[a] > activity_[b] ||
           (activity_[a] == activity_[b] && a < b);
  }

private:
  void siftUp(std::size_t i);
  void siftDown(std::size_t i);
  void rescale();

  std::vector<double> activity_;
  std::vector<Var> heap_;
  std::vector<int> position_;
  double increment_ = 1.0;
  double decay_;
};

} // namespace bcdsat

#include "bcdsat/evsids.hpp"

#include <utility>

namespace bcdsat {

Evsids::Evsids(int numVars, double decay)
    : activity_(static_cast<std::size_t>(numVars) + 1, 0.0),
      position_(static_cast<std::size_t>(numVars) + 1, -1), decay_(decay) {}

void Evsids::setActivity(Var v, double value) {
  activity_[v] = value;
  if (inHeap(v)) {
    siftUp(static_cast<std::size_t>(position_[v]));
    siftDown(static_cast<std::size_t>(position_[v]));
  }
}

void Evsids::bump(Var v) {
  activity_[v] += increment_;
  if (activity_[v] > kRescaleLimit) [[unlikely]]
    rescale();
  if (inHeap(v))
    siftUp(static_cast<std::size_t>(position_[v]));
}

void Evsids::bumpAndDecay(std::span<const Var> vars) {
  for (Var v : vars)
    bump(v);
  decay();
}

void Evsids::rescale() {
  for (double &a : activity_)
    a *= kRescaleFactor;
  increment_ *= kRescaleFactor;
}

void Evsids::insert(Var v) {
  if (inHeap(v))
    return;
  position_[v] = static_cast<int>(heap_.size());
  heap_.push_back(v);
  siftUp(heap_.size() - 1);
}

Var Evsids::popMax() {
  Var v = heap_.front();
  heap_.front() = heap_.back();
  position_[heap_.front()] = 0;
  heap_.pop_back();
  position_[v] = -1;
  if (!heap_.empty())
    siftDown(0);
  return v;
}

void Evsids::siftUp(std::size_t i) {
  Var v = heap_[i];
  while (i > 0) {
    std::size_t parent = (i - 1) / 2;
    if (!before(v, heap_[parent]))
      break;
    heap_[i] = heap_[parent];
    position_[heap_[i]] = static_cast<int>(i);
    i = parent;
  }
  heap_[i] = v;
  position_[v] = static_cast<int>(i);
}

void Evsids::siftDown(std::size_t i) {
  Var v = heap_[i];
  const std::size_t n = heap_.size();
  for (;;) {
    std::size_t child = 2 * i + 1;
    if (child >= n)
      break;
    if (child + 1 < n && before(heap_[child + 1], heap_[child]))
      ++child;
    if (!before(heap_[child], v))
      break;
    heap_[i] = heap_[child];
    position_[heap_[i]] = static_cast<int>(i);
    i = child;
  }
  heap_[i] = v;
  position_[v] = static_cast<int>(i);
}

} // namespace bcdsat

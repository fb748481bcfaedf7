#pragma once

#include "bcdsat/cnf.hpp"

namespace bcdsat {

/// Root-level simplification: unit propagation to fixpoint, then removal of
/// satisfied clauses, falsified literals, tautologies and duplicate clauses.
/// Fixed literals are appended to `units` in propagation order. When the
/// empty clause is derived the result has no clauses and `trivialUnsat` set.
Formula simplifyRoot(const Formula &f);

/// Hash for canonical (sorted) literal sequences.
struct LitSequenceHash {
  std::size_t operator()(const std::vector<Lit> &lits) const noexcept;
};

} // namespace bcdsat

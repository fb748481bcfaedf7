#pragma once

#include "bcdsat/bce.hpp"
#include "bcdsat/cnf.hpp"

#include <chrono>
#include <vector>

namespace bcdsat {

/// A split of a formula's clauses into a large blocked set L and a small
/// blocked set S.
///
/// `large` and `small` list clause indices in the order opposite to their
/// BCE elimination order; `largeElimination` / `smallElimination` record that
/// elimination order together with the literal blocking each clause at its
/// turn. Concatenating `large` and `small` gives the clause sequence used for
/// branching positions.
struct BlockedDecomposition {
  std::vector<ClauseIndex> large;
  std::vector<ClauseIndex> small;
  std::vector<EliminationStep> largeElimination;
  std::vector<EliminationStep> smallElimination;

  /// |L| / (|L| + |S|); 1.0 for an empty formula.
  double quality() const;
};

/// Variable-order decomposition: a clause goes to P if its largest variable
/// occurs positively, otherwise to N. Eliminating either set in decreasing
/// order of the largest variable removes every clause, since the clause's
/// largest-variable literal has no remaining resolution partner. The larger
/// of P and N (P on ties) becomes L.
///
/// Requires a simplified formula; throws ContractViolation on an empty clause.
BlockedDecomposition pureDecompose(const Formula &f);

struct ImproveStats {
  std::size_t moved = 0;
  std::size_t passes = 0;
  bool budgetExpired = false;
};

/// Greedily moves clauses from S into L while L stays a blocked set. A
/// candidate is inserted into L's elimination order at a point where it is
/// blocked by the clauses eliminated after it and breaks none of the clauses
/// eliminated before it. Stops at a fixpoint or when `budget` runs out,
/// returning the best decomposition so far; quality never decreases.
BlockedDecomposition improveDecomposition(const BlockedDecomposition &d,
                                          const Formula &f,
                                          std::chrono::duration<double> budget,
                                          ImproveStats *stats = nullptr);

/// Checks that L and S partition the clauses of `f`, that each ordering is
/// the reverse of its recorded elimination order, and that replaying each
/// elimination order removes every clause as a blocked clause with respect
/// to the not-yet-eliminated rest of its own set.
bool verifyDecomposition(const BlockedDecomposition &d, const Formula &f);

/// pureDecompose followed by improveDecomposition.
BlockedDecomposition decompose(const Formula &f,
                               std::chrono::duration<double> budget,
                               ImproveStats *stats = nullptr);

} // namespace bcdsat

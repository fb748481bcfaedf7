#pragma once

#include "bcdsat/cnf.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace bcdsat {

using ClauseIndex = std::uint32_t;

/// Per-literal lists of the clauses containing that literal, restricted to
/// clauses that have not been removed. Removal is lazy: dead entries are
/// skipped on iteration and compacted away once they dominate a list.
class OccurrenceIndex {
public:
  /// Indexes every clause of `clauses`.
  OccurrenceIndex(std::span<const Clause> clauses, int numVars);
  /// Indexes only `subset`; other clauses count as removed.
  OccurrenceIndex(std::span<const Clause> clauses, int numVars,
                  std::span<const ClauseIndex> subset);

  bool isActive(ClauseIndex c) const { return active_[c] != 0; }
  void remove(ClauseIndex c);
  std::size_t activeCount() const { return activeCount_; }

  template <typename F> void forEach(Lit l, F &&fn) const {
    for (ClauseIndex c : lists_[l.index()])
      if (active_[c])
        fn(c);
  }

  /// Active clauses containing `l`, in index order of insertion.
  std::vector<ClauseIndex> clausesWith(Lit l) const;

private:
  std::span<const Clause> clauses_;
  std::vector<std::vector<ClauseIndex>> lists_;
  std::vector<std::uint32_t> dead_;
  std::vector<char> active_;
  std::size_t activeCount_ = 0;
};

/// (c1 \ {l}) ∪ (c2 \ {¬l}) with repeats dropped. Throws ContractViolation
/// unless l ∈ c1 and ¬l ∈ c2. A tautological result is reported by
/// Clause::isTautology.
Clause resolvent(const Clause &c1, const Clause &c2, Lit l);

/// True iff `l` blocks `c` with respect to the clause set `active`: `c` is a
/// tautology, or every resolvent of `c` on `l` with a clause of `active`
/// containing ¬l is a tautology. `c` itself may be a member of `active`.
/// Throws ContractViolation if l ∉ c.
bool isBlocked(const Clause &c, Lit l, std::span<const Clause> active);

/// Blocking check against the active clauses of an occurrence index. Reuses
/// scratch marks across calls; not thread-safe.
class BlockingChecker {
public:
  BlockingChecker(std::span<const Clause> clauses, int numVars);

  bool blocks(ClauseIndex c, Lit l, const OccurrenceIndex &occ);
  /// First literal of `c` (in clause order) that blocks it, or an invalid Lit.
  Lit findBlockingLiteral(ClauseIndex c, const OccurrenceIndex &occ);

private:
  std::span<const Clause> clauses_;
  std::vector<std::uint32_t> mark_;
  std::vector<char> tautology_;
  std::uint32_t stamp_ = 0;
};

struct EliminationStep {
  ClauseIndex clause;
  Lit blocking;

  friend bool operator==(const EliminationStep &, const EliminationStep &) = default;
};

struct BceResult {
  /// Removal order with the literal that blocked each clause at its turn.
  std::vector<EliminationStep> eliminated;
  /// Indices of the clauses left at the fixpoint, ascending.
  std::vector<ClauseIndex> residue;
};

/// Blocked clause elimination to fixpoint. A clause is re-examined only when
/// a clause containing the negation of one of its literals disappears.
BceResult bceFixpoint(std::span<const Clause> clauses, int numVars);

} // namespace bcdsat

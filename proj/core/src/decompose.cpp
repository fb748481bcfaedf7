#include "bcdsat/decompose.hpp"

#include "bcdsat/error.hpp"

#include <algorithm>
#include <limits>

namespace bcdsat {

double BlockedDecomposition::quality() const {
  const std::size_t total = large.size() + small.size();
  if (total == 0)
    return 1.0;
  return static_cast<double>(large.size()) / static_cast<double>(total);
}

//===----------------------------------------------------------------------===//
// Variable-order decomposition
//===----------------------------------------------------------------------===//

BlockedDecomposition pureDecompose(const Formula &f) {
  int numVars = f.numVars;
  for (const Clause &c : f.clauses)
    for (Lit l : c.lits)
      numVars = std::max(numVars, l.var());

  // Per clause: the literal on its largest variable, positive if present.
  std::vector<Lit> top(f.clauses.size());
  std::vector<std::vector<ClauseIndex>> byTopVar(static_cast<std::size_t>(numVars) + 1);
  for (ClauseIndex i = 0; i < f.clauses.size(); ++i) {
    const Clause &c = f.clauses[i];
    if (c.empty())
      throw ContractViolation("pureDecompose: formula contains the empty clause");
    Lit best = c[0];
    for (Lit l : c.lits)
      if (l.var() > best.var() || (l.var() == best.var() && !l.isNegative()))
        best = l;
    top[i] = best;
    byTopVar[best.var()].push_back(i);
  }

  std::vector<EliminationStep> positive, negative;
  for (int v = numVars; v >= 1; --v) {
    for (ClauseIndex i : byTopVar[v]) {
      if (top[i].isNegative())
        negative.push_back({i, top[i]});
      else
        positive.push_back({i, top[i]});
    }
  }

  BlockedDecomposition d;
  if (positive.size() >= negative.size()) {
    d.largeElimination = std::move(positive);
    d.smallElimination = std::move(negative);
  } else {
    d.largeElimination = std::move(negative);
    d.smallElimination = std::move(positive);
  }
  for (auto it = d.largeElimination.rbegin(); it != d.largeElimination.rend(); ++it)
    d.large.push_back(it->clause);
  for (auto it = d.smallElimination.rbegin(); it != d.smallElimination.rend(); ++it)
    d.small.push_back(it->clause);
  return d;
}

//===----------------------------------------------------------------------===//
// Greedy S -> L mover
//===----------------------------------------------------------------------===//

namespace {

/// L's elimination order is kept as sparse integer keys so a clause can be
/// spliced in between two neighbours without shifting the rest.
class LargeSetBuilder {
public:
  static constexpr std::int64_t kGap = std::int64_t{1} << 20;
  static constexpr std::int64_t kNone = std::numeric_limits<std::int64_t>::max();

  LargeSetBuilder(const Formula &f, const BlockedDecomposition &d)
      : clauses_(f.clauses) {
    int numVars = f.numVars;
    for (const Clause &c : f.clauses)
      for (Lit l : c.lits)
        numVars = std::max(numVars, l.var());
    const std::size_t numLits = 2 * static_cast<std::size_t>(numVars) + 2;
    occurs_.resize(numLits);
    blockedBy_.resize(numLits);
    mark_.assign(numLits, 0);
    key_.assign(clauses_.size(), kNone);
    blocking_.resize(clauses_.size());
    tautology_.resize(clauses_.size());
    for (std::size_t i = 0; i < clauses_.size(); ++i)
      tautology_[i] = clauses_[i].isTautology() ? 1 : 0;

    std::int64_t k = 0;
    for (const EliminationStep &step : d.largeElimination)
      insert(step.clause, step.blocking, k += kGap);
  }

  bool inLarge(ClauseIndex c) const { return key_[c] != kNone; }

  /// Tries to add `c` to L. Returns true on success.
  bool tryMove(ClauseIndex c) {
    if (tautology_[c] || clauses_[c].empty())
      return false;
    for (int attempt = 0; attempt < 2; ++attempt) {
      Placement p = evaluate(c);
      if (!p.feasible)
        return false;
      std::int64_t key;
      if (p.upper == kNone) {
        key = maxKey_ + kGap;
      } else if (p.upper - p.lower >= 2) {
        key = p.lower + (p.upper - p.lower) / 2;
      } else {
        renumber();
        continue;
      }
      insert(c, p.literal, key);
      return true;
    }
    return false;
  }

  std::vector<EliminationStep> eliminationOrder() const {
    std::vector<ClauseIndex> members;
    for (ClauseIndex i = 0; i < clauses_.size(); ++i)
      if (inLarge(i))
        members.push_back(i);
    std::sort(members.begin(), members.end(),
              [&](ClauseIndex a, ClauseIndex b) { return key_[a] < key_[b]; });
    std::vector<EliminationStep> order;
    order.reserve(members.size());
    for (ClauseIndex i : members)
      order.push_back({i, blocking_[i]});
    return order;
  }

private:
  struct Placement {
    bool feasible = false;
    Lit literal;
    std::int64_t lower = 0;    // new key must be > lower
    std::int64_t upper = kNone; // and < upper
  };

  void insert(ClauseIndex c, Lit blocking, std::int64_t key) {
    key_[c] = key;
    blocking_[c] = blocking;
    maxKey_ = std::max(maxKey_, key);
    for (Lit l : clauses_[c].lits)
      occurs_[l.index()].push_back(c);
    blockedBy_[blocking.index()].push_back(c);
  }

  void renumber() {
    auto order = eliminationOrder();
    std::int64_t k = 0;
    for (const EliminationStep &step : order)
      key_[step.clause] = (k += kGap);
    maxKey_ = k;
  }

  void markClause(ClauseIndex c) {
    if (++stamp_ == 0) {
      std::fill(mark_.begin(), mark_.end(), 0);
      stamp_ = 1;
    }
    for (Lit l : clauses_[c].lits)
      mark_[l.index()] = stamp_;
  }

  /// Resolvent of L-clause `d` and the marked candidate `c` on `pivot`
  /// (pivot ∈ d, ¬pivot ∈ c) is a tautology.
  bool tautologicalWithCandidate(ClauseIndex d, ClauseIndex c, Lit pivot) const {
    if (tautology_[d])
      return resolvent(clauses_[d], clauses_[c], pivot).isTautology();
    for (Lit z : clauses_[d].lits)
      if (z != pivot && mark_[(~z).index()] == stamp_)
        return true;
    return false;
  }

  Placement evaluate(ClauseIndex c) {
    markClause(c);
    const Clause &cl = clauses_[c];
    Placement p;

    // Earliest L clause whose blocking literal the candidate would break.
    for (Lit y : cl.lits)
      for (ClauseIndex d : blockedBy_[(~y).index()])
        if (key_[d] < p.upper && !tautologicalWithCandidate(d, c, ~y))
          p.upper = key_[d];

    // Latest L clause that stops x from blocking the candidate.
    std::int64_t best = kNone;
    for (Lit x : cl.lits) {
      std::int64_t last = 0;
      for (ClauseIndex d : occurs_[(~x).index()]) {
        if (key_[d] <= last || tautologicalWithCandidate(d, c, ~x))
          continue;
        last = key_[d];
        if (last >= p.upper || last >= best)
          break;
      }
      if (last < best) {
        best = last;
        p.literal = x;
      }
    }
    p.lower = best;
    p.feasible = best != kNone && best < p.upper;
    return p;
  }

  std::span<const Clause> clauses_;
  std::vector<std::vector<ClauseIndex>> occurs_;
  std::vector<std::vector<ClauseIndex>> blockedBy_;
  std::vector<std::int64_t> key_;
  std::vector<Lit> blocking_;
  std::vector<char> tautology_;
  std::vector<std::uint32_t> mark_;
  std::uint32_t stamp_ = 0;
  std::int64_t maxKey_ = 0;
};

} // namespace

BlockedDecomposition improveDecomposition(const BlockedDecomposition &d,
                                          const Formula &f,
                                          std::chrono::duration<double> budget,
                                          ImproveStats *stats) {
  ImproveStats local;
  ImproveStats &st = stats ? *stats : local;
  st = ImproveStats{};
  if (d.small.empty())
    return d;

  using Clock = std::chrono::steady_clock;
  const auto deadline =
      Clock::now() + std::chrono::duration_cast<Clock::duration>(budget);

  LargeSetBuilder builder(f, d);
  std::vector<EliminationStep> remaining = d.smallElimination;
  std::size_t sinceCheck = 0;
  bool progress = true;
  while (progress && !remaining.empty()) {
    progress = false;
    ++st.passes;
    for (const EliminationStep &step : remaining) {
      if (++sinceCheck >= 32) {
        sinceCheck = 0;
        if (Clock::now() >= deadline) {
          st.budgetExpired = true;
          break;
        }
      }
      if (builder.tryMove(step.clause)) {
        ++st.moved;
        progress = true;
      }
    }
    std::erase_if(remaining, [&](const EliminationStep &s) {
      return builder.inLarge(s.clause);
    });
    if (st.budgetExpired)
      break;
  }

  BlockedDecomposition out;
  out.largeElimination = builder.eliminationOrder();
  out.smallElimination = std::move(remaining);
  for (auto it = out.largeElimination.rbegin(); it != out.largeElimination.rend(); ++it)
    out.large.push_back(it->clause);
  for (auto it = out.smallElimination.rbegin(); it != out.smallElimination.rend(); ++it)
    out.small.push_back(it->clause);
  return out;
}

//===----------------------------------------------------------------------===//
// Verification
//===----------------------------------------------------------------------===//

namespace {

bool replay(const std::vector<ClauseIndex> &order,
            const std::vector<EliminationStep> &elimination, const Formula &f,
            BlockingChecker &checker) {
  if (order.size() != elimination.size())
    return false;
  for (std::size_t i = 0; i < order.size(); ++i)
    if (order[i] != elimination[elimination.size() - 1 - i].clause)
      return false;

  OccurrenceIndex occ(f.clauses, f.numVars, order);
  if (occ.activeCount() != order.size())
    return false;
  for (const EliminationStep &step : elimination) {
    if (!occ.isActive(step.clause))
      return false;
    const Clause &c = f.clauses[step.clause];
    bool ok = step.blocking.valid() && c.contains(step.blocking) &&
              checker.blocks(step.clause, step.blocking, occ);
    if (!ok)
      ok = checker.findBlockingLiteral(step.clause, occ).valid();
    if (!ok)
      return false;
    occ.remove(step.clause);
  }
  return true;
}

} // namespace

bool verifyDecomposition(const BlockedDecomposition &d, const Formula &f) {
  const std::size_t n = f.clauses.size();
  std::vector<char> owner(n, 0);
  for (ClauseIndex c : d.large) {
    if (c >= n || owner[c])
      return false;
    owner[c] = 1;
  }
  for (ClauseIndex c : d.small) {
    if (c >= n || owner[c])
      return false;
    owner[c] = 2;
  }
  if (d.large.size() + d.small.size() != n)
    return false;
  for (const EliminationStep &s : d.largeElimination)
    if (s.clause >= n || owner[s.clause] != 1)
      return false;
  for (const EliminationStep &s : d.smallElimination)
    if (s.clause >= n || owner[s.clause] != 2)
      return false;

  BlockingChecker checker(f.clauses, f.numVars);
  return replay(d.large, d.largeElimination, f, checker) &&
         replay(d.small, d.smallElimination, f, checker);
}

BlockedDecomposition decompose(const Formula &f,
                               std::chrono::duration<double> budget,
                               ImproveStats *stats) {
  return improveDecomposition(pureDecompose(f), f, budget, stats);
}

} // namespace bcdsat

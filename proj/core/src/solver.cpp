#include "bcdsat/solver.hpp"

#include "bcdsat/error.hpp"

#include <algorithm>
#include <cassert>
#include <random>

namespace bcdsat {

std::string_view toString(Verdict v) {
  switch (v) {
  case Verdict::Sat:
    return "SAT";
  case Verdict::Unsat:
    return "UNSAT";
  default:
    return "UNKNOWN";
  }
}

std::vector<Lit> SolveResult::modelLiterals() const {
  std::vector<Lit> out;
  for (std::size_t v = 1; v < model.size(); ++v)
    out.push_back(model[v] ? Lit::positive(static_cast<Var>(v))
                           : Lit::negative(static_cast<Var>(v)));
  return out;
}

namespace {

/// Finite subsequences of the Luby series: 1 1 2 1 1 2 4 ...
double luby(double y, std::uint64_t x) {
  std::uint64_t size = 1;
  int seq = 0;
  while (size < x + 1) {
    ++seq;
    size = 2 * size + 1;
  }
  while (size - 1 != x) {
    size = (size - 1) >> 1;
    --seq;
    x = x % size;
  }
  double r = 1.0;
  for (int i = 0; i < seq; ++i)
    r *= y;
  return r;
}

constexpr double kClauseRescaleLimit = 1e20;

} // namespace

//===----------------------------------------------------------------------===//
// Construction
//===----------------------------------------------------------------------===//

Solver::Solver(const Formula &f, SolverOptions options)
    : numVars_(f.numVars), options_(options), evsids_(0, options.varDecay) {
  for (const Clause &c : f.clauses)
    for (Lit l : c.lits)
      numVars_ = std::max(numVars_, l.var());
  for (Lit u : f.units)
    numVars_ = std::max(numVars_, u.var());

  const std::size_t vars = static_cast<std::size_t>(numVars_) + 1;
  evsids_ = Evsids(numVars_, options_.varDecay);
  watches_.resize(2 * vars);
  assigns_.assign(vars, LBool::Undef);
  level_.assign(vars, 0);
  reason_.assign(vars, kNoReason);
  phase_.assign(vars, 0);
  occurs_.assign(vars, 0);
  seen_.assign(vars, 0);
  levelStamp_.assign(vars + 1, 0);

  if (options_.proof)
    proof_ = std::make_unique<DratWriter>(*options_.proof);

  if (f.trivialUnsat)
    ok_ = false;
  for (Lit u : f.units) {
    occurs_[u.var()] = 1;
    if (value(u) == LBool::False)
      ok_ = false;
    else if (value(u) == LBool::Undef)
      enqueue(u, kNoReason);
  }
  for (const Clause &c : f.clauses)
    addInputClause(c);

  if (options_.seed != 0) {
    std::mt19937_64 rng(options_.seed);
    std::uniform_real_distribution<double> jitter(0.0, 1e-5);
    for (Var v = 1; v <= numVars_; ++v)
      evsids_.setActivity(v, jitter(rng));
  }
  for (Var v = 1; v <= numVars_; ++v)
    if (occurs_[v])
      evsids_.insert(v);
}

Solver::~Solver() = default;

void Solver::addInputClause(const Clause &input) {
  Clause c = input;
  c.removeDuplicates();
  if (c.isTautology())
    return;
  if (c.empty()) {
    ok_ = false;
    return;
  }
  for (Lit l : c.lits)
    occurs_[l.var()] = 1;
  if (c.size() == 1) {
    if (value(c[0]) == LBool::False)
      ok_ = false;
    else if (value(c[0]) == LBool::Undef)
      enqueue(c[0], kNoReason);
    return;
  }
  attach(storeClause(std::move(c.lits), false, 0));
}

ClauseRef Solver::storeClause(std::vector<Lit> lits, bool learnt,
                              std::uint32_t lbd) {
  StoredClause sc;
  sc.lits = std::move(lits);
  sc.learnt = learnt;
  sc.lbd = lbd;
  clauses_.push_back(std::move(sc));
  return static_cast<ClauseRef>(clauses_.size() - 1);
}

void Solver::attach(ClauseRef c) {
  const auto &lits = clauses_[c].lits;
  assert(lits.size() >= 2);
  watches_[lits[0].index()].push_back({c, lits[1]});
  watches_[lits[1].index()].push_back({c, lits[0]});
}

std::span<const Lit> Solver::clauseLiterals(ClauseRef c) const {
  return clauses_[c].lits;
}

std::size_t Solver::numLearnts() const {
  return static_cast<std::size_t>(std::count_if(
      clauses_.begin(), clauses_.end(),
      [](const StoredClause &c) { return c.learnt && !c.deleted; }));
}

//===----------------------------------------------------------------------===//
// Trail
//===----------------------------------------------------------------------===//

void Solver::enqueue(Lit l, ClauseRef reason) {
  const Var v = l.var();
  assert(assigns_[v] == LBool::Undef);
  assigns_[v] = l.isNegative() ? LBool::False : LBool::True;
  level_[v] = decisionLevel();
  reason_[v] = reason;
  trail_.push_back(l);
}

void Solver::decide(Lit l) {
  if (!l.valid() || l.var() > numVars_ || value(l) != LBool::Undef)
    throw ContractViolation("decision literal " + toString(l) +
                            " is not an unassigned variable");
  trailLimits_.push_back(static_cast<int>(trail_.size()));
  enqueue(l, kNoReason);
  ++stats_.decisions;
  if (options_.recordDecisions)
    decisionTrace_.push_back(l);
}

void Solver::backtrack(int level) {
  if (decisionLevel() <= level)
    return;
  const std::size_t keep = static_cast<std::size_t>(trailLimits_[level]);
  for (std::size_t i = trail_.size(); i-- > keep;) {
    const Var v = trail_[i].var();
    assigns_[v] = LBool::Undef;
    reason_[v] = kNoReason;
    phase_[v] = trail_[i].isNegative() ? 0 : 1;
    evsids_.insert(v);
  }
  trail_.resize(keep);
  trailLimits_.resize(static_cast<std::size_t>(level));
  queueHead_ = keep;
}

std::optional<Lit> Solver::decisionAt(int level) const {
  if (level < 1 || level > decisionLevel())
    return std::nullopt;
  return trail_[static_cast<std::size_t>(trailLimits_[level - 1])];
}

std::optional<Lit> Solver::pickGlobal() {
  while (!evsids_.heapEmpty()) {
    Var v = evsids_.popMax();
    if (assigns_[v] == LBool::Undef)
      return phaseLiteral(v);
  }
  return std::nullopt;
}

//===----------------------------------------------------------------------===//
// Propagation
//===----------------------------------------------------------------------===//

std::optional<ClauseRef> Solver::propagate() {
  std::optional<ClauseRef> conflict;
  while (queueHead_ < trail_.size()) {
    const Lit p = trail_[queueHead_++];
    const Lit falseLit = ~p;
    ++stats_.propagations;
    auto &ws = watches_[falseLit.index()];
    std::size_t i = 0, j = 0;
    while (i < ws.size()) {
      const Watcher w = ws[i];
      if (value(w.blocker) == LBool::True) {
        ws[j++] = ws[i++];
        continue;
      }
      StoredClause &c = clauses_[w.clause];
      if (c.deleted) {
        ++i;
        continue;
      }
      auto &lits = c.lits;
      if (lits[0] == falseLit)
        std::swap(lits[0], lits[1]);
      ++i;

      const Lit first = lits[0];
      const Watcher kept{w.clause, first};
      if (first != w.blocker && value(first) == LBool::True) {
        ws[j++] = kept;
        continue;
      }

      bool moved = false;
      for (std::size_t k = 2; k < lits.size(); ++k) {
        if (value(lits[k]) != LBool::False) {
          std::swap(lits[1], lits[k]);
          watches_[lits[1].index()].push_back(kept);
          moved = true;
          break;
        }
      }
      if (moved)
        continue;

      ws[j++] = kept;
      if (value(first) == LBool::False) {
        conflict = w.clause;
        queueHead_ = trail_.size();
        while (i < ws.size())
          ws[j++] = ws[i++];
      } else {
        enqueue(first, w.clause);
      }
    }
    ws.resize(j);
    if (conflict)
      break;
  }
  if (options_.checkInvariants && !conflict && !checkWatchInvariant())
    throw std::logic_error("watch invariant violated after propagation");
  return conflict;
}

bool Solver::checkWatchInvariant() const {
  auto watchedBy = [&](ClauseRef c, Lit l) {
    const auto &ws = watches_[l.index()];
    return std::any_of(ws.begin(), ws.end(),
                       [&](const Watcher &w) { return w.clause == c; });
  };
  auto pending = [&](Lit falseLit) {
    // ¬falseLit was assigned but has not been propagated yet.
    for (std::size_t i = queueHead_; i < trail_.size(); ++i)
      if (trail_[i] == ~falseLit)
        return true;
    return false;
  };
  for (ClauseRef c = 0; c < clauses_.size(); ++c) {
    const StoredClause &sc = clauses_[c];
    if (sc.deleted)
      continue;
    if (!watchedBy(c, sc.lits[0]) || !watchedBy(c, sc.lits[1]))
      return false;
    bool satisfied = std::any_of(sc.lits.begin(), sc.lits.end(), [&](Lit l) {
      return value(l) == LBool::True;
    });
    if (satisfied)
      continue;
    for (int k = 0; k < 2; ++k)
      if (value(sc.lits[k]) == LBool::False && !pending(sc.lits[k]))
        return false;
  }
  return true;
}

//===----------------------------------------------------------------------===//
// Conflict analysis
//===----------------------------------------------------------------------===//

void Solver::bumpClause(ClauseRef c) {
  StoredClause &sc = clauses_[c];
  sc.activity += static_cast<float>(clauseIncrement_);
  if (sc.activity > kClauseRescaleLimit) {
    for (StoredClause &other : clauses_)
      if (other.learnt)
        other.activity *= 1e-20f;
    clauseIncrement_ *= 1e-20;
  }
}

std::uint32_t Solver::computeLbd(std::span<const Lit> lits) {
  if (++lbdStamp_ == 0) {
    std::fill(levelStamp_.begin(), levelStamp_.end(), 0);
    lbdStamp_ = 1;
  }
  std::uint32_t count = 0;
  for (Lit l : lits) {
    auto lvl = static_cast<std::size_t>(level_[l.var()]);
    if (lvl >= levelStamp_.size())
      levelStamp_.resize(lvl + 1, 0);
    if (levelStamp_[lvl] != lbdStamp_) {
      levelStamp_[lvl] = lbdStamp_;
      ++count;
    }
  }
  return count;
}

AnalysisResult Solver::analyze(ClauseRef conflict) {
  AnalysisResult result;
  if (decisionLevel() == 0) {
    result.emptyClause = true;
    return result;
  }

  std::vector<Var> seenVars;
  std::vector<Lit> &learnt = result.learnt;
  learnt.push_back(Lit()); // asserting literal goes here

  int pathCount = 0;
  Lit p;
  std::size_t index = trail_.size();
  ClauseRef reason = conflict;

  do {
    assert(reason != kNoReason);
    if (clauses_[reason].learnt)
      bumpClause(reason);
    const auto &lits = clauses_[reason].lits;
    for (std::size_t k = p.valid() ? 1 : 0; k < lits.size(); ++k) {
      const Lit q = lits[k];
      const Var v = q.var();
      if (seen_[v] || level_[v] == 0)
        continue;
      seen_[v] = 1;
      seenVars.push_back(v);
      if (level_[v] >= decisionLevel())
        ++pathCount;
      else
        learnt.push_back(q);
    }
    while (!seen_[trail_[--index].var()]) {
    }
    p = trail_[index];
    reason = reason_[p.var()];
    seen_[p.var()] = 0;
    --pathCount;
  } while (pathCount > 0);
  learnt[0] = ~p;

  if (options_.minimizeLearnt)
    minimize(learnt);

  if (learnt.size() > 1) {
    std::size_t maxIndex = 1;
    for (std::size_t k = 2; k < learnt.size(); ++k)
      if (level_[learnt[k].var()] > level_[learnt[maxIndex].var()])
        maxIndex = k;
    std::swap(learnt[1], learnt[maxIndex]);
    result.backtrackLevel = level_[learnt[1].var()];
  }
  result.lbd = computeLbd(learnt);

  for (Var v : seenVars)
    seen_[v] = 0;
  evsids_.bumpAndDecay(seenVars);
  return result;
}

void Solver::minimize(std::vector<Lit> &learnt) {
  std::size_t kept = 1;
  for (std::size_t i = 1; i < learnt.size(); ++i) {
    const ClauseRef r = reason_[learnt[i].var()];
    bool redundant = r != kNoReason;
    if (redundant) {
      const auto &lits = clauses_[r].lits;
      for (std::size_t k = 1; k < lits.size(); ++k) {
        const Var v = lits[k].var();
        if (!seen_[v] && level_[v] > 0) {
          redundant = false;
          break;
        }
      }
    }
    if (!redundant)
      learnt[kept++] = learnt[i];
  }
  learnt.resize(kept);
}

//===----------------------------------------------------------------------===//
// Clause database maintenance
//===----------------------------------------------------------------------===//

bool Solver::locked(ClauseRef c) const {
  const StoredClause &sc = clauses_[c];
  const Var v = sc.lits[0].var();
  return value(sc.lits[0]) == LBool::True && reason_[v] == c;
}

void Solver::deleteClause(ClauseRef c) {
  StoredClause &sc = clauses_[c];
  if (proof_)
    proof_->remove(sc.lits);
  sc.deleted = true;
}

void Solver::purgeDeletedWatches() {
  for (auto &ws : watches_)
    std::erase_if(ws, [&](const Watcher &w) { return clauses_[w.clause].deleted; });
  for (StoredClause &sc : clauses_)
    if (sc.deleted && !sc.lits.empty())
      std::vector<Lit>().swap(sc.lits);
}

void Solver::reduceLearnts() {
  std::vector<ClauseRef> learnts;
  for (ClauseRef c = 0; c < clauses_.size(); ++c)
    if (clauses_[c].learnt && !clauses_[c].deleted)
      learnts.push_back(c);
  std::sort(learnts.begin(), learnts.end(), [&](ClauseRef a, ClauseRef b) {
    const StoredClause &x = clauses_[a];
    const StoredClause &y = clauses_[b];
    if (x.lbd != y.lbd)
      return x.lbd < y.lbd;
    if (x.activity != y.activity)
      return x.activity > y.activity;
    return a < b;
  });
  for (std::size_t i = learnts.size() / 2; i < learnts.size(); ++i) {
    const ClauseRef c = learnts[i];
    if (clauses_[c].lbd <= 2 || locked(c))
      continue;
    deleteClause(c);
  }
  purgeDeletedWatches();
  ++stats_.reductions;
}

void Solver::simplifyAtRoot() {
  assert(decisionLevel() == 0);
  // Root literals are re-stated as units before their reasons go away, so
  // a proof checker never depends on a deleted clause for them.
  for (std::size_t i = simplifiedTrailSize_; i < trail_.size(); ++i) {
    const Var v = trail_[i].var();
    if (reason_[v] != kNoReason) {
      if (proof_) {
        const Lit unit[1] = {trail_[i]};
        proof_->add(unit);
      }
      reason_[v] = kNoReason;
    }
  }
  for (ClauseRef c = 0; c < clauses_.size(); ++c) {
    StoredClause &sc = clauses_[c];
    if (sc.deleted)
      continue;
    if (std::any_of(sc.lits.begin(), sc.lits.end(),
                    [&](Lit l) { return value(l) == LBool::True; }))
      deleteClause(c);
  }
  purgeDeletedWatches();
  simplifiedTrailSize_ = trail_.size();
}

//===----------------------------------------------------------------------===//
// Search
//===----------------------------------------------------------------------===//

SolveResult Solver::solve(SolveLimits limits) {
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  SolveResult result;

  auto finish = [&](Verdict v) {
    result.verdict = v;
    stats_.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    result.stats = stats_;
    if (proof_) {
      if (v == Verdict::Unsat)
        proof_->add(std::span<const Lit>{});
      proof_->flush();
    }
    return result;
  };

  if (!ok_)
    return finish(Verdict::Unsat);

  std::uint64_t restartCount = 0;
  std::uint64_t conflictsSinceRestart = 0;
  auto restartLimit = [&] {
    return static_cast<std::uint64_t>(
        luby(2.0, restartCount) * static_cast<double>(options_.restartUnit));
  };
  std::uint64_t nextRestart = restartLimit();
  std::uint64_t reductions = 0;
  std::uint64_t nextReduce = stats_.conflicts + options_.reduceBase;

  for (;;) {
    if (auto conflict = propagate()) {
      ++stats_.conflicts;
      ++conflictsSinceRestart;
      if (decisionLevel() == 0) {
        ok_ = false;
        return finish(Verdict::Unsat);
      }
      AnalysisResult analysis = analyze(*conflict);
      backtrack(analysis.backtrackLevel);
      if (proof_)
        proof_->add(analysis.learnt);
      if (analysis.learnt.size() == 1) {
        enqueue(analysis.learnt[0], kNoReason);
      } else {
        ClauseRef c = storeClause(analysis.learnt, true, analysis.lbd);
        attach(c);
        bumpClause(c);
        enqueue(analysis.learnt[0], c);
      }
      ++stats_.learntClauses;
      clauseIncrement_ /= options_.clauseDecay;

      if (limits.maxConflicts && stats_.conflicts >= *limits.maxConflicts)
        return finish(Verdict::Unknown);
      if (limits.maxTime && options_.timeCheckInterval > 0 &&
          stats_.conflicts % options_.timeCheckInterval == 0 &&
          Clock::now() - start >= *limits.maxTime)
        return finish(Verdict::Unknown);
      continue;
    }

    if (decisionLevel() == 0 && trail_.size() > simplifiedTrailSize_)
      simplifyAtRoot();

    if (conflictsSinceRestart >= nextRestart) {
      backtrack(0);
      ++stats_.restarts;
      ++restartCount;
      conflictsSinceRestart = 0;
      nextRestart = restartLimit();
      continue;
    }

    if (stats_.conflicts >= nextReduce) {
      reduceLearnts();
      ++reductions;
      nextReduce = stats_.conflicts + options_.reduceBase +
                   options_.reduceIncrement * reductions;
    }

    std::optional<Lit> next = hook_ ? hook_(*this) : pickGlobal();
    if (!next) {
      result.model.assign(static_cast<std::size_t>(numVars_) + 1, false);
      for (Var v = 1; v <= numVars_; ++v)
        result.model[v] = assigns_[v] == LBool::True;
      return finish(Verdict::Sat);
    }
    decide(*next);
  }
}

} // namespace bcdsat

#pragma once

#include "bcdsat/cnf.hpp"
#include "bcdsat/drat.hpp"
#include "bcdsat/evsids.hpp"

#include <chrono>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace bcdsat {

enum class Verdict { Sat, Unsat, Unknown };

std::string_view toString(Verdict v);

struct SolveStats {
  std::uint64_t conflicts = 0;
  std::uint64_t decisions = 0;
  std::uint64_t propagations = 0;
  std::uint64_t restarts = 0;
  std::uint64_t reductions = 0;
  std::uint64_t learntClauses = 0;
  double seconds = 0.0;
};

struct SolveResult {
  Verdict verdict = Verdict::Unknown;
  /// Indexed by variable (slot 0 unused); filled for SAT only.
  std::vector<bool> model;
  SolveStats stats;

  /// Model as a list of true literals over variables 1..numVars.
  std::vector<Lit> modelLiterals() const;
};

struct SolveLimits {
  std::optional<std::uint64_t> maxConflicts;
  std::optional<std::chrono::duration<double>> maxTime;
};

struct SolverOptions {
  double varDecay = 0.95;
  double clauseDecay = 0.999;
  /// Luby restart unit, in conflicts.
  std::uint64_t restartUnit = 100;
  /// Learnt-DB reduction k happens 2000 + 300 * k conflicts after the previous one.
  std::uint64_t reduceBase = 2000;
  std::uint64_t reduceIncrement = 300;
  /// Drop learnt literals whose reason is subsumed by the rest of the clause.
  bool minimizeLearnt = false;
  /// Keep the sequence of decision literals (see Solver::decisionTrace).
  bool recordDecisions = false;
  /// Check the watch invariant after every propagation (slow).
  bool checkInvariants = false;
  /// Nonzero: perturb initial activities with tiny seeded noise.
  std::uint64_t seed = 0;
  /// Conflicts between wall-clock checks.
  std::uint64_t timeCheckInterval = 1024;
  /// Receives DRAT lines when set.
  std::ostream *proof = nullptr;
};

class Solver;

/// Decision hook. Returns the literal to assert at a new decision level, or
/// nullopt when every variable is assigned.
using DecisionHook = std::function<std::optional<Lit>(Solver &)>;

using ClauseRef = std::uint32_t;

struct AnalysisResult {
  /// Conflict at level 0: the empty clause follows.
  bool emptyClause = false;
  /// First literal is the asserting one; the second sits at backtrackLevel.
  std::vector<Lit> learnt;
  int backtrackLevel = 0;
  std::uint32_t lbd = 0;
};

/// CDCL search: two-watched-literal propagation, first-UIP learning, EVSIDS
/// with phase saving, Luby restarts, LBD-based learnt clause reduction and
/// optional DRAT logging. Single-threaded; deterministic for a fixed
/// formula, hook and options.
class Solver {
public:
  explicit Solver(const Formula &f, SolverOptions options = {});
  ~Solver();
  Solver(const Solver &) = delete;
  Solver &operator=(const Solver &) = delete;

  void setDecisionHook(DecisionHook hook) { hook_ = std::move(hook); }

  SolveResult solve(SolveLimits limits = {});

  //===--------------------------------------------------------------------===//
  // State queried by decision hooks
  //===--------------------------------------------------------------------===//

  int numVars() const { return numVars_; }
  int decisionLevel() const { return static_cast<int>(trailLimits_.size()); }
  std::uint64_t conflicts() const { return stats_.conflicts; }

  LBool value(Var v) const { return assigns_[v]; }
  LBool value(Lit l) const {
    LBool v = assigns_[l.var()];
    return l.isNegative() ? !v : v;
  }
  int levelOf(Var v) const { return level_[v]; }

  double activity(Var v) const { return evsids_.activity(v); }
  const Evsids &evsids() const { return evsids_; }
  /// Overwrites a score (seeding, tests).
  void setActivity(Var v, double value) { evsids_.setActivity(v, value); }

  /// `v` with its saved polarity (false until first assigned).
  Lit phaseLiteral(Var v) const {
    return phase_[v] ? Lit::positive(v) : Lit::negative(v);
  }

  /// Decision literal that opened `level` (1-based) on the current trail.
  std::optional<Lit> decisionAt(int level) const;

  /// Highest-activity unassigned variable with its saved phase; nullopt if
  /// every variable that occurs in the formula is assigned.
  std::optional<Lit> pickGlobal();

  std::span<const Lit> trail() const { return trail_; }
  const std::vector<Lit> &decisionTrace() const { return decisionTrace_; }
  const SolveStats &stats() const { return stats_; }
  bool occurs(Var v) const { return occurs_[v] != 0; }

  //===--------------------------------------------------------------------===//
  // Single steps (used by solve(); exposed for tests and tooling)
  //===--------------------------------------------------------------------===//

  /// False once a root-level contradiction is known.
  bool consistent() const { return ok_; }

  /// Opens a new decision level and assigns `l`.
  void decide(Lit l);
  /// Unit propagation to fixpoint. Returns the falsified clause on conflict.
  std::optional<ClauseRef> propagate();
  /// First-UIP analysis of a conflict; bumps and decays activities.
  AnalysisResult analyze(ClauseRef conflict);
  void backtrack(int level);

  std::span<const Lit> clauseLiterals(ClauseRef c) const;
  std::size_t numLearnts() const;

  /// Watch invariant: every live clause of size >= 2 is watched by its
  /// first two literals, and outside of pending propagation a clause that
  /// is not satisfied has no false watched literal.
  bool checkWatchInvariant() const;

private:
  struct StoredClause {
    std::vector<Lit> lits;
    float activity = 0.0f;
    std::uint32_t lbd = 0;
    bool learnt = false;
    bool deleted = false;
  };
  struct Watcher {
    ClauseRef clause;
    Lit blocker;
  };
  static constexpr ClauseRef kNoReason = ~ClauseRef{0};

  void addInputClause(const Clause &c);
  ClauseRef storeClause(std::vector<Lit> lits, bool learnt, std::uint32_t lbd);
  void attach(ClauseRef c);
  void enqueue(Lit l, ClauseRef reason);
  bool locked(ClauseRef c) const;
  void bumpClause(ClauseRef c);
  void reduceLearnts();
  void simplifyAtRoot();
  void purgeDeletedWatches();
  void deleteClause(ClauseRef c);
  std::uint32_t computeLbd(std::span<const Lit> lits);
  void minimize(std::vector<Lit> &learnt);

  int numVars_;
  SolverOptions options_;
  DecisionHook hook_;
  std::unique_ptr<DratWriter> proof_;
  bool ok_ = true;

  std::vector<StoredClause> clauses_;
  std::vector<std::vector<Watcher>> watches_;
  std::vector<LBool> assigns_;
  std::vector<int> level_;
  std::vector<ClauseRef> reason_;
  std::vector<char> phase_;
  std::vector<char> occurs_;
  std::vector<char> seen_;
  std::vector<std::uint32_t> levelStamp_;
  std::uint32_t lbdStamp_ = 0;
  Evsids evsids_;
  double clauseIncrement_ = 1.0;

  std::vector<Lit> trail_;
  std::vector<int> trailLimits_;
  std::size_t queueHead_ = 0;
  std::size_t simplifiedTrailSize_ = 0;

  std::vector<Lit> decisionTrace_;
  SolveStats stats_;
};

} // namespace bcdsat

#pragma once

#include "bcdsat/cnf.hpp"
#include "bcdsat/decompose.hpp"
#include "bcdsat/solver.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string_view>
#include <vector>

namespace bcdsat {

enum class BranchMode { None, Bcd1, Bcd2, Bcd3 };

std::string_view toString(BranchMode m);
std::optional<BranchMode> parseBranchMode(std::string_view text);

/// Conflict budget during which the blocked-set restriction is active, as a
/// function of the clause count `n` and variable count `m` of the
/// simplified formula. 0 disables the restriction.
///
///   BCD1: 0 if n > 1.5e6 or m > 5e5, else 6e6.
///   BCD2: 0 if n > 5e6 or m > 1.5e6 or n < 2m; else 30000 if m > 5e5;
///         else 5e5.
///   BCD3: as BCD2 with n > 30m also disabling, and 6e6 when
///         1600 <= m <= 15000.
std::uint64_t resolveTheta(BranchMode mode, std::uint64_t n, std::uint64_t m);

/// Budget for a hand-picked policy without a mode table: 30000 conflicts for
/// large instances (m > 5e5), 5e5 otherwise.
std::uint64_t defaultTheta(std::uint64_t m);

struct ModeConfig {
  static constexpr std::uint32_t kWindow = 6;
  static constexpr int kFirstLevel = 1;
  static constexpr int kLastLevel = 3;

  BranchMode mode = BranchMode::None;
  std::uint64_t theta = 0;

  bool active() const { return mode != BranchMode::None && theta > 0; }
};

/// Mode table lookup, or `thetaOverride` when given.
ModeConfig makeModeConfig(BranchMode mode, std::uint64_t n, std::uint64_t m,
                          std::optional<std::uint64_t> thetaOverride = {});

/// The clause sequence C_1..C_n: L followed by S, each in the order opposite
/// to its BCE elimination order. Positions are 1-based.
class OrderedBlockedClauses {
public:
  OrderedBlockedClauses() = default;
  OrderedBlockedClauses(const BlockedDecomposition &d, const Formula &f);

  std::size_t size() const { return clauses_.size(); }
  std::size_t largeCount() const { return largeCount_; }
  /// C_i for 1 <= i <= size().
  const std::vector<Lit> &at(std::size_t i) const { return clauses_[i - 1]; }
  /// Index of C_i in the source formula.
  ClauseIndex sourceIndex(std::size_t i) const { return source_[i - 1]; }

private:
  std::vector<std::vector<Lit>> clauses_;
  std::vector<ClauseIndex> source_;
  std::size_t largeCount_ = 0;
};

/// pos[v]: index of the first binary clause containing v if any binary
/// clause does, otherwise of the first clause containing v; 0 if v occurs
/// nowhere.
class PosTable {
public:
  PosTable() = default;
  explicit PosTable(std::vector<std::uint32_t> pos) : pos_(std::move(pos)) {}

  std::uint32_t operator[](Var v) const {
    return static_cast<std::size_t>(v) < pos_.size() ? pos_[v] : 0;
  }
  int numVars() const { return static_cast<int>(pos_.size()) - 1; }
  const std::vector<std::uint32_t> &values() const { return pos_; }

  friend bool operator==(const PosTable &, const PosTable &) = default;

private:
  std::vector<std::uint32_t> pos_;
};

PosTable buildPos(const OrderedBlockedClauses &obc, int numVars);

/// One decision made while the restriction was eligible (levels 1-3, gate
/// open), recorded when tracing is on.
struct BranchEvent {
  int level = 0;
  std::uint64_t conflicts = 0;
  Var anchor = 0;
  std::uint32_t anchorPos = 0;
  Lit chosen;
  bool fromWindow = false;
};

/// Decision policy restricting levels 1-3 to a window of blocked-set clauses.
///
/// While the conflict count is below theta and the current decision level is
/// 1, 2 or 3, let v be the decision variable of level 1 and look at
/// C_pos[v] .. C_pos[v]+5. Unassigned literals of the window clauses that are
/// not yet satisfied are candidates; the one with the highest activity wins
/// (lower variable on ties) and is asserted with its saved phase. Otherwise,
/// or when the window has no candidate, the global EVSIDS choice is used.
/// The position table is computed once and never updated.
class BcdPolicy {
public:
  BcdPolicy(OrderedBlockedClauses obc, PosTable pos, ModeConfig config);

  std::optional<Lit> pickBranchLit(Solver &s);

  const OrderedBlockedClauses &clauses() const { return obc_; }
  const PosTable &positions() const { return pos_; }
  const ModeConfig &config() const { return config_; }

  void setTracing(bool on) { tracing_ = on; }
  const std::vector<BranchEvent> &trace() const { return trace_; }
  std::uint64_t windowDecisions() const { return windowDecisions_; }

private:
  std::optional<Var> pickFromWindow(const Solver &s, std::uint32_t first) const;

  OrderedBlockedClauses obc_;
  PosTable pos_;
  ModeConfig config_;
  bool tracing_ = false;
  std::vector<BranchEvent> trace_;
  std::uint64_t windowDecisions_ = 0;
};

/// Installs the policy as `solver`'s decision hook. `f` must be the formula
/// the solver was built from and `d` a decomposition of it; an invalid
/// decomposition throws ConfigError. Mode None leaves the solver untouched
/// and returns nullptr.
std::shared_ptr<BcdPolicy> attachPolicy(Solver &solver,
                                        const BlockedDecomposition &d,
                                        const Formula &f, ModeConfig config);

} // namespace bcdsat

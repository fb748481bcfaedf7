#include "bcdsat/policy.hpp"

#include "bcdsat/error.hpp"

#include <algorithm>
#include <cctype>
#include <string>

namespace bcdsat {

std::string_view toString(BranchMode m) {
  switch (m) {
  case BranchMode::Bcd1:
    return "bcd1";
  case BranchMode::Bcd2:
    return "bcd2";
  case BranchMode::Bcd3:
    return "bcd3";
  default:
    return "none";
  }
}

std::optional<BranchMode> parseBranchMode(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "none")
    return BranchMode::None;
  if (lower == "bcd1")
    return BranchMode::Bcd1;
  if (lower == "bcd2")
    return BranchMode::Bcd2;
  if (lower == "bcd3")
    return BranchMode::Bcd3;
  return std::nullopt;
}

//===----------------------------------------------------------------------===//
// Mode table
//===----------------------------------------------------------------------===//

std::uint64_t resolveTheta(BranchMode mode, std::uint64_t n, std::uint64_t m) {
  switch (mode) {
  case BranchMode::None:
    return 0;
  case BranchMode::Bcd1:
    if (n > 1'500'000 || m > 500'000)
      return 0;
    return 6'000'000;
  case BranchMode::Bcd2:
    if (n > 5'000'000 || m > 1'500'000 || n < 2 * m)
      return 0;
    if (m > 500'000)
      return 30'000;
    return 500'000;
  case BranchMode::Bcd3:
    if (n > 5'000'000 || m > 1'500'000 || n < 2 * m || n > 30 * m)
      return 0;
    if (m > 500'000)
      return 30'000;
    if (m >= 1600 && m <= 15'000)
      return 6'000'000;
    return 500'000;
  }
  return 0;
}

std::uint64_t defaultTheta(std::uint64_t m) {
  return m > 500'000 ? 30'000 : 500'000;
}

ModeConfig makeModeConfig(BranchMode mode, std::uint64_t n, std::uint64_t m,
                          std::optional<std::uint64_t> thetaOverride) {
  ModeConfig cfg;
  cfg.mode = mode;
  cfg.theta = thetaOverride ? *thetaOverride : resolveTheta(mode, n, m);
  if (mode == BranchMode::None)
    cfg.theta = 0;
  return cfg;
}

//===----------------------------------------------------------------------===//
// Clause order and positions
//===----------------------------------------------------------------------===//

OrderedBlockedClauses::OrderedBlockedClauses(const BlockedDecomposition &d,
                                             const Formula &f) {
  clauses_.reserve(d.large.size() + d.small.size());
  source_.reserve(d.large.size() + d.small.size());
  for (ClauseIndex c : d.large) {
    clauses_.push_back(f.clauses.at(c).lits);
    source_.push_back(c);
  }
  largeCount_ = clauses_.size();
  for (ClauseIndex c : d.small) {
    clauses_.push_back(f.clauses.at(c).lits);
    source_.push_back(c);
  }
}

PosTable buildPos(const OrderedBlockedClauses &obc, int numVars) {
  int vars = numVars;
  for (std::size_t i = 1; i <= obc.size(); ++i)
    for (Lit l : obc.at(i))
      vars = std::max(vars, l.var());
  std::vector<std::uint32_t> pos(static_cast<std::size_t>(vars) + 1, 0);

  // Binary clauses take priority over earlier longer clauses.
  for (std::size_t i = 1; i <= obc.size(); ++i) {
    const auto &c = obc.at(i);
    if (c.size() != 2)
      continue;
    for (Lit l : c)
      if (pos[l.var()] == 0)
        pos[l.var()] = static_cast<std::uint32_t>(i);
  }
  for (std::size_t i = 1; i <= obc.size(); ++i)
    for (Lit l : obc.at(i))
      if (pos[l.var()] == 0)
        pos[l.var()] = static_cast<std::uint32_t>(i);
  return PosTable(std::move(pos));
}

//===----------------------------------------------------------------------===//
// Decision hook
//===----------------------------------------------------------------------===//

BcdPolicy::BcdPolicy(OrderedBlockedClauses obc, PosTable pos, ModeConfig config)
    : obc_(std::move(obc)), pos_(std::move(pos)), config_(config) {}

std::optional<Var> BcdPolicy::pickFromWindow(const Solver &s,
                                             std::uint32_t first) const {
  std::optional<Var> best;
  const std::size_t last =
      std::min<std::size_t>(obc_.size(), first + ModeConfig::kWindow - 1);
  for (std::size_t i = first; i <= last; ++i) {
    const auto &c = obc_.at(i);
    if (std::any_of(c.begin(), c.end(),
                    [&](Lit l) { return s.value(l) == LBool::True; }))
      continue;
    for (Lit l : c) {
      if (s.value(l) != LBool::Undef)
        continue;
      if (!best || s.evsids().before(l.var(), *best))
        best = l.var();
    }
  }
  return best;
}

std::optional<Lit> BcdPolicy::pickBranchLit(Solver &s) {
  const int level = s.decisionLevel();
  const bool eligible = config_.active() && level >= ModeConfig::kFirstLevel &&
                        level <= ModeConfig::kLastLevel &&
                        s.conflicts() < config_.theta;
  if (!eligible)
    return s.pickGlobal();

  BranchEvent event;
  event.level = level;
  event.conflicts = s.conflicts();
  std::optional<Lit> chosen;

  if (auto root = s.decisionAt(1)) {
    event.anchor = root->var();
    event.anchorPos = pos_[event.anchor];
    if (event.anchorPos != 0) {
      if (auto v = pickFromWindow(s, event.anchorPos)) {
        chosen = s.phaseLiteral(*v);
        event.fromWindow = true;
        ++windowDecisions_;
      }
    }
  }
  if (!chosen)
    chosen = s.pickGlobal();
  if (tracing_ && chosen) {
    event.chosen = *chosen;
    trace_.push_back(event);
  }
  return chosen;
}

std::shared_ptr<BcdPolicy> attachPolicy(Solver &solver,
                                        const BlockedDecomposition &d,
                                        const Formula &f, ModeConfig config) {
  if (config.mode == BranchMode::None)
    return nullptr;
  if (!verifyDecomposition(d, f))
    throw ConfigError("blocked clause decomposition does not match the formula");
  OrderedBlockedClauses obc(d, f);
  PosTable pos = buildPos(obc, f.numVars);
  auto policy = std::make_shared<BcdPolicy>(std::move(obc), std::move(pos), config);
  solver.setDecisionHook([policy](Solver &s) { return policy->pickBranchLit(s); });
  return policy;
}

} // namespace bcdsat

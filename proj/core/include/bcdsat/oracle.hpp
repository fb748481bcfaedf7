#pragma once

#include "bcdsat/cnf.hpp"
#include "bcdsat/solver.hpp"

#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

namespace bcdsat {

/// True iff every clause (and root unit) of `f` has a literal in `model`.
/// `model` lists the true literals; throws std::invalid_argument if it
/// mentions a variable beyond f.numVars or contains both polarities of one.
bool checkModel(const Formula &f, std::span<const Lit> model);
/// Same, for a per-variable model as returned by Solver::solve.
bool checkModel(const Formula &f, const std::vector<bool> &model);

/// Reads "v ..." lines (and bare integer lines) up to the terminating 0.
/// "s ..." and "c ..." lines are skipped. Throws ParseError on bad tokens.
std::vector<Lit> parseModel(std::istream &in);

struct BruteForceResult {
  Verdict verdict = Verdict::Unknown;
  /// A satisfying assignment (slot 0 unused) when SAT.
  std::vector<bool> model;
};

constexpr int kBruteForceMaxVars = 24;

/// Truth-table enumeration. Throws ContractViolation above
/// kBruteForceMaxVars variables.
BruteForceResult bruteForce(const Formula &f);

} // namespace bcdsat

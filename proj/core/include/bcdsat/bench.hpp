#pragma once

#include "bcdsat/cnf.hpp"
#include "bcdsat/decompose.hpp"
#include "bcdsat/policy.hpp"
#include "bcdsat/solver.hpp"

#include <chrono>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace bcdsat {

//===----------------------------------------------------------------------===//
// Single run: simplify -> (decompose) -> solve
//===----------------------------------------------------------------------===//

struct RunConfig {
  BranchMode mode = BranchMode::None;
  std::optional<std::uint64_t> thetaOverride;
  std::optional<std::chrono::duration<double>> timeout;
  std::chrono::duration<double> decomposeBudget{200.0};
  std::uint64_t seed = 0;
  std::ostream *proof = nullptr;
  /// Receives "c ..." progress lines (mode, theta, decomposition quality).
  std::ostream *log = nullptr;
  /// Record decision literals and policy events.
  bool trace = false;
};

struct RunOutcome {
  Formula simplified;
  ModeConfig modeConfig;
  /// Clause / variable counts the mode table was evaluated on.
  std::uint64_t clauseCount = 0;
  std::uint64_t variableCount = 0;
  std::optional<BlockedDecomposition> decomposition;
  SolveResult result;
  double seconds = 0.0;
  std::vector<Lit> decisions;
  std::vector<BranchEvent> policyEvents;
};

/// Number of distinct variables occurring in the clauses of `f`.
std::uint64_t countOccurringVars(const Formula &f);

/// Full pipeline on an original formula. Decomposition is skipped when the
/// resolved theta is 0. A SAT model is checked against `original` and a
/// failing check throws std::logic_error.
RunOutcome runSolver(const Formula &original, const RunConfig &config);

//===----------------------------------------------------------------------===//
// Benchmark batches
//===----------------------------------------------------------------------===//

struct RunRecord {
  std::string instance;
  BranchMode mode = BranchMode::None;
  Verdict verdict = Verdict::Unknown;
  double seconds = 0.0;
  std::uint64_t conflicts = 0;
  std::uint64_t decisions = 0;
  /// Empty when no decomposition was computed.
  std::optional<double> quality;
  std::uint64_t theta = 0;

  friend bool operator==(const RunRecord &, const RunRecord &) = default;
};

struct BenchOptions {
  std::vector<BranchMode> modes{BranchMode::None, BranchMode::Bcd3};
  std::chrono::duration<double> timeout{5000.0};
  std::chrono::duration<double> decomposeBudget{200.0};
  unsigned workers = 1;
  /// Called from the collecting thread for per-run failures.
  std::function<void(const std::string &)> log;
};

/// DIMACS files (*.cnf, *.dimacs) directly inside `dir`, sorted by name.
std::vector<std::filesystem::path> listInstances(const std::filesystem::path &dir);

/// Runs every instance under every mode. Failures become UNKNOWN records.
/// Records are ordered by instance, then by the order of `modes`.
std::vector<RunRecord> benchRun(const std::vector<std::filesystem::path> &instances,
                                const BenchOptions &options);
std::vector<RunRecord> benchRun(const std::filesystem::path &dir,
                                const BenchOptions &options);

inline constexpr const char *kCsvHeader =
    "instance,mode,verdict,time_s,conflicts,decisions,quality,theta";

void writeCsv(std::ostream &out, const std::vector<RunRecord> &records);
/// Inverse of writeCsv. Throws ParseError on malformed rows.
std::vector<RunRecord> readCsv(std::istream &in);

/// Per-mode sorted solve times of SAT/UNSAT records.
using CactusSeries = std::map<BranchMode, std::vector<double>>;
CactusSeries cactusSeries(const std::vector<RunRecord> &records);
/// Rows "mode,solved,time_s": the k-th fastest solve of each mode.
void writeCactusCsv(std::ostream &out, const CactusSeries &series);
CactusSeries readCactusCsv(std::istream &in);

/// Instances reported SAT by one mode and UNSAT by another.
std::vector<std::string> findContradictions(const std::vector<RunRecord> &records);

/// Six decimals, for logs.
std::string formatDecimal(double value);

/// Shortest fixed-notation text that reads back to the same double. CSV
/// columns use this.
std::string formatExact(double value);

} // namespace bcdsat

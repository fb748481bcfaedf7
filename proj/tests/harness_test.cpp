#include "bcdsat/bench.hpp"
#include "bcdsat/dimacs.hpp"
#include "bcdsat/error.hpp"
#include "bcdsat/generators.hpp"
#include "bcdsat/oracle.hpp"
#include "bcdsat/proof_check.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

using namespace bcdsat;
namespace fs = std::filesystem;

namespace {

Formula cnf(int vars, std::initializer_list<std::initializer_list<int>> cs) {
  Formula f;
  f.numVars = vars;
  for (auto c : cs)
    f.clauses.emplace_back(c);
  return f;
}

std::vector<Lit> lits(std::initializer_list<int> ds) {
  std::vector<Lit> out;
  for (int d : ds)
    out.push_back(Lit::fromDimacs(d));
  return out;
}

ProofCheckResult check(const Formula &f, const std::string &proof) {
  std::istringstream in(proof);
  return checkProof(f, in);
}

class TempDir {
public:
  TempDir() {
    std::random_device rd;
    path_ = fs::temp_directory_path() / ("bcdsat-test-" + std::to_string(rd()));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path &path() const { return path_; }

private:
  fs::path path_;
};

} // namespace

TEST(CheckModel, Examples) {
  EXPECT_TRUE(checkModel(cnf(2, {{1, 2}}), lits({-1, 2})));
  EXPECT_FALSE(checkModel(cnf(2, {{1}, {2}}), lits({1, -2})));
}

TEST(CheckModel, UnlistedVariablesAreUnassigned) {
  EXPECT_FALSE(checkModel(cnf(2, {{1, 2}}), lits({-1})));
}

TEST(CheckModel, UnitsAndTrivialUnsat) {
  Formula f = cnf(2, {{1, 2}});
  f.units = lits({-2});
  EXPECT_FALSE(checkModel(f, lits({-1, 2})));
  EXPECT_TRUE(checkModel(f, lits({1, -2})));
  f.trivialUnsat = true;
  EXPECT_FALSE(checkModel(f, lits({1, -2})));
}

TEST(CheckModel, RejectsBadModels) {
  EXPECT_THROW(checkModel(cnf(2, {{1, 2}}), lits({3})), std::invalid_argument);
  EXPECT_THROW(checkModel(cnf(2, {{1, 2}}), lits({1, -1})), std::invalid_argument);
}

TEST(ParseModel, CompetitionOutput) {
  std::istringstream in("c hello\ns SATISFIABLE\nv 1 -2\nv 3 0\n");
  EXPECT_EQ(parseModel(in), lits({1, -2, 3}));
  std::istringstream bare("-1 2 0\n");
  EXPECT_EQ(parseModel(bare), lits({-1, 2}));
  std::istringstream bad("v 1 x 0\n");
  EXPECT_THROW(parseModel(bad), ParseError);
}

TEST(BruteForce, Examples) {
  EXPECT_EQ(bruteForce(cnf(2, {{1, 2}, {-1, 2}, {1, -2}, {-1, -2}})).verdict, Verdict::Unsat);
  BruteForceResult r = bruteForce(cnf(1, {{1}}));
  ASSERT_EQ(r.verdict, Verdict::Sat);
  EXPECT_TRUE(r.model[1]);
}

TEST(BruteForce, Refuses) {
  EXPECT_THROW(bruteForce(cnf(kBruteForceMaxVars + 1, {{1}})), ContractViolation);
  EXPECT_NO_THROW(bruteForce(cnf(kBruteForceMaxVars, {{1}})));
}

TEST(BruteForceProperty, AgreesWithSplittingOracle) {
  std::mt19937_64 rng(71);
  for (int i = 0; i < 400; ++i) {
    Formula f = oracle::randomFormula(rng, 10, 40, 3);
    BruteForceResult r = bruteForce(f);
    auto ints = oracle::toInts(f);
    ASSERT_EQ(r.verdict == Verdict::Sat, oracle::satisfiable(ints));
    if (r.verdict == Verdict::Sat)
      ASSERT_TRUE(oracle::satisfies(ints, r.model));
  }
}

TEST(CheckProof, EmptyClauseFromUnits) {
  ProofCheckResult r = check(cnf(1, {{1}, {-1}}), "0\n");
  EXPECT_TRUE(r.accepted);
}

TEST(CheckProof, RejectsNonRupLemma) {
  ProofCheckResult r = check(cnf(2, {{1}}), "2 0\n");
  EXPECT_FALSE(r.accepted);
  EXPECT_EQ(r.failedLine, 1u);
}

TEST(CheckProof, ReportsLineOfFirstBadLemma) {
  Formula f = cnf(2, {{1, 2}, {-1, 2}, {1, -2}, {-1, -2}});
  ProofCheckResult r = check(f, "c fine\n2 0\n-2 1 0\n0\n");
  EXPECT_TRUE(r.accepted);
  ProofCheckResult bad = check(cnf(3, {{1, 2}, {-1, 2}}), "2 0\n3 0\n0\n");
  EXPECT_FALSE(bad.accepted);
  EXPECT_EQ(bad.failedLine, 2u);
}

TEST(CheckProof, NoEmptyClauseIsNotAccepted) {
  Formula f = cnf(2, {{1, 2}, {-1, 2}, {1, -2}, {-1, -2}});
  ProofCheckResult r = check(f, "2 0\n");
  EXPECT_FALSE(r.accepted);
  EXPECT_EQ(r.failedLine, 0u);
}

TEST(CheckProof, DeletionsAreApplied) {
  Formula f = cnf(2, {{1, 2}, {-1, 2}, {1, -2}, {-1, -2}});
  // After deleting [1,2] the lemma [2] is no longer implied.
  ProofCheckResult r = check(f, "d 1 2 0\n2 0\n");
  EXPECT_FALSE(r.accepted);
  EXPECT_EQ(r.failedLine, 2u);
  EXPECT_EQ(r.deletions, 1u);
}

TEST(CheckProof, UnknownDeletionIgnored) {
  ProofCheckResult r = check(cnf(2, {{1}, {-1}}), "d 1 2 0\n0\n");
  EXPECT_TRUE(r.accepted);
  EXPECT_EQ(r.ignoredDeletions, 1u);
}

TEST(CheckProof, ClauseAcrossLines) {
  Formula f = cnf(2, {{1, 2}, {-1, 2}, {1, -2}, {-1, -2}});
  EXPECT_TRUE(check(f, "2\n0\n0\n").accepted);
}

TEST(CheckProof, GarbageIsRejected) {
  ProofCheckResult r = check(cnf(1, {{1}, {-1}}), "1 z 0\n");
  EXPECT_FALSE(r.accepted);
  EXPECT_EQ(r.failedLine, 1u);
}

//===----------------------------------------------------------------------===//
// Pipeline and benchmark harness
//===----------------------------------------------------------------------===//

TEST(RunSolver, AllModesAgreeWithBruteForce) {
  std::mt19937_64 rng(72);
  for (int i = 0; i < 150; ++i) {
    Formula f = oracle::randomFormula(rng, 14, 70, 4);
    const Verdict expected = bruteForce(f).verdict;
    for (BranchMode m : {BranchMode::None, BranchMode::Bcd1, BranchMode::Bcd2, BranchMode::Bcd3}) {
      RunConfig cfg;
      cfg.mode = m;
      RunOutcome out = runSolver(f, cfg);
      ASSERT_EQ(out.result.verdict, expected);
      ASSERT_EQ(out.decomposition.has_value(), out.modeConfig.active() &&
                                                   !out.simplified.trivialUnsat);
    }
  }
}

TEST(RunSolver, ReportsCountsOfSimplifiedFormula) {
  Formula f = cnf(6, {{1}, {-1, 2, 3}, {4, 5}, {4, 5}, {-4, 6}});
  RunConfig cfg;
  cfg.mode = BranchMode::Bcd1;
  RunOutcome out = runSolver(f, cfg);
  EXPECT_EQ(out.clauseCount, 3u);
  EXPECT_EQ(out.variableCount, 5u);
  EXPECT_EQ(out.modeConfig.theta, 6'000'000u);
  EXPECT_EQ(out.result.verdict, Verdict::Sat);
}

TEST(RunSolver, LogLines) {
  std::ostringstream log;
  RunConfig cfg;
  cfg.mode = BranchMode::Bcd2;
  cfg.log = &log;
  runSolver(cnf(3, {{1, 2}, {2, 3}}), cfg);
  EXPECT_NE(log.str().find("c mode bcd2 theta 0 (policy disabled)"), std::string::npos);
}

TEST(Bench, TwoInstancesTwoModes) {
  TempDir dir;
  writeDimacsFile(dir.path() / "a.cnf", gen::pigeonhole(4));
  std::mt19937_64 rng(73);
  writeDimacsFile(dir.path() / "b.cnf", gen::randomKSat(30, 100, 3, rng));
  writeDimacsFile(dir.path() / "ignored.txt", gen::pigeonhole(2));
  BenchOptions opts;
  opts.timeout = std::chrono::duration<double>(30);
  auto records = benchRun(dir.path(), opts);
  ASSERT_EQ(records.size(), 4u);
  EXPECT_EQ(records[0].instance, "a.cnf");
  EXPECT_EQ(records[0].mode, BranchMode::None);
  EXPECT_EQ(records[1].mode, BranchMode::Bcd3);
  EXPECT_EQ(records[0].verdict, Verdict::Unsat);
  EXPECT_EQ(records[1].verdict, Verdict::Unsat);
  EXPECT_FALSE(records[0].quality.has_value());
  EXPECT_TRUE(findContradictions(records).empty());

  std::stringstream csv;
  writeCsv(csv, records);
  std::string header;
  std::getline(csv, header);
  EXPECT_EQ(header, kCsvHeader);
  int rows = 0;
  for (std::string line; std::getline(csv, line);)
    ++rows;
  EXPECT_EQ(rows, 4);
}

TEST(Bench, ParallelWorkersGiveSameVerdicts) {
  TempDir dir;
  std::mt19937_64 rng(74);
  for (int i = 0; i < 6; ++i)
    writeDimacsFile(dir.path() / ("r" + std::to_string(i) + ".cnf"),
                    gen::randomKSat(40, 170, 3, rng));
  BenchOptions serial;
  BenchOptions parallel;
  parallel.workers = 3;
  auto a = benchRun(dir.path(), serial);
  auto b = benchRun(dir.path(), parallel);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].instance, b[i].instance);
    EXPECT_EQ(a[i].verdict, b[i].verdict);
    EXPECT_EQ(a[i].conflicts, b[i].conflicts);
  }
}

TEST(Bench, UnreadableInstanceBecomesUnknown) {
  TempDir dir;
  {
    std::ofstream bad(dir.path() / "broken.cnf");
    bad << "p cnf 2 1\n1 2\n";
  }
  std::vector<std::string> messages;
  BenchOptions opts;
  opts.modes = {BranchMode::None};
  opts.log = [&](const std::string &m) { messages.push_back(m); };
  auto records = benchRun(dir.path(), opts);
  ASSERT_EQ(records.size(), 1u);
  EXPECT_EQ(records[0].verdict, Verdict::Unknown);
  EXPECT_EQ(messages.size(), 1u);
}

TEST(Cactus, SortsSolveTimes) {
  std::vector<RunRecord> records;
  for (double t : {1.0, 5.0, 2.0})
    records.push_back({"x" + std::to_string(t), BranchMode::Bcd3, Verdict::Sat, t, 0, 0, {}, 0});
  records.push_back({"y", BranchMode::Bcd3, Verdict::Unknown, 0.5, 0, 0, {}, 0});
  CactusSeries s = cactusSeries(records);
  EXPECT_EQ(s[BranchMode::Bcd3], (std::vector<double>{1.0, 2.0, 5.0}));
  std::stringstream out;
  writeCactusCsv(out, s);
  EXPECT_EQ(out.str(), "mode,solved,time_s\nbcd3,1,1\nbcd3,2,2\nbcd3,3,5\n");
  EXPECT_EQ(readCactusCsv(out), s);
}

TEST(Csv, RoundTripIsLossless) {
  std::mt19937_64 rng(75);
  std::uniform_int_distribution<int> pick(0, 3);
  std::uniform_int_distribution<std::uint64_t> count(0, 1'000'000);
  std::vector<RunRecord> records;
  for (int i = 0; i < 200; ++i) {
    RunRecord r;
    r.instance = i % 17 == 0 ? "odd, \"name\" " + std::to_string(i) : "inst" + std::to_string(i);
    r.mode = static_cast<BranchMode>(pick(rng));
    r.verdict = static_cast<Verdict>(pick(rng) % 3);
    r.seconds = static_cast<double>(count(rng)) / 1e6;
    r.conflicts = count(rng);
    r.decisions = count(rng);
    if (pick(rng))
      r.quality = static_cast<double>(count(rng) % 1'000'001) / 1e6;
    r.theta = count(rng);
    records.push_back(r);
  }
  std::stringstream csv;
  writeCsv(csv, records);
  EXPECT_EQ(readCsv(csv), records);
}

TEST(Csv, MalformedRows) {
  std::istringstream noHeader("a,b\n");
  EXPECT_THROW(readCsv(noHeader), ParseError);
  std::istringstream shortRow(std::string(kCsvHeader) + "\nx,none,SAT\n");
  EXPECT_THROW(readCsv(shortRow), ParseError);
  std::istringstream badVerdict(std::string(kCsvHeader) + "\nx,none,MAYBE,1.0,0,0,,0\n");
  EXPECT_THROW(readCsv(badVerdict), ParseError);
}

TEST(Contradictions, Detected) {
  std::vector<RunRecord> records{
      {"a", BranchMode::None, Verdict::Sat, 1, 0, 0, {}, 0},
      {"a", BranchMode::Bcd3, Verdict::Unsat, 1, 0, 0, {}, 0},
      {"b", BranchMode::None, Verdict::Sat, 1, 0, 0, {}, 0},
      {"b", BranchMode::Bcd3, Verdict::Unknown, 1, 0, 0, {}, 0}};
  EXPECT_EQ(findContradictions(records), (std::vector<std::string>{"a"}));
}

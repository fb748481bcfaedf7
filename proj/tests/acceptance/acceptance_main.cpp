// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include "bcdsat/bce.hpp"
#include "bcdsat/bench.hpp"
#include "bcdsat/decompose.hpp"
#include "bcdsat/dimacs.hpp"
#include "bcdsat/generators.hpp"
#include "bcdsat/oracle.hpp"
#include "bcdsat/policy.hpp"
#include "bcdsat/proof_check.hpp"
#include "bcdsat/simplify.hpp"

#include "oracles.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>

using namespace bcdsat;
namespace fs = std::filesystem;
using Seconds = std::chrono::duration<double>;

namespace {

const std::vector<BranchMode> kAllModes{BranchMode::None, BranchMode::Bcd1,
                                        BranchMode::Bcd2, BranchMode::Bcd3};

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void criterion(const std::string &name, double limitSeconds,
               const std::function<Outcome()> &body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception &e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double took = Seconds(std::chrono::steady_clock::now() - start).count();
  if (limitSeconds > 0 && took > limitSeconds) {
    o.pass = false;
    o.detail += "; exceeded " + formatDecimal(limitSeconds) + " s";
  }
  if (!o.pass)
    ++failures;
  std::printf("%s %s: %s [%.2f s]\n", o.pass ? "PASS" : "FAIL", name.c_str(),
              o.detail.c_str(), took);
  std::fflush(stdout);
}

// Random corpus: at most 20 variables and 90 clauses. Clause/variable ratios
// run from 1 to 7; one formula in five is unstructured (units, any length).
std::vector<Formula> randomCorpus() {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> vars(5, 20), len(2, 5);
  std::uniform_real_distribution<double> ratio(1.0, 7.0);
  std::vector<Formula> out;
  for (int i = 0; out.size() < 1000; ++i) {
    const int n = vars(rng);
    const int m = std::min(90, static_cast<int>(n * ratio(rng)));
    if (i % 5 == 0)
      out.push_back(oracle::randomFormula(rng, 20, 90, len(rng)));
    else if (i % 5 < 3)
      out.push_back(gen::randomKSat(n, m, 3, rng));
    else
      out.push_back(gen::randomMixed(n, m, 2, 4, rng));
  }
  return out;
}

// Every formula over variables 1..3 made of at most four distinct
// non-tautological clauses.
std::vector<Formula> threeVariableFormulas() {
  std::vector<std::vector<int>> pool;
  for (int mask = 1; mask < 27; ++mask) {
    std::vector<int> c;
    int m = mask;
    for (int v = 1; v <= 3; ++v, m /= 3)
      if (m % 3)
        c.push_back(m % 3 == 1 ? v : -v);
    pool.push_back(c);
  }
  std::vector<Formula> out;
  std::vector<std::size_t> pick;
  std::function<void(std::size_t)> extend = [&](std::size_t from) {
    Formula f;
    f.numVars = 3;
    for (std::size_t i : pick) {
      std::vector<Lit> lits;
      for (int x : pool[i])
        lits.push_back(Lit::fromDimacs(x));
      f.clauses.emplace_back(lits);
    }
    out.push_back(std::move(f));
    if (pick.size() == 4)
      return;
    for (std::size_t i = from; i < pool.size(); ++i) {
      pick.push_back(i);
      extend(i + 1);
      pick.pop_back();
    }
  };
  extend(0);
  return out;
}

struct Named {
  std::string name;
  Formula formula;
};

// Structured instances of at least 10^4 clauses, round-tripped through
// DIMACS files.
std::vector<Named> structuredCorpus(const fs::path &dir) {
  std::mt19937_64 rng(7);
  std::vector<Named> raw;
  int bits = 8;
  Formula miter = gen::multiplierMiter(bits);
  while (miter.clauses.size() < 10'000)
    miter = gen::multiplierMiter(++bits);
  raw.push_back({"miter" + std::to_string(bits), miter});
  raw.push_back({"php30", gen::pigeonhole(30)});
  raw.push_back({"color3000", gen::graphColoring(3000, 7000, 4, rng)});
  raw.push_back({"parity3000", gen::parityChain(3000, true)});
  raw.push_back({"ksat5000", gen::randomKSat(5000, 21'300, 3, rng)});
  raw.push_back({"mixed8000", gen::randomMixed(8000, 20'000, 2, 6, rng)});

  std::vector<Named> out;
  for (auto &[name, f] : raw) {
    fs::path p = dir / (name + ".cnf");
    writeDimacsFile(p, f);
    out.push_back({name, readDimacsFile(p)});
  }
  return out;
}

// Small search-heavy instances for the gate and window checks.
std::vector<Formula> searchCorpus() {
  std::mt19937_64 rng(99);
  std::vector<Formula> out;
  std::uniform_real_distribution<double> ratio(3.6, 5.0);
  for (int i = 0; i < 44; ++i) {
    const int n = 40 + 2 * i;
    out.push_back(gen::randomKSat(n, static_cast<int>(n * ratio(rng)), 3, rng));
  }
  out.push_back(gen::pigeonhole(6));
  out.push_back(gen::pigeonhole(7));
  out.push_back(gen::multiplierMiter(4));
  out.push_back(gen::parityChain(80, false));
  out.push_back(gen::graphColoring(60, 140, 3, rng));
  out.push_back(gen::graphColoring(80, 180, 3, rng));
  return out;
}

oracle::IntCnf sequence(const OrderedBlockedClauses &obc) {
  oracle::IntCnf out;
  for (std::size_t i = 1; i <= obc.size(); ++i) {
    std::vector<int> c;
    for (Lit l : obc.at(i))
      c.push_back(l.toDimacs());
    out.push_back(c);
  }
  return out;
}

std::vector<Clause> pick(const Formula &f, const std::vector<ClauseIndex> &idx) {
  std::vector<Clause> out;
  for (ClauseIndex c : idx)
    out.push_back(f.clauses[c]);
  return out;
}

} // namespace

int main() {
  fs::path work = fs::temp_directory_path() /
                  ("bcdsat-acceptance-" + std::to_string(std::random_device{}()));
  fs::create_directories(work);

  const auto corpus = randomCorpus();

  criterion("mode table", 1.0, [] {
    struct Point {
      BranchMode mode;
      std::uint64_t n, m, theta;
    };
    const Point points[] = {
        // Reference points.
        {BranchMode::Bcd1, 4'302'000, 1'052'071, 0},
        {BranchMode::Bcd2, 4'302'000, 1'052'071, 30'000},
        {BranchMode::Bcd3, 100'000, 2'000, 0},
        {BranchMode::Bcd3, 50'000, 2'000, 6'000'000},
        // Boundary grid.
        {BranchMode::Bcd1, 1'500'000, 1000, 6'000'000},
        {BranchMode::Bcd1, 1'500'001, 1000, 0},
        {BranchMode::Bcd1, 1000, 500'000, 6'000'000},
        {BranchMode::Bcd1, 1000, 500'001, 0},
        {BranchMode::Bcd2, 5'000'000, 600'000, 30'000},
        {BranchMode::Bcd2, 5'000'001, 600'000, 0},
        {BranchMode::Bcd2, 3'000'000, 1'500'000, 30'000},
        {BranchMode::Bcd2, 3'000'002, 1'500'001, 0},
        {BranchMode::Bcd2, 2000, 1000, 500'000},
        {BranchMode::Bcd2, 1999, 1000, 0},
        {BranchMode::Bcd2, 1'000'000, 500'000, 500'000},
        {BranchMode::Bcd2, 1'000'002, 500'001, 30'000},
        {BranchMode::Bcd3, 30'000, 1000, 500'000},
        {BranchMode::Bcd3, 30'001, 1000, 0},
        {BranchMode::Bcd3, 3200, 1600, 6'000'000},
        {BranchMode::Bcd3, 3198, 1599, 500'000},
        {BranchMode::Bcd3, 3199, 1600, 0},
        {BranchMode::Bcd3, 30'000, 15'000, 6'000'000},
        {BranchMode::Bcd3, 30'002, 15'001, 500'000},
        {BranchMode::Bcd3, 5'000'000, 600'000, 30'000},
        {BranchMode::Bcd3, 5'000'001, 600'000, 0},
        {BranchMode::Bcd3, 3'000'002, 1'500'001, 0},
    };
    int wrong = 0;
    std::string first;
    for (const Point &p : points) {
      const std::uint64_t got = resolveTheta(p.mode, p.n, p.m);
      if (got != p.theta) {
        if (!wrong++)
          first = std::string(toString(p.mode)) + " n=" + std::to_string(p.n) +
                  " m=" + std::to_string(p.m) + " gave " + std::to_string(got);
      }
    }
    const std::size_t total = std::size(points);
    return Outcome{wrong == 0, std::to_string(total) + " points, " +
                                   std::to_string(wrong) + " mismatches" +
                                   (first.empty() ? "" : " (first: " + first + ")")};
  });

  criterion("verdict soundness", 120.0, [&] {
    std::size_t runs = 0, disagreements = 0;
    auto checkAll = [&](const std::vector<Formula> &formulas) {
      for (const Formula &f : formulas) {
        const Verdict expected = bruteForce(f).verdict;
        for (BranchMode m : kAllModes) {
          RunConfig cfg;
          cfg.mode = m;
          ++runs;
          if (runSolver(f, cfg).result.verdict != expected)
            ++disagreements;
        }
      }
    };
    checkAll(corpus);
    const auto exhaustive = threeVariableFormulas();
    checkAll(exhaustive);
    return Outcome{disagreements == 0,
                   std::to_string(corpus.size()) + " random + " +
                       std::to_string(exhaustive.size()) + " three-variable formulas, " +
                       std::to_string(runs) + " runs, " + std::to_string(disagreements) +
                       " disagreements with brute force"};
  });

  criterion("decomposition validity", 0, [&] {
    std::size_t checked = 0, invalid = 0;
    double worst = 1.0;
    for (const Formula &raw : corpus) {
      Formula f = simplifyRoot(raw);
      if (f.trivialUnsat)
        continue;
      BlockedDecomposition d = decompose(f, Seconds(200));
      ++checked;
      worst = std::min(worst, d.quality());
      oracle::IntCnf large, small;
      for (const auto &s : d.largeElimination)
        large.push_back(f.clauses[s.clause].toDimacs());
      for (const auto &s : d.smallElimination)
        small.push_back(f.clauses[s.clause].toDimacs());
      if (!verifyDecomposition(d, f) || d.quality() < 0.5 ||
          !oracle::eliminatesInOrder(large) || !oracle::eliminatesInOrder(small))
        ++invalid;
    }

    std::string structured;
    for (const auto &[name, raw] : structuredCorpus(work)) {
      Formula f = simplifyRoot(raw);
      auto t0 = std::chrono::steady_clock::now();
      BlockedDecomposition d = decompose(f, Seconds(200));
      const double took = Seconds(std::chrono::steady_clock::now() - t0).count();
      const bool ok = raw.clauses.size() >= 10'000 && verifyDecomposition(d, f) &&
                      d.quality() >= 0.5 &&
                      bceFixpoint(pick(f, d.large), f.numVars).residue.empty() &&
                      bceFixpoint(pick(f, d.small), f.numVars).residue.empty();
      ++checked;
      if (!ok)
        ++invalid;
      structured += " " + name + "(" + std::to_string(raw.clauses.size()) + " cl, q=" +
                    formatDecimal(d.quality()).substr(0, 5) + ", " +
                    formatDecimal(took).substr(0, 5) + " s)";
    }

    std::mt19937_64 rng(100'000);
    std::string timing;
    bool fast = true;
    for (auto [name, big] :
         {std::pair{"ksat", gen::randomKSat(25'000, 100'000, 3, rng)},
          std::pair{"color", gen::graphColoring(8000, 20'000, 4, rng)}}) {
      if (big.clauses.size() < 100'000)
        big = gen::graphColoring(10'000, 25'000, 5, rng);
      Formula f = simplifyRoot(big);
      auto t0 = std::chrono::steady_clock::now();
      BlockedDecomposition d = decompose(f, Seconds(200));
      const double took = Seconds(std::chrono::steady_clock::now() - t0).count();
      fast &= took <= 10.0;
      if (!verifyDecomposition(d, f) || d.quality() < 0.5)
        ++invalid;
      timing += std::string(" ") + name + " " + std::to_string(big.clauses.size()) +
                " clauses in " + formatDecimal(took).substr(0, 5) + " s (q=" +
                formatDecimal(d.quality()).substr(0, 5) + ");";
    }
    return Outcome{invalid == 0 && fast,
                   std::to_string(checked) + " formulas, " + std::to_string(invalid) +
                       " invalid, worst random quality " + formatDecimal(worst) +
                       "; structured:" + structured + "; large:" + timing};
  });

  criterion("BCE confluence", 0, [] {
    std::mt19937_64 rng(555);
    int mismatches = 0;
    std::size_t residueClauses = 0;
    for (int i = 0; i < 500; ++i) {
      Formula f = oracle::randomFormula(rng, 12, 30, 4, i % 4 == 0);
      BceResult r = bceFixpoint(f.clauses, f.numVars);
      std::vector<std::size_t> got(r.residue.begin(), r.residue.end());
      if (got != oracle::bceResidue(oracle::toInts(f)))
        ++mismatches;
      residueClauses += got.size();
    }
    return Outcome{mismatches == 0, "500 formulas, " + std::to_string(mismatches) +
                                        " residue mismatches (" +
                                        std::to_string(residueClauses) +
                                        " residue clauses in total)"};
  });

  const auto search = searchCorpus();

  criterion("gate equivalence", 0, [&] {
    int mismatches = 0;
    std::uint64_t decisions = 0;
    for (const Formula &f : search) {
      SolverOptions opts;
      opts.recordDecisions = true;
      Solver plain(f, opts), gated(f, opts);
      auto policy = attachPolicy(gated, decompose(f, Seconds(200)), f, {BranchMode::Bcd3, 0});
      SolveResult a = plain.solve(), b = gated.solve();
      decisions += a.stats.decisions;
      if (!policy || a.verdict != b.verdict || a.stats.conflicts != b.stats.conflicts ||
          plain.decisionTrace() != gated.decisionTrace())
        ++mismatches;
    }
    return Outcome{mismatches == 0 && search.size() == 50,
                   std::to_string(search.size()) + " instances, " +
                       std::to_string(decisions) + " decisions compared, " +
                       std::to_string(mismatches) + " mismatches"};
  });

  criterion("window property", 0, [&] {
    std::uint64_t events = 0, windowed = 0, violations = 0;
    for (const Formula &raw : search) {
      Formula f = simplifyRoot(raw);
      if (f.trivialUnsat)
        continue;
      BlockedDecomposition d = decompose(f, Seconds(200));
      OrderedBlockedClauses obc(d, f);
      const auto seq = sequence(obc);
      const auto pos = oracle::positions(seq, f.numVars);
      const std::uint64_t theta = 6'000'000;
      Solver s(f);
      auto policy = attachPolicy(s, d, f, {BranchMode::Bcd3, theta});
      policy->setTracing(true);
      s.solve();
      for (const BranchEvent &e : policy->trace()) {
        ++events;
        bool ok = e.level >= 1 && e.level <= 3 && e.conflicts < theta &&
                  e.anchorPos == pos[e.anchor];
        if (e.fromWindow) {
          ++windowed;
          bool inside = false;
          for (std::size_t k = e.anchorPos; k != 0 && k < e.anchorPos + 6 && k <= seq.size(); ++k)
            inside |= oracle::has(seq[k - 1], e.chosen.var()) ||
                      oracle::has(seq[k - 1], -e.chosen.var());
          ok &= inside;
        }
        if (!ok)
          ++violations;
      }
    }
    return Outcome{violations == 0 && windowed > 0,
                   std::to_string(events) + " restricted-level decisions, " +
                       std::to_string(windowed) + " from the window, " +
                       std::to_string(violations) + " violations"};
  });

  criterion("pos oracle", 0, [&] {
    std::size_t formulas = 0, mismatches = 0;
    auto check = [&](const Formula &raw) {
      Formula f = simplifyRoot(raw);
      if (f.trivialUnsat)
        return;
      OrderedBlockedClauses obc(decompose(f, Seconds(200)), f);
      ++formulas;
      if (buildPos(obc, f.numVars).values() != oracle::positions(sequence(obc), f.numVars))
        ++mismatches;
    };
    for (const Formula &f : corpus)
      check(f);
    for (const Formula &f : search)
      check(f);
    for (const auto &[name, f] : structuredCorpus(work))
      check(f);
    return Outcome{mismatches == 0, std::to_string(formulas) + " formulas, " +
                                        std::to_string(mismatches) + " mismatches"};
  });

  criterion("certified UNSAT", 0, [&] {
    std::size_t proofs = 0, rejected = 0, lemmas = 0;
    for (const Formula &f : corpus) {
      if (f.numVars > 20)
        continue;
      for (BranchMode m : kAllModes) {
        std::stringstream proof;
        RunConfig cfg;
        cfg.mode = m;
        cfg.proof = &proof;
        if (runSolver(f, cfg).result.verdict != Verdict::Unsat)
          continue;
        ++proofs;
        ProofCheckResult r = checkProof(f, proof);
        lemmas += r.lemmas;
        if (!r.accepted)
          ++rejected;
      }
    }
    return Outcome{rejected == 0 && proofs > 0,
                   std::to_string(proofs) + " UNSAT runs, " + std::to_string(lemmas) +
                       " lemmas, " + std::to_string(rejected) + " proofs rejected"};
  });

  criterion("bench smoke", 0, [&] {
    fs::path dir = work / "bench";
    fs::create_directories(dir);
    std::mt19937_64 rng(60);
    for (int i = 0; i < 60; ++i) {
      char name[32];
      std::snprintf(name, sizeof name, "uf%03d.cnf", i);
      writeDimacsFile(dir / name, gen::randomKSat(175, 746, 3, rng));
    }
    BenchOptions opts;
    opts.modes = {BranchMode::None, BranchMode::Bcd3};
    opts.timeout = Seconds(30);
    auto records = benchRun(dir, opts);

    const fs::path csvPath = work / "results.csv", cactusPath = work / "cactus.csv";
    {
      std::ofstream csv(csvPath), cactus(cactusPath);
      writeCsv(csv, records);
      writeCactusCsv(cactus, cactusSeries(records));
    }
    std::ifstream csvIn(csvPath), cactusIn(cactusPath);
    const bool lossless = readCsv(csvIn) == records &&
                          readCactusCsv(cactusIn) == cactusSeries(records);
    const auto contradictions = findContradictions(records);

    std::size_t solved[2] = {0, 0};
    for (const RunRecord &r : records)
      if (r.verdict != Verdict::Unknown)
        ++solved[r.mode == BranchMode::None ? 0 : 1];
    return Outcome{records.size() == 120 && lossless && contradictions.empty(),
                   std::to_string(records.size()) + " rows, solved none=" +
                       std::to_string(solved[0]) + " bcd3=" + std::to_string(solved[1]) +
                       ", " + std::to_string(contradictions.size()) +
                       " contradictions, csv round trip " + (lossless ? "exact" : "LOSSY")};
  });

  fs::remove_all(work);
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}

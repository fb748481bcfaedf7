#include "cli.hpp"

#include "bcdsat/bench.hpp"
#include "bcdsat/decompose.hpp"
#include "bcdsat/dimacs.hpp"
#include "bcdsat/error.hpp"
#include "bcdsat/oracle.hpp"
#include "bcdsat/proof_check.hpp"
#include "bcdsat/simplify.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace bcdsat::cli {
namespace {

struct SolveArgs {
  std::string file;
  std::string mode = "none";
  std::string theta;
  double timeout = 0;
  std::string proof;
  std::uint64_t seed = 0;
  double decomposeBudget = 200;
};

struct DecomposeArgs {
  std::string file;
  std::string outPrefix;
  double decomposeBudget = 200;
};

struct BenchArgs {
  std::string dir;
  std::string modes = "none,bcd3";
  double timeout = 5000;
  std::string csv;
  std::string cactus;
  unsigned jobs = 1;
  double decomposeBudget = 200;
};

struct CheckArgs {
  std::string cnf;
  std::string evidence;
};

BranchMode modeOrThrow(const std::string &text) {
  auto m = parseBranchMode(text);
  if (!m)
    throw ConfigError("unknown mode '" + text + "' (none, bcd1, bcd2, bcd3)");
  return *m;
}

Formula load(const std::string &path, std::ostream &out) {
  std::vector<std::string> warnings;
  Formula f = readDimacsFile(path, &warnings);
  for (const auto &w : warnings)
    out << "c warning: " << w << '\n';
  return f;
}

void printModel(std::ostream &out, const std::vector<bool> &model) {
  std::size_t onLine = 0;
  out << 'v';
  for (std::size_t v = 1; v < model.size(); ++v) {
    if (onLine == 16) {
      out << "\nv";
      onLine = 0;
    }
    out << ' ' << (model[v] ? "" : "-") << v;
    ++onLine;
  }
  out << " 0\n";
}

int reportVerdict(std::ostream &out, const SolveResult &r) {
  switch (r.verdict) {
  case Verdict::Sat:
    out << "s SATISFIABLE\n";
    printModel(out, r.model);
    return kExitSat;
  case Verdict::Unsat:
    out << "s UNSATISFIABLE\n";
    return kExitUnsat;
  default:
    out << "s UNKNOWN\n";
    return kExitUnknown;
  }
}

int runSolve(const SolveArgs &a, std::ostream &out) {
  RunConfig cfg;
  cfg.mode = modeOrThrow(a.mode);
  cfg.seed = a.seed;
  cfg.decomposeBudget = std::chrono::duration<double>(a.decomposeBudget);
  if (a.timeout > 0)
    cfg.timeout = std::chrono::duration<double>(a.timeout);
  cfg.log = &out;

  Formula f = load(a.file, out);

  if (!a.theta.empty()) {
    if (cfg.mode == BranchMode::None)
      throw ConfigError("--theta needs a bcd mode");
    if (a.theta == "auto") {
      cfg.thetaOverride = defaultTheta(countOccurringVars(simplifyRoot(f)));
    } else {
      std::size_t used = 0;
      unsigned long long v = 0;
      try {
        v = std::stoull(a.theta, &used);
      } catch (const std::exception &) {
        used = 0;
      }
      if (used != a.theta.size() || a.theta.front() == '-')
        throw ConfigError("--theta expects a conflict count or 'auto'");
      cfg.thetaOverride = v;
    }
  }

  std::ofstream proof;
  if (!a.proof.empty()) {
    proof.open(a.proof);
    if (!proof)
      throw IoError("cannot open proof file '" + a.proof + "'");
    cfg.proof = &proof;
  }

  RunOutcome outcome = runSolver(f, cfg);
  const SolveStats &st = outcome.result.stats;
  out << "c conflicts " << st.conflicts << " decisions " << st.decisions
      << " propagations " << st.propagations << " restarts " << st.restarts
      << '\n';
  out << "c time " << formatDecimal(outcome.seconds) << " s\n";
  if (proof.is_open()) {
    proof.flush();
    if (!proof)
      throw IoError("failed writing proof file '" + a.proof + "'");
  }
  return reportVerdict(out, outcome.result);
}

Formula subset(const Formula &f, const std::vector<ClauseIndex> &order) {
  Formula out;
  out.numVars = f.numVars;
  for (ClauseIndex c : order)
    out.clauses.push_back(f.clauses[c]);
  return out;
}

int runDecompose(const DecomposeArgs &a, std::ostream &out) {
  Formula f = simplifyRoot(load(a.file, out));
  const auto start = std::chrono::steady_clock::now();
  ImproveStats stats;
  BlockedDecomposition d =
      decompose(f, std::chrono::duration<double>(a.decomposeBudget), &stats);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  std::string prefix = a.outPrefix;
  if (prefix.empty())
    prefix = std::filesystem::path(a.file).stem().string();
  writeDimacsFile(prefix + ".L.cnf", subset(f, d.large));
  writeDimacsFile(prefix + ".S.cnf", subset(f, d.small));

  out << "quality " << formatDecimal(d.quality()) << " large " << d.large.size()
      << " small " << d.small.size() << " units " << f.units.size()
      << " moved " << stats.moved << " passes " << stats.passes
      << " budget_expired " << (stats.budgetExpired ? 1 : 0) << " time_s "
      << formatDecimal(seconds) << '\n';
  return 0;
}

std::vector<BranchMode> parseModeList(const std::string &text) {
  std::vector<BranchMode> modes;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ','))
    if (!item.empty())
      modes.push_back(modeOrThrow(item));
  if (modes.empty())
    throw ConfigError("--modes is empty");
  return modes;
}

void writeTo(const std::string &path, const std::function<void(std::ostream &)> &fn) {
  std::ofstream file(path);
  if (!file)
    throw IoError("cannot open '" + path + "'");
  fn(file);
  if (!file)
    throw IoError("failed writing '" + path + "'");
}

int runBench(const BenchArgs &a, std::ostream &out, std::ostream &err) {
  BenchOptions opts;
  opts.modes = parseModeList(a.modes);
  opts.timeout = std::chrono::duration<double>(a.timeout);
  opts.decomposeBudget = std::chrono::duration<double>(a.decomposeBudget);
  opts.workers = a.jobs;
  opts.log = [&err](const std::string &msg) { err << "c run failed: " << msg << '\n'; };

  auto instances = listInstances(a.dir);
  if (instances.empty())
    throw IoError("no .cnf files in '" + a.dir + "'");
  auto records = benchRun(instances, opts);

  if (a.csv.empty())
    writeCsv(out, records);
  else
    writeTo(a.csv, [&](std::ostream &o) { writeCsv(o, records); });

  auto series = cactusSeries(records);
  std::string cactus = a.cactus;
  if (cactus.empty() && !a.csv.empty())
    cactus = std::filesystem::path(a.csv).replace_extension(".cactus.csv").string();
  if (!cactus.empty())
    writeTo(cactus, [&](std::ostream &o) { writeCactusCsv(o, series); });

  for (BranchMode m : opts.modes) {
    auto it = series.find(m);
    err << "c " << toString(m) << ": solved "
        << (it == series.end() ? 0 : it->second.size()) << " of "
        << instances.size() << '\n';
  }
  auto bad = findContradictions(records);
  for (const auto &name : bad)
    err << "error: contradictory verdicts on " << name << '\n';
  return bad.empty() ? 0 : kExitError;
}

int runCheckModel(const CheckArgs &a, std::ostream &out) {
  Formula f = load(a.cnf, out);
  std::ifstream in(a.evidence);
  if (!in)
    throw IoError("cannot open '" + a.evidence + "'");
  auto model = parseModel(in);
  if (checkModel(f, model)) {
    out << "s MODEL VALID\n";
    return 0;
  }
  out << "s MODEL INVALID\n";
  return kExitError;
}

int runCheckProof(const CheckArgs &a, std::ostream &out) {
  Formula f = load(a.cnf, out);
  std::ifstream in(a.evidence);
  if (!in)
    throw IoError("cannot open '" + a.evidence + "'");
  ProofCheckResult r = checkProof(f, in);
  out << "c lemmas " << r.lemmas << " deletions " << r.deletions << " ignored "
      << r.ignoredDeletions << '\n';
  if (r.accepted) {
    out << "s VERIFIED\n";
    return 0;
  }
  if (r.failedLine)
    out << "c line " << r.failedLine << ": " << r.message << '\n';
  else
    out << "c " << r.message << '\n';
  out << "s NOT VERIFIED\n";
  return kExitError;
}

int runOracle(const std::string &file, std::ostream &out) {
  Formula f = load(file, out);
  BruteForceResult r = bruteForce(f);
  SolveResult s;
  s.verdict = r.verdict;
  s.model = r.model;
  return reportVerdict(out, s);
}

} // namespace

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
  CLI::App app{"CDCL SAT solver with blocked clause decomposition branching", "bcdsat"};
  app.require_subcommand(1);

  SolveArgs solve;
  auto *solveCmd = app.add_subcommand("solve", "Solve a DIMACS CNF file");
  solveCmd->add_option("file", solve.file, "DIMACS input")->required();
  solveCmd->add_option("--mode", solve.mode, "none, bcd1, bcd2 or bcd3")
      ->capture_default_str();
  solveCmd->add_option("--theta", solve.theta,
                       "Conflict budget of the window policy, or 'auto'");
  solveCmd->add_option("--timeout", solve.timeout, "Wall-clock limit in seconds")
      ->check(CLI::PositiveNumber);
  solveCmd->add_option("--proof", solve.proof, "Write a DRAT proof");
  solveCmd->add_option("--seed", solve.seed, "Activity noise seed");
  solveCmd->add_option("--decompose-budget", solve.decomposeBudget,
                       "Seconds for decomposition improvement")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();

  DecomposeArgs dec;
  auto *decCmd = app.add_subcommand("decompose", "Write the L/S blocked sets");
  decCmd->add_option("file", dec.file, "DIMACS input")->required();
  decCmd->add_option("--out-prefix", dec.outPrefix,
                     "Writes PREFIX.L.cnf and PREFIX.S.cnf");
  decCmd->add_option("--decompose-budget", dec.decomposeBudget,
                     "Seconds for decomposition improvement")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();

  BenchArgs bench;
  auto *benchCmd = app.add_subcommand("bench", "Run every .cnf in a directory");
  benchCmd->add_option("dir", bench.dir, "Instance directory")
      ->required()
      ->check(CLI::ExistingDirectory);
  benchCmd->add_option("--modes", bench.modes, "Comma-separated modes")
      ->capture_default_str();
  benchCmd->add_option("--timeout", bench.timeout, "Per-run limit in seconds")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  benchCmd->add_option("--csv", bench.csv, "Result CSV (default: stdout)");
  benchCmd->add_option("--cactus", bench.cactus, "Cactus CSV");
  benchCmd->add_option("--jobs", bench.jobs, "Parallel runs")
      ->check(CLI::Range(1u, 1024u))
      ->capture_default_str();
  benchCmd->add_option("--decompose-budget", bench.decomposeBudget,
                       "Seconds for decomposition improvement")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();

  CheckArgs model;
  auto *modelCmd = app.add_subcommand("check-model", "Validate a model");
  modelCmd->add_option("cnf", model.cnf)->required();
  modelCmd->add_option("model", model.evidence)->required();

  CheckArgs proof;
  auto *proofCmd = app.add_subcommand("check-proof", "Validate a DRAT refutation");
  proofCmd->add_option("cnf", proof.cnf)->required();
  proofCmd->add_option("proof", proof.evidence)->required();

  std::string oracleFile;
  auto *oracleCmd =
      app.add_subcommand("oracle", "Truth-table solve (at most 24 variables)");
  oracleCmd->add_option("file", oracleFile)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError &e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "error: " << e.what() << '\n';
    return kExitError;
  }

  try {
    if (*solveCmd)
      return runSolve(solve, out);
    if (*decCmd)
      return runDecompose(dec, out);
    if (*benchCmd)
      return runBench(bench, out, err);
    if (*modelCmd)
      return runCheckModel(model, out);
    if (*proofCmd)
      return runCheckProof(proof, out);
    if (*oracleCmd)
      return runOracle(oracleFile, out);
  } catch (const std::exception &e) {
    out.flush();
    err << "error: " << e.what() << '\n';
  }
  return kExitError;
}

} // namespace bcdsat::cli

#include "bcdsat/bench.hpp"

#include "bcdsat/dimacs.hpp"
#include "bcdsat/error.hpp"
#include "bcdsat/oracle.hpp"
#include "bcdsat/simplify.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace bcdsat {

std::uint64_t countOccurringVars(const Formula &f) {
  std::vector<char> seen(static_cast<std::size_t>(f.numVars) + 1, 0);
  std::uint64_t count = 0;
  for (const Clause &c : f.clauses)
    for (Lit l : c.lits) {
      if (static_cast<std::size_t>(l.var()) >= seen.size())
        seen.resize(static_cast<std::size_t>(l.var()) + 1, 0);
      if (!seen[l.var()]) {
        seen[l.var()] = 1;
        ++count;
      }
    }
  return count;
}

RunOutcome runSolver(const Formula &original, const RunConfig &config) {
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();

  RunOutcome out;
  out.simplified = simplifyRoot(original);
  out.clauseCount = out.simplified.clauses.size();
  out.variableCount = countOccurringVars(out.simplified);
  out.modeConfig = makeModeConfig(config.mode, out.clauseCount, out.variableCount,
                                  config.thetaOverride);
  if (config.log) {
    *config.log << "c simplified: " << out.clauseCount << " clauses, "
                << out.variableCount << " variables, " << out.simplified.units.size()
                << " root units\n";
    *config.log << "c mode " << toString(out.modeConfig.mode) << " theta "
                << out.modeConfig.theta;
    if (out.modeConfig.mode != BranchMode::None && out.modeConfig.theta == 0)
      *config.log << " (policy disabled)";
    *config.log << '\n';
  }

  SolverOptions options;
  options.seed = config.seed;
  options.proof = config.proof;
  options.recordDecisions = config.trace;
  Solver solver(out.simplified, options);

  std::shared_ptr<BcdPolicy> policy;
  if (out.modeConfig.active() && !out.simplified.trivialUnsat) {
    auto t0 = Clock::now();
    out.decomposition = decompose(out.simplified, config.decomposeBudget);
    if (config.log)
      *config.log << "c decomposition quality "
                  << formatDecimal(out.decomposition->quality()) << " (L "
                  << out.decomposition->large.size() << ", S "
                  << out.decomposition->small.size() << ") in "
                  << formatDecimal(std::chrono::duration<double>(Clock::now() - t0).count())
                  << " s\n";
    policy = attachPolicy(solver, *out.decomposition, out.simplified, out.modeConfig);
    policy->setTracing(config.trace);
  }

  SolveLimits limits;
  if (config.timeout) {
    std::chrono::duration<double> left = *config.timeout - (Clock::now() - start);
    limits.maxTime = std::max(left, std::chrono::duration<double>(0.001));
  }
  out.result = solver.solve(limits);
  out.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  out.decisions = solver.decisionTrace();
  if (policy)
    out.policyEvents = policy->trace();

  if (out.result.verdict == Verdict::Sat && !checkModel(original, out.result.model))
    throw std::logic_error("solver returned a model that falsifies the input");
  return out;
}

//===----------------------------------------------------------------------===//
// Batches
//===----------------------------------------------------------------------===//

std::vector<std::filesystem::path> listInstances(const std::filesystem::path &dir) {
  std::vector<std::filesystem::path> out;
  for (const auto &entry : std::filesystem::directory_iterator(dir)) {
    if (!entry.is_regular_file())
      continue;
    auto ext = entry.path().extension().string();
    if (ext == ".cnf" || ext == ".dimacs")
      out.push_back(entry.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<RunRecord> benchRun(const std::vector<std::filesystem::path> &instances,
                                const BenchOptions &options) {
  struct Job {
    std::size_t instance;
    BranchMode mode;
  };
  std::vector<Job> jobs;
  for (std::size_t i = 0; i < instances.size(); ++i)
    for (BranchMode m : options.modes)
      jobs.push_back({i, m});

  std::vector<RunRecord> records(jobs.size());
  std::vector<std::string> failures(jobs.size());
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t j = next++; j < jobs.size(); j = next++) {
      const Job &job = jobs[j];
      RunRecord &r = records[j];
      r.instance = instances[job.instance].filename().string();
      r.mode = job.mode;
      auto start = std::chrono::steady_clock::now();
      try {
        Formula f = readDimacsFile(instances[job.instance]);
        RunConfig cfg;
        cfg.mode = job.mode;
        cfg.timeout = options.timeout;
        cfg.decomposeBudget = options.decomposeBudget;
        RunOutcome outcome = runSolver(f, cfg);
        r.verdict = outcome.result.verdict;
        r.seconds = outcome.seconds;
        r.conflicts = outcome.result.stats.conflicts;
        r.decisions = outcome.result.stats.decisions;
        r.theta = outcome.modeConfig.theta;
        if (outcome.decomposition)
          r.quality = outcome.decomposition->quality();
      } catch (const std::exception &e) {
        r.verdict = Verdict::Unknown;
        r.seconds = std::chrono::duration<double>(
                        std::chrono::steady_clock::now() - start).count();
        failures[j] = r.instance + " [" + std::string(toString(job.mode)) +
                      "]: " + e.what();
      }
    }
  };

  const unsigned count = std::max(1u, std::min<unsigned>(
                                          options.workers,
                                          static_cast<unsigned>(jobs.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < count; ++t)
    pool.emplace_back(worker);
  worker();
  for (auto &t : pool)
    t.join();

  if (options.log)
    for (const auto &msg : failures)
      if (!msg.empty())
        options.log(msg);
  return records;
}

std::vector<RunRecord> benchRun(const std::filesystem::path &dir,
                                const BenchOptions &options) {
  return benchRun(listInstances(dir), options);
}

//===----------------------------------------------------------------------===//
// CSV
//===----------------------------------------------------------------------===//

std::string formatDecimal(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", value);
  return buf;
}

std::string formatExact(double value) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::fixed);
  if (ec != std::errc())
    return formatDecimal(value);
  return std::string(buf, end);
}

namespace {

std::string csvField(const std::string &s) {
  if (s.find_first_of(",\"\n") == std::string::npos)
    return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"')
      out += '"';
    out += c;
  }
  return out + '"';
}

std::vector<std::string> splitCsv(const std::string &line, std::size_t lineNo) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else if (c != '\r') {
      fields.back() += c;
    }
  }
  if (quoted)
    throw ParseError(lineNo, "unterminated quoted field");
  return fields;
}

template <typename T> T parseNumber(const std::string &s, std::size_t lineNo) {
  T value{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw ParseError(lineNo, "bad number '" + s + "'");
  return value;
}

double parseDouble(const std::string &s, std::size_t lineNo) {
  std::istringstream in(s);
  double value = 0;
  in >> value;
  if (!in || in.peek() != std::char_traits<char>::eof())
    throw ParseError(lineNo, "bad number '" + s + "'");
  return value;
}

Verdict parseVerdict(const std::string &s, std::size_t lineNo) {
  if (s == "SAT")
    return Verdict::Sat;
  if (s == "UNSAT")
    return Verdict::Unsat;
  if (s == "UNKNOWN")
    return Verdict::Unknown;
  throw ParseError(lineNo, "bad verdict '" + s + "'");
}

BranchMode parseMode(const std::string &s, std::size_t lineNo) {
  auto m = parseBranchMode(s);
  if (!m)
    throw ParseError(lineNo, "bad mode '" + s + "'");
  return *m;
}

} // namespace

void writeCsv(std::ostream &out, const std::vector<RunRecord> &records) {
  out << kCsvHeader << '\n';
  for (const RunRecord &r : records) {
    out << csvField(r.instance) << ',' << toString(r.mode) << ','
        << toString(r.verdict) << ',' << formatExact(r.seconds) << ','
        << r.conflicts << ',' << r.decisions << ','
        << (r.quality ? formatExact(*r.quality) : std::string()) << ','
        << r.theta << '\n';
  }
}

std::vector<RunRecord> readCsv(std::istream &in) {
  std::vector<RunRecord> out;
  std::string line;
  std::size_t lineNo = 0;
  if (!std::getline(in, line))
    throw ParseError(1, "missing CSV header");
  ++lineNo;
  if (!line.empty() && line.back() == '\r')
    line.pop_back();
  if (line != kCsvHeader)
    throw ParseError(1, "unexpected CSV header '" + line + "'");
  while (std::getline(in, line)) {
    ++lineNo;
    if (line.empty())
      continue;
    auto fields = splitCsv(line, lineNo);
    if (fields.size() != 8)
      throw ParseError(lineNo, "expected 8 fields, got " + std::to_string(fields.size()));
    RunRecord r;
    r.instance = fields[0];
    r.mode = parseMode(fields[1], lineNo);
    r.verdict = parseVerdict(fields[2], lineNo);
    r.seconds = parseDouble(fields[3], lineNo);
    r.conflicts = parseNumber<std::uint64_t>(fields[4], lineNo);
    r.decisions = parseNumber<std::uint64_t>(fields[5], lineNo);
    if (!fields[6].empty())
      r.quality = parseDouble(fields[6], lineNo);
    r.theta = parseNumber<std::uint64_t>(fields[7], lineNo);
    out.push_back(std::move(r));
  }
  return out;
}

CactusSeries cactusSeries(const std::vector<RunRecord> &records) {
  CactusSeries series;
  for (const RunRecord &r : records)
    if (r.verdict != Verdict::Unknown)
      series[r.mode].push_back(r.seconds);
  for (auto &[mode, times] : series)
    std::sort(times.begin(), times.end());
  return series;
}

void writeCactusCsv(std::ostream &out, const CactusSeries &series) {
  out << "mode,solved,time_s\n";
  for (const auto &[mode, times] : series)
    for (std::size_t i = 0; i < times.size(); ++i)
      out << toString(mode) << ',' << (i + 1) << ',' << formatExact(times[i]) << '\n';
}

CactusSeries readCactusCsv(std::istream &in) {
  CactusSeries series;
  std::string line;
  std::size_t lineNo = 0;
  if (!std::getline(in, line) || line.rfind("mode,solved,time_s", 0) != 0)
    throw ParseError(1, "missing cactus header");
  ++lineNo;
  while (std::getline(in, line)) {
    ++lineNo;
    if (line.empty())
      continue;
    auto fields = splitCsv(line, lineNo);
    if (fields.size() != 3)
      throw ParseError(lineNo, "expected 3 fields");
    series[parseMode(fields[0], lineNo)].push_back(parseDouble(fields[2], lineNo));
  }
  return series;
}

std::vector<std::string> findContradictions(const std::vector<RunRecord> &records) {
  std::map<std::string, std::set<Verdict>> seen;
  for (const RunRecord &r : records)
    if (r.verdict != Verdict::Unknown)
      seen[r.instance].insert(r.verdict);
  std::vector<std::string> out;
  for (const auto &[name, verdicts] : seen)
    if (verdicts.size() > 1)
      out.push_back(name);
  return out;
}

} // namespace bcdsat

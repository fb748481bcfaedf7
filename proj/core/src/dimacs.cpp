#include "bcdsat/dimacs.hpp"

#include "bcdsat/error.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace bcdsat {

namespace {

bool isSpace(char c) {
  return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f';
}

std::vector<std::string_view> tokenize(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && isSpace(line[i]))
      ++i;
    std::size_t start = i;
    while (i < line.size() && !isSpace(line[i]))
      ++i;
    if (i > start)
      tokens.push_back(line.substr(start, i - start));
  }
  return tokens;
}

bool parseInt(std::string_view token, long long &out) {
  if (!token.empty() && token.front() == '+')
    token.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), out);
  return ec == std::errc() && ptr == token.data() + token.size();
}

constexpr long long kMaxVar = (1LL << 30) - 1;

} // namespace

Formula parseDimacs(std::istream &in, std::vector<std::string> *warnings) {
  auto warn = [&](std::string msg) {
    if (warnings)
      warnings->push_back(std::move(msg));
  };

  Formula f;
  bool haveHeader = false;
  long long declaredClauses = 0;
  bool grewVars = false;
  Clause pending;
  std::size_t lineNo = 0;
  std::string line;

  while (std::getline(in, line)) {
    ++lineNo;
    std::string_view view(line);
    std::size_t first = 0;
    while (first < view.size() && isSpace(view[first]))
      ++first;
    if (first == view.size())
      continue;
    char lead = view[first];
    if (lead == 'c')
      continue;
    if (lead == '%')
      break; // SATLIB end-of-data marker
    if (lead == 'p') {
      if (haveHeader)
        throw ParseError(lineNo, "duplicate problem header");
      auto tokens = tokenize(view.substr(first));
      long long vars = 0;
      if (tokens.size() != 4 || tokens[0] != "p" || tokens[1] != "cnf" ||
          !parseInt(tokens[2], vars) || !parseInt(tokens[3], declaredClauses) ||
          vars < 0 || vars > kMaxVar || declaredClauses < 0)
        throw ParseError(lineNo, "malformed header, expected 'p cnf <vars> <clauses>'");
      f.numVars = static_cast<int>(vars);
      haveHeader = true;
      continue;
    }
    if (!haveHeader)
      throw ParseError(lineNo, "clause data before 'p cnf' header");

    for (std::string_view token : tokenize(view.substr(first))) {
      long long value = 0;
      if (!parseInt(token, value))
        throw ParseError(lineNo, "literal '" + std::string(token) +
                                     "' is not an integer");
      if (value < -kMaxVar || value > kMaxVar)
        throw ParseError(lineNo, "literal '" + std::string(token) +
                                     "' out of range");
      if (value == 0) {
        pending.removeDuplicates();
        if (pending.empty())
          f.trivialUnsat = true;
        f.clauses.push_back(std::move(pending));
        pending = Clause();
        continue;
      }
      Lit l = Lit::fromDimacs(static_cast<int>(value));
      if (l.var() > f.numVars) {
        f.numVars = l.var();
        grewVars = true;
      }
      pending.lits.push_back(l);
    }
  }

  if (!haveHeader)
    throw ParseError(lineNo == 0 ? 1 : lineNo, "missing 'p cnf' header");
  if (!pending.empty())
    throw ParseError(lineNo, "last clause is missing its terminating 0");
  if (grewVars)
    warn("literals exceed the declared variable count; using " +
         std::to_string(f.numVars) + " variables");
  if (static_cast<long long>(f.clauses.size()) != declaredClauses)
    warn("header declares " + std::to_string(declaredClauses) +
         " clauses but " + std::to_string(f.clauses.size()) + " were read");
  return f;
}

Formula parseDimacs(std::string_view text, std::vector<std::string> *warnings) {
  std::istringstream in{std::string(text)};
  return parseDimacs(in, warnings);
}

Formula readDimacsFile(const std::filesystem::path &path,
                       std::vector<std::string> *warnings) {
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("cannot open '" + path.string() + "'");
  return parseDimacs(in, warnings);
}

void writeDimacs(std::ostream &out, const Formula &f) {
  std::size_t count = f.clauses.size() + f.units.size() + (f.trivialUnsat ? 1 : 0);
  out << "p cnf " << f.numVars << ' ' << count << '\n';
  if (f.trivialUnsat)
    out << "0\n";
  for (Lit u : f.units)
    out << u.toDimacs() << " 0\n";
  for (const Clause &c : f.clauses) {
    for (Lit l : c.lits)
      out << l.toDimacs() << ' ';
    out << "0\n";
  }
}

std::string toDimacsString(const Formula &f) {
  std::ostringstream out;
  writeDimacs(out, f);
  return out.str();
}

void writeDimacsFile(const std::filesystem::path &path, const Formula &f) {
  std::ofstream out(path);
  if (!out)
    throw IoError("cannot open '" + path.string() + "' for writing");
  writeDimacs(out, f);
  out.flush();
  if (!out)
    throw IoError("write to '" + path.string() + "' failed");
}

} // namespace bcdsat

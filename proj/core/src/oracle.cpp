#include "bcdsat/oracle.hpp"

#include "bcdsat/error.hpp"

#include <charconv>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace bcdsat {

bool checkModel(const Formula &f, std::span<const Lit> model) {
  std::vector<LBool> value(static_cast<std::size_t>(f.numVars) + 1, LBool::Undef);
  for (Lit l : model) {
    if (!l.valid() || l.var() > f.numVars)
      throw std::invalid_argument("model mentions unknown variable " +
                                  std::to_string(l.var()));
    LBool want = l.isNegative() ? LBool::False : LBool::True;
    if (value[l.var()] != LBool::Undef && value[l.var()] != want)
      throw std::invalid_argument("model assigns variable " +
                                  std::to_string(l.var()) + " both ways");
    value[l.var()] = want;
  }
  auto isTrue = [&](Lit l) {
    if (l.var() > f.numVars)
      return false;
    return value[l.var()] == (l.isNegative() ? LBool::False : LBool::True);
  };
  if (f.trivialUnsat)
    return false;
  for (Lit u : f.units)
    if (!isTrue(u))
      return false;
  for (const Clause &c : f.clauses) {
    bool sat = false;
    for (Lit l : c.lits)
      if (isTrue(l)) {
        sat = true;
        break;
      }
    if (!sat)
      return false;
  }
  return true;
}

bool checkModel(const Formula &f, const std::vector<bool> &model) {
  if (model.size() > static_cast<std::size_t>(f.numVars) + 1)
    throw std::invalid_argument("model has more variables than the formula");
  std::vector<Lit> lits;
  for (std::size_t v = 1; v < model.size(); ++v)
    lits.push_back(model[v] ? Lit::positive(static_cast<Var>(v))
                            : Lit::negative(static_cast<Var>(v)));
  return checkModel(f, lits);
}

std::vector<Lit> parseModel(std::istream &in) {
  std::vector<Lit> out;
  std::string line;
  std::size_t lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    std::istringstream tokens(line);
    std::string tok;
    if (!(tokens >> tok))
      continue;
    if (tok == "c" || tok == "s" || tok[0] == 'c' || tok[0] == 's')
      continue;
    if (tok != "v") {
      tokens.clear();
      tokens.seekg(0);
    }
    while (tokens >> tok) {
      if (tok == "v")
        continue;
      int value = 0;
      auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
      if (ec != std::errc() || ptr != tok.data() + tok.size())
        throw ParseError(lineNo, "bad model token '" + tok + "'");
      if (value == 0)
        return out;
      out.push_back(Lit::fromDimacs(value));
    }
  }
  return out;
}

BruteForceResult bruteForce(const Formula &f) {
  if (f.numVars > kBruteForceMaxVars)
    throw ContractViolation("brute force refuses formulas with more than " +
                            std::to_string(kBruteForceMaxVars) + " variables");
  BruteForceResult result;
  if (f.trivialUnsat) {
    result.verdict = Verdict::Unsat;
    return result;
  }

  // Bit v-1 of the mask is variable v.
  struct Masks {
    std::uint32_t pos = 0, neg = 0;
  };
  std::vector<Masks> clauses;
  for (Lit u : f.units)
    clauses.push_back(u.isNegative() ? Masks{0, 1u << (u.var() - 1)}
                                     : Masks{1u << (u.var() - 1), 0});
  for (const Clause &c : f.clauses) {
    Masks m;
    for (Lit l : c.lits)
      (l.isNegative() ? m.neg : m.pos) |= 1u << (l.var() - 1);
    if (m.pos & m.neg)
      continue; // tautology
    clauses.push_back(m);
  }

  const std::uint64_t total = std::uint64_t{1} << f.numVars;
  for (std::uint64_t a = 0; a < total; ++a) {
    const auto bits = static_cast<std::uint32_t>(a);
    bool ok = true;
    for (const Masks &m : clauses)
      if (!((bits & m.pos) | (~bits & m.neg))) {
        ok = false;
        break;
      }
    if (ok) {
      result.verdict = Verdict::Sat;
      result.model.assign(static_cast<std::size_t>(f.numVars) + 1, false);
      for (int v = 1; v <= f.numVars; ++v)
        result.model[v] = (bits >> (v - 1)) & 1u;
      return result;
    }
  }
  result.verdict = Verdict::Unsat;
  return result;
}

} // namespace bcdsat

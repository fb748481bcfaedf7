#include "bcdsat/simplify.hpp"

#include <unordered_set>

namespace bcdsat {

std::size_t LitSequenceHash::operator()(const std::vector<Lit> &lits) const noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (Lit l : lits) {
    h ^= l.index();
    h *= 0x100000001b3ULL;
  }
  return static_cast<std::size_t>(h ^ (h >> 29));
}

Formula simplifyRoot(const Formula &f) {
  Formula out;
  out.numVars = f.numVars;
  if (f.trivialUnsat) {
    out.trivialUnsat = true;
    return out;
  }

  const std::size_t numLits = 2 * static_cast<std::size_t>(f.numVars) + 2;
  std::vector<LBool> value(static_cast<std::size_t>(f.numVars) + 1, LBool::Undef);
  auto litValue = [&](Lit l) {
    LBool v = value[l.var()];
    return l.isNegative() ? !v : v;
  };

  std::vector<std::vector<std::uint32_t>> occurs(numLits);
  std::vector<std::uint32_t> live; // non-tautological clause indices
  std::vector<std::uint32_t> nonFalse(f.clauses.size(), 0);
  std::vector<char> satisfied(f.clauses.size(), 0);
  std::vector<std::vector<Lit>> normalized(f.clauses.size());
  std::vector<Lit> trail;
  bool conflict = false;

  auto assign = [&](Lit l) {
    LBool cur = litValue(l);
    if (cur == LBool::True)
      return;
    if (cur == LBool::False) {
      conflict = true;
      return;
    }
    value[l.var()] = l.isNegative() ? LBool::False : LBool::True;
    trail.push_back(l);
  };

  for (Lit u : f.units)
    assign(u);

  for (std::uint32_t i = 0; i < f.clauses.size(); ++i) {
    Clause c = f.clauses[i];
    c.removeDuplicates();
    if (c.isTautology())
      continue;
    if (c.empty()) {
      conflict = true;
      break;
    }
    normalized[i] = c.lits;
    live.push_back(i);
    nonFalse[i] = static_cast<std::uint32_t>(c.size());
    for (Lit l : c.lits)
      occurs[l.index()].push_back(i);
    if (c.size() == 1)
      assign(c[0]);
  }

  auto clauseLits = [&](std::uint32_t i) -> const std::vector<Lit> & {
    return normalized[i];
  };

  for (std::size_t head = 0; head < trail.size() && !conflict; ++head) {
    Lit l = trail[head];
    for (std::uint32_t ci : occurs[l.index()])
      satisfied[ci] = 1;
    for (std::uint32_t ci : occurs[(~l).index()]) {
      if (satisfied[ci])
        continue;
      if (--nonFalse[ci] == 0) {
        conflict = true;
        break;
      }
      if (nonFalse[ci] != 1)
        continue;
      Lit unit;
      bool hasTrue = false;
      for (Lit x : clauseLits(ci)) {
        LBool v = litValue(x);
        if (v == LBool::True) {
          hasTrue = true;
          break;
        }
        if (v == LBool::Undef)
          unit = x;
      }
      if (!hasTrue && unit.valid())
        assign(unit);
      if (conflict)
        break;
    }
  }

  if (conflict) {
    out.trivialUnsat = true;
    return out;
  }

  out.units = trail;
  std::unordered_set<std::vector<Lit>, LitSequenceHash> seen;
  for (std::uint32_t ci : live) {
    if (satisfied[ci])
      continue;
    Clause reduced;
    for (Lit x : clauseLits(ci))
      if (litValue(x) == LBool::Undef)
        reduced.lits.push_back(x);
    if (!seen.insert(reduced.sortedKey()).second)
      continue;
    out.clauses.push_back(std::move(reduced));
  }
  return out;
}

} // namespace bcdsat

#include "bcdsat/cnf.hpp"

#include <algorithm>
#include <unordered_set>

namespace bcdsat {

Clause::Clause(std::initializer_list<int> dimacs) {
  lits.reserve(dimacs.size());
  for (int v : dimacs)
    lits.push_back(Lit::fromDimacs(v));
}

bool Clause::contains(Lit l) const {
  return std::find(lits.begin(), lits.end(), l) != lits.end();
}

bool Clause::isTautology() const {
  if (lits.size() < 8) {
    for (std::size_t i = 0; i < lits.size(); ++i)
      for (std::size_t j = i + 1; j < lits.size(); ++j)
        if (lits[i] == ~lits[j])
          return true;
    return false;
  }
  std::vector<Lit> key = sortedKey();
  // Complementary literals are adjacent after sorting by index.
  for (std::size_t i = 1; i < key.size(); ++i)
    if (key[i] == ~key[i - 1])
      return true;
  return false;
}

void Clause::removeDuplicates() {
  if (lits.size() <= 16) {
    std::size_t kept = 0;
    for (std::size_t i = 0; i < lits.size(); ++i) {
      if (std::find(lits.begin(), lits.begin() + kept, lits[i]) ==
          lits.begin() + kept)
        lits[kept++] = lits[i];
    }
    lits.resize(kept);
    return;
  }
  std::unordered_set<Lit> seen;
  seen.reserve(lits.size());
  std::erase_if(lits, [&](Lit l) { return !seen.insert(l).second; });
}

std::vector<Lit> Clause::sortedKey() const {
  std::vector<Lit> key = lits;
  std::sort(key.begin(), key.end());
  return key;
}

std::vector<int> Clause::toDimacs() const {
  std::vector<int> out;
  out.reserve(lits.size());
  for (Lit l : lits)
    out.push_back(l.toDimacs());
  return out;
}

void Formula::addClause(Clause c) {
  for (Lit l : c.lits)
    numVars = std::max(numVars, l.var());
  clauses.push_back(std::move(c));
}

std::vector<std::vector<Lit>> canonicalClauseMultiset(const Formula &f) {
  std::vector<std::vector<Lit>> out;
  out.reserve(f.clauses.size() + f.units.size() + 1);
  if (f.trivialUnsat)
    out.emplace_back();
  for (Lit u : f.units)
    out.push_back({u});
  for (const Clause &c : f.clauses) {
    Clause copy = c;
    copy.removeDuplicates();
    out.push_back(copy.sortedKey());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string toString(Lit l) { return std::to_string(l.toDimacs()); }

std::string toString(const Clause &c) {
  std::string s = "[";
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i)
      s += ',';
    s += toString(c[i]);
  }
  return s + ']';
}

} // namespace bcdsat

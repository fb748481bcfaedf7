#include "bcdsat/bce.hpp"

#include "bcdsat/error.hpp"

#include <algorithm>
#include <deque>

namespace bcdsat {

namespace {

int maxVarOf(std::span<const Clause> clauses, int numVars) {
  int n = numVars;
  for (const Clause &c : clauses)
    for (Lit l : c.lits)
      n = std::max(n, l.var());
  return n;
}

} // namespace

//===----------------------------------------------------------------------===//
// OccurrenceIndex
//===----------------------------------------------------------------------===//

OccurrenceIndex::OccurrenceIndex(std::span<const Clause> clauses, int numVars)
    : clauses_(clauses) {
  const std::size_t numLits = 2 * static_cast<std::size_t>(maxVarOf(clauses, numVars)) + 2;
  lists_.resize(numLits);
  dead_.assign(numLits, 0);
  active_.assign(clauses.size(), 1);
  activeCount_ = clauses.size();
  for (ClauseIndex i = 0; i < clauses.size(); ++i)
    for (Lit l : clauses[i].lits)
      lists_[l.index()].push_back(i);
}

OccurrenceIndex::OccurrenceIndex(std::span<const Clause> clauses, int numVars,
                                 std::span<const ClauseIndex> subset)
    : clauses_(clauses) {
  const std::size_t numLits = 2 * static_cast<std::size_t>(maxVarOf(clauses, numVars)) + 2;
  lists_.resize(numLits);
  dead_.assign(numLits, 0);
  active_.assign(clauses.size(), 0);
  for (ClauseIndex i : subset) {
    if (active_[i])
      continue;
    active_[i] = 1;
    ++activeCount_;
    for (Lit l : clauses[i].lits)
      lists_[l.index()].push_back(i);
  }
}

void OccurrenceIndex::remove(ClauseIndex c) {
  if (!active_[c])
    return;
  active_[c] = 0;
  --activeCount_;
  for (Lit l : clauses_[c].lits) {
    auto &list = lists_[l.index()];
    if (++dead_[l.index()] * 2 > list.size()) {
      std::erase_if(list, [&](ClauseIndex x) { return !active_[x]; });
      dead_[l.index()] = 0;
    }
  }
}

std::vector<ClauseIndex> OccurrenceIndex::clausesWith(Lit l) const {
  std::vector<ClauseIndex> out;
  if (l.index() >= lists_.size())
    return out;
  forEach(l, [&](ClauseIndex c) { out.push_back(c); });
  return out;
}

//===----------------------------------------------------------------------===//
// Resolution and blocking
//===----------------------------------------------------------------------===//

Clause resolvent(const Clause &c1, const Clause &c2, Lit l) {
  if (!c1.contains(l))
    throw ContractViolation("resolvent: pivot " + toString(l) +
                            " not in first clause " + toString(c1));
  if (!c2.contains(~l))
    throw ContractViolation("resolvent: negated pivot not in second clause " +
                            toString(c2));
  Clause out;
  out.lits.reserve(c1.size() + c2.size());
  for (Lit x : c1.lits)
    if (x != l)
      out.lits.push_back(x);
  for (Lit x : c2.lits)
    if (x != ~l)
      out.lits.push_back(x);
  out.removeDuplicates();
  return out;
}

bool isBlocked(const Clause &c, Lit l, std::span<const Clause> active) {
  if (!c.contains(l))
    throw ContractViolation("isBlocked: literal " + toString(l) +
                            " not in clause " + toString(c));
  if (c.isTautology())
    return true;
  for (const Clause &other : active) {
    if (!other.contains(~l))
      continue;
    if (!resolvent(c, other, l).isTautology())
      return false;
  }
  return true;
}

BlockingChecker::BlockingChecker(std::span<const Clause> clauses, int numVars)
    : clauses_(clauses) {
  mark_.assign(2 * static_cast<std::size_t>(maxVarOf(clauses, numVars)) + 2, 0);
  tautology_.resize(clauses.size());
  for (std::size_t i = 0; i < clauses.size(); ++i)
    tautology_[i] = clauses[i].isTautology() ? 1 : 0;
}

bool BlockingChecker::blocks(ClauseIndex ci, Lit l, const OccurrenceIndex &occ) {
  const Clause &c = clauses_[ci];
  if (tautology_[ci])
    return true;
  if (++stamp_ == 0) {
    std::fill(mark_.begin(), mark_.end(), 0);
    stamp_ = 1;
  }
  for (Lit x : c.lits)
    if (x != l)
      mark_[x.index()] = stamp_;

  bool blocked = true;
  occ.forEach(~l, [&](ClauseIndex di) {
    if (!blocked)
      return;
    const Clause &d = clauses_[di];
    if (tautology_[di]) {
      if (!resolvent(c, d, l).isTautology())
        blocked = false;
      return;
    }
    for (Lit z : d.lits)
      if (z != ~l && mark_[(~z).index()] == stamp_)
        return;
    blocked = false;
  });
  return blocked;
}

Lit BlockingChecker::findBlockingLiteral(ClauseIndex c, const OccurrenceIndex &occ) {
  for (Lit l : clauses_[c].lits)
    if (blocks(c, l, occ))
      return l;
  return Lit();
}

//===----------------------------------------------------------------------===//
// BCE fixpoint
//===----------------------------------------------------------------------===//

BceResult bceFixpoint(std::span<const Clause> clauses, int numVars) {
  OccurrenceIndex occ(clauses, numVars);
  BlockingChecker checker(clauses, numVars);
  BceResult result;

  std::deque<ClauseIndex> queue;
  std::vector<char> queued(clauses.size(), 1);
  for (ClauseIndex i = 0; i < clauses.size(); ++i)
    queue.push_back(i);

  while (!queue.empty()) {
    ClauseIndex c = queue.front();
    queue.pop_front();
    queued[c] = 0;
    if (!occ.isActive(c) || clauses[c].empty())
      continue;
    Lit blocking = checker.findBlockingLiteral(c, occ);
    if (!blocking.valid())
      continue;
    result.eliminated.push_back({c, blocking});
    occ.remove(c);
    // Clauses containing ¬x lost a resolution partner.
    for (Lit x : clauses[c].lits) {
      occ.forEach(~x, [&](ClauseIndex d) {
        if (!queued[d]) {
          queued[d] = 1;
          queue.push_back(d);
        }
      });
    }
  }

  for (ClauseIndex i = 0; i < clauses.size(); ++i)
    if (occ.isActive(i))
      result.residue.push_back(i);
  return result;
}

} // namespace bcdsat

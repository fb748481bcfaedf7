#include "bcdsat/proof_check.hpp"

#include "bcdsat/simplify.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <string>
#include <string_view>
#include <unordered_map>

namespace bcdsat {

namespace {

/// Clause store with its own watched-literal propagation; shares nothing with
/// the solver so it can judge the solver's proofs.
class RupChecker {
public:
  explicit RupChecker(int numVars) { grow(numVars); }

  bool inconsistent() const { return inconsistent_; }

  void add(std::vector<Lit> lits) {
    for (Lit l : lits)
      grow(l.var());
    Clause tmp(std::move(lits));
    tmp.removeDuplicates();
    const auto id = static_cast<std::uint32_t>(clauses_.size());
    byKey_[tmp.sortedKey()].push_back(id);
    clauses_.push_back({std::move(tmp.lits), false});
    if (inconsistent_)
      return;
    auto &c = clauses_.back().lits;
    if (Clause(c).isTautology())
      return;

    // Move non-false literals to the front.
    std::stable_partition(c.begin(), c.end(),
                          [&](Lit l) { return value(l) != LBool::False; });
    std::size_t nonFalse = 0;
    bool satisfied = false;
    for (Lit l : c) {
      if (value(l) == LBool::False)
        break;
      ++nonFalse;
      satisfied = satisfied || value(l) == LBool::True;
    }
    if (nonFalse == 0) {
      inconsistent_ = true;
      return;
    }
    if (c.size() >= 2) {
      watches_[c[0].index()].push_back(id);
      watches_[c[1].index()].push_back(id);
    }
    if (nonFalse == 1 && !satisfied) {
      assign(c[0], id);
      if (!propagate())
        inconsistent_ = true;
    }
  }

  /// Returns false if no matching clause exists or it is pinned as a reason.
  bool remove(std::vector<Lit> lits) {
    Clause tmp(std::move(lits));
    tmp.removeDuplicates();
    auto it = byKey_.find(tmp.sortedKey());
    if (it == byKey_.end() || it->second.empty())
      return false;
    const std::uint32_t id = it->second.back();
    const auto &c = clauses_[id].lits;
    if (c.size() <= 1)
      return false;
    for (Lit l : c)
      if (value(l) == LBool::True && reason_[l.var()] == id)
        return false;
    it->second.pop_back();
    clauses_[id].deleted = true;
    return true;
  }

  bool isRup(const std::vector<Lit> &lemma) {
    if (inconsistent_)
      return true;
    for (Lit l : lemma)
      grow(l.var());
    const std::size_t mark = trail_.size();
    bool conflict = false;
    for (Lit l : lemma) {
      if (value(l) == LBool::True) {
        conflict = true;
        break;
      }
      if (value(l) == LBool::Undef)
        assign(~l, kNone);
    }
    if (!conflict)
      conflict = !propagate();
    rollback(mark);
    return conflict;
  }

private:
  static constexpr std::uint32_t kNone = ~std::uint32_t{0};

  struct Stored {
    std::vector<Lit> lits;
    bool deleted;
  };

  void grow(Var v) {
    if (static_cast<std::size_t>(v) < values_.size())
      return;
    values_.resize(static_cast<std::size_t>(v) + 1, LBool::Undef);
    reason_.resize(static_cast<std::size_t>(v) + 1, kNone);
    watches_.resize(2 * (static_cast<std::size_t>(v) + 1));
  }

  LBool value(Lit l) const {
    LBool v = values_[l.var()];
    return l.isNegative() ? !v : v;
  }

  void assign(Lit l, std::uint32_t reason) {
    values_[l.var()] = l.isNegative() ? LBool::False : LBool::True;
    reason_[l.var()] = reason;
    trail_.push_back(l);
  }

  void rollback(std::size_t size) {
    while (trail_.size() > size) {
      Var v = trail_.back().var();
      values_[v] = LBool::Undef;
      reason_[v] = kNone;
      trail_.pop_back();
    }
    head_ = std::min(head_, size);
  }

  /// Returns false on conflict. Leaves head_ at the trail end either way.
  bool propagate() {
    while (head_ < trail_.size()) {
      const Lit falseLit = ~trail_[head_++];
      auto &ws = watches_[falseLit.index()];
      std::size_t i = 0, j = 0;
      bool conflict = false;
      while (i < ws.size()) {
        const std::uint32_t id = ws[i++];
        Stored &s = clauses_[id];
        if (s.deleted)
          continue;
        auto &c = s.lits;
        if (c[0] == falseLit)
          std::swap(c[0], c[1]);
        if (value(c[0]) == LBool::True) {
          ws[j++] = id;
          continue;
        }
        bool moved = false;
        for (std::size_t k = 2; k < c.size(); ++k)
          if (value(c[k]) != LBool::False) {
            std::swap(c[1], c[k]);
            watches_[c[1].index()].push_back(id);
            moved = true;
            break;
          }
        if (moved)
          continue;
        ws[j++] = id;
        if (value(c[0]) == LBool::False) {
          conflict = true;
          while (i < ws.size())
            ws[j++] = ws[i++];
          break;
        }
        assign(c[0], id);
      }
      ws.resize(j);
      if (conflict) {
        head_ = trail_.size();
        return false;
      }
    }
    return true;
  }

  std::vector<Stored> clauses_;
  std::unordered_map<std::vector<Lit>, std::vector<std::uint32_t>, LitSequenceHash> byKey_;
  std::vector<std::vector<std::uint32_t>> watches_;
  std::vector<LBool> values_;
  std::vector<std::uint32_t> reason_;
  std::vector<Lit> trail_;
  std::size_t head_ = 0;
  bool inconsistent_ = false;
};

} // namespace

ProofCheckResult checkProof(const Formula &f, std::istream &proof) {
  ProofCheckResult result;
  RupChecker checker(f.numVars);
  if (f.trivialUnsat)
    checker.add({});
  for (Lit u : f.units)
    checker.add({u});
  for (const Clause &c : f.clauses)
    checker.add(c.lits);

  std::vector<Lit> current;
  bool deletion = false;
  std::size_t clauseLine = 0;
  std::size_t lineNo = 0;
  std::string line;

  while (std::getline(proof, line)) {
    ++lineNo;
    std::string_view rest(line);
    std::size_t start = rest.find_first_not_of(" \t\r");
    if (start == std::string_view::npos)
      continue;
    if (rest[start] == 'c' && current.empty() && !deletion)
      continue;

    std::size_t i = start;
    while (i < rest.size()) {
      while (i < rest.size() && (rest[i] == ' ' || rest[i] == '\t' || rest[i] == '\r'))
        ++i;
      if (i >= rest.size())
        break;
      std::size_t j = i;
      while (j < rest.size() && rest[j] != ' ' && rest[j] != '\t' && rest[j] != '\r')
        ++j;
      std::string_view tok = rest.substr(i, j - i);
      i = j;

      if (current.empty() && !deletion)
        clauseLine = lineNo;
      if (tok == "d" && current.empty() && !deletion) {
        deletion = true;
        continue;
      }
      int value = 0;
      auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
      if (ec != std::errc() || ptr != tok.data() + tok.size()) {
        result.failedLine = lineNo;
        result.message = "bad proof token '" + std::string(tok) + "'";
        return result;
      }
      if (value != 0) {
        current.push_back(Lit::fromDimacs(value));
        continue;
      }

      if (deletion) {
        ++result.deletions;
        if (!checker.remove(current))
          ++result.ignoredDeletions;
      } else {
        ++result.lemmas;
        if (!checker.isRup(current)) {
          result.failedLine = clauseLine;
          result.message = "lemma " + toString(Clause(current)) + " is not RUP";
          return result;
        }
        if (current.empty()) {
          result.accepted = true;
          result.message = "empty clause derived";
          return result;
        }
        checker.add(current);
      }
      current.clear();
      deletion = false;
    }
  }
  result.message = "proof ends without deriving the empty clause";
  return result;
}

} // namespace bcdsat

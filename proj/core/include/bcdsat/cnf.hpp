#pragma once

#include <compare>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace bcdsat {

/// Variables are numbered 1..num_vars, as in DIMACS.
using Var = int;

/// A literal: a variable or its negation.
///
/// Stored as `2 * var + sign` so literals index per-literal arrays directly
/// (slots 0 and 1 are never used by a valid literal).
class Lit {
public:
  constexpr Lit() = default;

  static constexpr Lit fromDimacs(int value) {
    Lit l;
    l.code_ = value > 0 ? 2u * static_cast<std::uint32_t>(value)
                        : 2u * static_cast<std::uint32_t>(-value) + 1u;
    return l;
  }
  static constexpr Lit positive(Var v) { return fromDimacs(v); }
  static constexpr Lit negative(Var v) { return fromDimacs(-v); }
  static constexpr Lit fromIndex(std::uint32_t index) {
    Lit l;
    l.code_ = index;
    return l;
  }

  constexpr Var var() const { return static_cast<Var>(code_ >> 1); }
  constexpr bool isNegative() const { return (code_ & 1u) != 0; }
  constexpr std::uint32_t index() const { return code_; }
  constexpr bool valid() const { return code_ >= 2; }

  constexpr int toDimacs() const {
    return isNegative() ? -var() : var();
  }

  constexpr Lit operator~() const { return fromIndex(code_ ^ 1u); }

  constexpr auto operator<=>(const Lit &) const = default;

private:
  std::uint32_t code_ = 0;
};

constexpr Lit negate(Lit l) { return ~l; }

/// Three-valued assignment.
enum class LBool : std::uint8_t { False = 0, True = 1, Undef = 2 };

constexpr LBool operator!(LBool b) {
  switch (b) {
  case LBool::False:
    return LBool::True;
  case LBool::True:
    return LBool::False;
  default:
    return LBool::Undef;
  }
}

struct Clause {
  std::vector<Lit> lits;
  bool learnt = false;
  std::uint32_t lbd = 0;

  Clause() = default;
  Clause(std::initializer_list<int> dimacs);
  explicit Clause(std::vector<Lit> literals) : lits(std::move(literals)) {}

  std::size_t size() const { return lits.size(); }
  bool empty() const { return lits.empty(); }
  auto begin() const { return lits.begin(); }
  auto end() const { return lits.end(); }
  Lit operator[](std::size_t i) const { return lits[i]; }

  bool contains(Lit l) const;
  /// True iff the clause contains some literal together with its negation.
  bool isTautology() const;
  /// Drops repeated literals, keeping the first occurrence of each.
  void removeDuplicates();
  /// Literals sorted by index; identical for clauses equal as sets.
  std::vector<Lit> sortedKey() const;

  std::vector<int> toDimacs() const;

  friend bool operator==(const Clause &a, const Clause &b) {
    return a.lits == b.lits;
  }
};

/// A CNF formula. `units` holds literals fixed at the root by simplification;
/// they are part of the formula's meaning alongside `clauses`.
struct Formula {
  int numVars = 0;
  std::vector<Clause> clauses;
  std::vector<Lit> units;
  /// Set when the empty clause was derived (or read).
  bool trivialUnsat = false;

  Formula() = default;
  Formula(int vars, std::vector<Clause> cs)
      : numVars(vars), clauses(std::move(cs)) {}

  std::size_t numClauses() const { return clauses.size(); }
  /// Adds a clause, growing numVars as needed.
  void addClause(Clause c);
};

/// Clause multiset in canonical form (each clause sorted, list sorted).
/// Units are included as unit clauses; a trivially UNSAT formula contributes
/// an empty clause.
std::vector<std::vector<Lit>> canonicalClauseMultiset(const Formula &f);

std::string toString(Lit l);
std::string toString(const Clause &c);

} // namespace bcdsat

template <> struct std::hash<bcdsat::Lit> {
  std::size_t operator()(bcdsat::Lit l) const noexcept {
    return std::hash<std::uint32_t>{}(l.index());
  }
};

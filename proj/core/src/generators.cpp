#include "bcdsat/generators.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

namespace bcdsat::gen {

Formula randomKSat(int numVars, int numClauses, int k, std::mt19937_64 &rng) {
  if (k > numVars)
    throw std::invalid_argument("randomKSat: k exceeds the variable count");
  Formula f;
  f.numVars = numVars;
  std::uniform_int_distribution<int> pickVar(1, numVars);
  std::bernoulli_distribution negative(0.5);
  for (int i = 0; i < numClauses; ++i) {
    Clause c;
    while (static_cast<int>(c.size()) < k) {
      Var v = pickVar(rng);
      bool dup = std::any_of(c.begin(), c.end(), [&](Lit l) { return l.var() == v; });
      if (!dup)
        c.lits.push_back(negative(rng) ? Lit::negative(v) : Lit::positive(v));
    }
    f.clauses.push_back(std::move(c));
  }
  return f;
}

Formula randomMixed(int numVars, int numClauses, int minLen, int maxLen,
                    std::mt19937_64 &rng) {
  Formula f;
  f.numVars = numVars;
  std::uniform_int_distribution<int> pickLen(minLen, std::min(maxLen, numVars));
  std::uniform_int_distribution<int> pickVar(1, numVars);
  std::bernoulli_distribution negative(0.5);
  for (int i = 0; i < numClauses; ++i) {
    const int len = pickLen(rng);
    Clause c;
    while (static_cast<int>(c.size()) < len) {
      Var v = pickVar(rng);
      bool dup = std::any_of(c.begin(), c.end(), [&](Lit l) { return l.var() == v; });
      if (!dup)
        c.lits.push_back(negative(rng) ? Lit::negative(v) : Lit::positive(v));
    }
    f.clauses.push_back(std::move(c));
  }
  return f;
}

Formula pigeonhole(int holes) {
  const int pigeons = holes + 1;
  auto var = [&](int p, int h) { return p * holes + h + 1; };
  Formula f;
  f.numVars = pigeons * holes;
  for (int p = 0; p < pigeons; ++p) {
    Clause c;
    for (int h = 0; h < holes; ++h)
      c.lits.push_back(Lit::positive(var(p, h)));
    f.clauses.push_back(std::move(c));
  }
  for (int h = 0; h < holes; ++h)
    for (int p = 0; p < pigeons; ++p)
      for (int q = p + 1; q < pigeons; ++q)
        f.clauses.push_back(Clause({-var(p, h), -var(q, h)}));
  return f;
}

Formula graphColoring(int vertices, int edges, int colors, std::mt19937_64 &rng) {
  auto var = [&](int v, int c) { return v * colors + c + 1; };
  Formula f;
  f.numVars = vertices * colors;
  for (int v = 0; v < vertices; ++v) {
    Clause atLeast;
    for (int c = 0; c < colors; ++c)
      atLeast.lits.push_back(Lit::positive(var(v, c)));
    f.clauses.push_back(std::move(atLeast));
    for (int c = 0; c < colors; ++c)
      for (int d = c + 1; d < colors; ++d)
        f.clauses.push_back(Clause({-var(v, c), -var(v, d)}));
  }
  std::uniform_int_distribution<int> pick(0, vertices - 1);
  for (int e = 0; e < edges; ++e) {
    int a = pick(rng), b = pick(rng);
    if (a == b)
      continue;
    for (int c = 0; c < colors; ++c)
      f.clauses.push_back(Clause({-var(a, c), -var(b, c)}));
  }
  return f;
}

namespace {

/// Adds clauses for out <-> (a xor b).
void addXor(Formula &f, int out, int a, int b) {
  f.clauses.push_back(Clause({-out, a, b}));
  f.clauses.push_back(Clause({-out, -a, -b}));
  f.clauses.push_back(Clause({out, -a, b}));
  f.clauses.push_back(Clause({out, a, -b}));
}

void addAnd(Formula &f, int out, int a, int b) {
  f.clauses.push_back(Clause({-out, a}));
  f.clauses.push_back(Clause({-out, b}));
  f.clauses.push_back(Clause({out, -a, -b}));
}

void addOr(Formula &f, int out, int a, int b) {
  f.clauses.push_back(Clause({out, -a}));
  f.clauses.push_back(Clause({out, -b}));
  f.clauses.push_back(Clause({-out, a, b}));
}

class Circuit {
public:
  explicit Circuit(Formula &f) : f_(f) {}

  int fresh() { return ++f_.numVars; }
  int andGate(int a, int b) {
    int o = fresh();
    addAnd(f_, o, a, b);
    return o;
  }
  int xorGate(int a, int b) {
    int o = fresh();
    addXor(f_, o, a, b);
    return o;
  }
  int orGate(int a, int b) {
    int o = fresh();
    addOr(f_, o, a, b);
    return o;
  }
  /// Returns {sum, carry}.
  std::array<int, 2> fullAdder(int a, int b, int c) {
    int t = xorGate(a, b);
    int sum = xorGate(t, c);
    int carry = orGate(andGate(a, b), andGate(t, c));
    return {sum, carry};
  }

  /// Array multiplier; output has 2 * bits bits. `zero` is a constant-false
  /// variable.
  std::vector<int> multiply(const std::vector<int> &a, const std::vector<int> &b,
                            int zero) {
    const std::size_t n = a.size();
    std::vector<int> acc(2 * n, zero);
    for (std::size_t i = 0; i < n; ++i) {
      int carry = zero;
      for (std::size_t j = 0; j < n; ++j) {
        int pp = andGate(a[j], b[i]);
        auto [s, c] = fullAdder(acc[i + j], pp, carry);
        acc[i + j] = s;
        carry = c;
      }
      acc[i + n] = carry;
    }
    return acc;
  }

private:
  Formula &f_;
};

} // namespace

Formula parityChain(int length, bool parity) {
  Formula f;
  f.numVars = length;
  Circuit circuit(f);
  int acc = 1;
  for (int i = 2; i <= length; ++i)
    acc = circuit.xorGate(acc, i);
  f.clauses.push_back(Clause({parity ? acc : -acc}));
  return f;
}

Formula multiplierMiter(int bits) {
  Formula f;
  Circuit circuit(f);
  std::vector<int> a, b;
  for (int i = 0; i < bits; ++i)
    a.push_back(circuit.fresh());
  for (int i = 0; i < bits; ++i)
    b.push_back(circuit.fresh());
  int zero = circuit.fresh();
  f.clauses.push_back(Clause({-zero}));

  auto ab = circuit.multiply(a, b, zero);
  auto ba = circuit.multiply(b, a, zero);
  Clause differs;
  for (std::size_t i = 0; i < ab.size(); ++i)
    differs.lits.push_back(Lit::positive(circuit.xorGate(ab[i], ba[i])));
  f.clauses.push_back(std::move(differs));
  return f;
}

} // namespace bcdsat::gen

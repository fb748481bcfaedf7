#pragma once

#include "bcdsat/cnf.hpp"

#include <cstdint>
#include <random>

namespace bcdsat::gen {

/// Uniform random k-SAT: distinct variables per clause, random signs.
Formula randomKSat(int numVars, int numClauses, int k, std::mt19937_64 &rng);

/// Random clauses with lengths drawn uniformly from [minLen, maxLen].
Formula randomMixed(int numVars, int numClauses, int minLen, int maxLen,
                    std::mt19937_64 &rng);

/// Pigeonhole: `holes + 1` pigeons into `holes` holes (UNSAT).
Formula pigeonhole(int holes);

/// Graph colouring of a random graph with `edges` edges.
Formula graphColoring(int vertices, int edges, int colors, std::mt19937_64 &rng);

/// Tseitin-encoded chain of XORs: x1 ^ x2 ^ ... ^ xn = parity. Each link uses
/// a fresh auxiliary variable.
Formula parityChain(int length, bool parity);

/// Miter asserting that two array multipliers computing a*b and b*a differ
/// on some output bit (UNSAT; multiplication commutes).
Formula multiplierMiter(int bits);

} // namespace bcdsat::gen

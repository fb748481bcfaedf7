#pragma once

#include "bcdsat/cnf.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace bcdsat {

/// Reads DIMACS CNF. Clauses are split on `0` regardless of line breaks and
/// repeated literals are dropped. Tautologies are kept (see
/// Clause::isTautology). A literal beyond the declared variable count grows
/// numVars; that and a clause-count mismatch are reported through `warnings`
/// rather than failing. Throws ParseError on a malformed header, a
/// non-integer token, or a clause missing its terminating 0.
Formula parseDimacs(std::istream &in,
                    std::vector<std::string> *warnings = nullptr);
Formula parseDimacs(std::string_view text,
                    std::vector<std::string> *warnings = nullptr);
Formula readDimacsFile(const std::filesystem::path &path,
                       std::vector<std::string> *warnings = nullptr);

/// Writes "p cnf <vars> <clauses>" followed by one clause per line. Root
/// units are written as unit clauses and a trivially UNSAT formula gets an
/// empty clause, so the output is logically identical to `f`.
void writeDimacs(std::ostream &out, const Formula &f);
std::string toDimacsString(const Formula &f);
void writeDimacsFile(const std::filesystem::path &path, const Formula &f);

} // namespace bcdsat

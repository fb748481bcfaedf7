#pragma once

#include "bcdsat/cnf.hpp"

#include <cstddef>
#include <iosfwd>
#include <string>

namespace bcdsat {

struct ProofCheckResult {
  /// The empty clause was derived and every lemma before it was RUP.
  bool accepted = false;
  std::size_t lemmas = 0;
  std::size_t deletions = 0;
  /// Deletions of unknown clauses or of clauses currently fixing a root
  /// literal; both are skipped.
  std::size_t ignoredDeletions = 0;
  /// 1-based line of the first rejected lemma (0 if none).
  std::size_t failedLine = 0;
  std::string message;
};

/// Forward check of a textual DRAT proof against `f`. Every added lemma must
/// be a reverse-unit-propagation consequence of the original clauses plus
/// earlier lemmas minus deleted clauses. RAT-only lemmas are rejected.
ProofCheckResult checkProof(const Formula &f, std::istream &proof);

} // namespace bcdsat

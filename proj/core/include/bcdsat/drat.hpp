#pragma once

#include "bcdsat/cnf.hpp"

#include <cstdint>
#include <iosfwd>
#include <span>

namespace bcdsat {

/// Textual DRAT output: "<lits> 0" for an added lemma, "d <lits> 0" for a
/// deletion. Throws IoError as soon as the stream reports a failure.
class DratWriter {
public:
  explicit DratWriter(std::ostream &out) : out_(out) {}

  void add(std::span<const Lit> lits);
  void remove(std::span<const Lit> lits);
  void flush();

  std::uint64_t linesWritten() const { return lines_; }

private:
  void writeLits(std::span<const Lit> lits);

  std::ostream &out_;
  std::uint64_t lines_ = 0;
};

} // namespace bcdsat

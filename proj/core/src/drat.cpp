#include "bcdsat/drat.hpp"

#include "bcdsat/error.hpp"

#include <ostream>

namespace bcdsat {

void DratWriter::writeLits(std::span<const Lit> lits) {
  for (Lit l : lits)
    out_ << l.toDimacs() << ' ';
  out_ << "0\n";
  ++lines_;
  if (!out_)
    throw IoError("proof stream write failed");
}

void DratWriter::add(std::span<const Lit> lits) { writeLits(lits); }

void DratWriter::remove(std::span<const Lit> lits) {
  out_ << "d ";
  writeLits(lits);
}

void DratWriter::flush() {
  out_.flush();
  if (!out_)
    throw IoError("proof stream flush failed");
}

} // namespace bcdsat

// Instance generator for benchmarks and smoke tests.
#include "bcdsat/dimacs.hpp"
#include "bcdsat/generators.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <random>

using namespace bcdsat;

int main(int argc, char **argv) {
  CLI::App app{"Writes generated CNF instances in DIMACS format", "bcdsat-gen"};
  app.require_subcommand(1);
  app.fallthrough();
  std::uint64_t seed = 1;
  std::string outPath;
  app.add_option("--seed", seed)->capture_default_str();
  app.add_option("-o,--out", outPath, "Output file (default: stdout)");

  int n = 100, m = 426, k = 3, minLen = 2, maxLen = 5;
  auto *ksat = app.add_subcommand("ksat", "Uniform random k-SAT");
  ksat->add_option("vars", n)->required();
  ksat->add_option("clauses", m)->required();
  ksat->add_option("-k", k)->capture_default_str();

  auto *mixed = app.add_subcommand("mixed", "Random clauses of mixed length");
  mixed->add_option("vars", n)->required();
  mixed->add_option("clauses", m)->required();
  mixed->add_option("--min", minLen)->capture_default_str();
  mixed->add_option("--max", maxLen)->capture_default_str();

  int holes = 8;
  auto *php = app.add_subcommand("php", "Pigeonhole, holes+1 pigeons");
  php->add_option("holes", holes)->required();

  int vertices = 100, edges = 230, colors = 3;
  auto *color = app.add_subcommand("color", "Random graph colouring");
  color->add_option("vertices", vertices)->required();
  color->add_option("edges", edges)->required();
  color->add_option("colors", colors)->required();

  int length = 100;
  bool parity = true;
  auto *xorChain = app.add_subcommand("parity", "Tseitin XOR chain");
  xorChain->add_option("length", length)->required();
  xorChain->add_option("--parity", parity)->capture_default_str();

  int bits = 6;
  auto *miter = app.add_subcommand("miter", "Commuted multiplier miter (UNSAT)");
  miter->add_option("bits", bits)->required();

  CLI11_PARSE(app, argc, argv);

  std::mt19937_64 rng(seed);
  Formula f;
  if (*ksat)
    f = gen::randomKSat(n, m, k, rng);
  else if (*mixed)
    f = gen::randomMixed(n, m, minLen, maxLen, rng);
  else if (*php)
    f = gen::pigeonhole(holes);
  else if (*color)
    f = gen::graphColoring(vertices, edges, colors, rng);
  else if (*xorChain)
    f = gen::parityChain(length, parity);
  else
    f = gen::multiplierMiter(bits);

  if (outPath.empty()) {
    writeDimacs(std::cout, f);
  } else {
    std::ofstream out(outPath);
    if (!out) {
      std::cerr << "error: cannot open " << outPath << '\n';
      return 1;
    }
    writeDimacs(out, f);
  }
  return 0;
}

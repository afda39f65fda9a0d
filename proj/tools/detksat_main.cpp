#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "detksat/bounds.hpp"
#include "detksat/chain_table.hpp"
#include "detksat/characteristic.hpp"
#include "detksat/covering.hpp"
#include "detksat/generator.hpp"
#include "detksat/report.hpp"
#include "detksat/solver.hpp"

using namespace detksat;

namespace {

constexpr int kExitSat = 10;
constexpr int kExitUnsat = 20;
constexpr int kExitError = 1;
constexpr int kExitMismatch = 2;

struct SolveArgs {
  std::string file;
  std::string mode = "full";
  double c = 0;
  bool trace = false;
  unsigned threads = 1;
};

int run_solve(const SolveArgs& a) {
  std::ifstream in(a.file);
  if (!in) {
    std::cerr << "detksat: cannot open " << a.file << "\n";
    return kExitError;
  }
  Formula f = parse_dimacs(in);
  SolveOptions o;
  o.mode = parse_mode(a.mode);
  if (a.c != 0) {
    if (!(a.c > 1)) throw std::invalid_argument("--c must exceed 1");
    o.phi.c = a.c;
  }
  o.trace = a.trace;
  o.threads = a.threads == 0 ? 1 : a.threads;
  SolveResult r = solve_ksat(f, o);
  std::cout << run_report_json(f, r, o.mode) << "\n";
  return r.sat ? kExitSat : kExitUnsat;
}

int run_gen(const GeneratorParams& p) {
  std::cout << "c detksat gen --k " << p.k << " --n " << p.n << " --m " << p.m << " --seed "
            << p.seed << " (mt19937_64)\n"
            << to_dimacs(random_kcnf(p));
  return 0;
}

int run_bounds(unsigned kmax) {
  if (kmax < 3 || kmax > kMaxBoundK)
    throw std::invalid_argument("--kmax must lie in [3, " + std::to_string(kMaxBoundK) + "]");
  std::printf("k\tc\tnu\n");
  for (const BoundRow& row : ck_recurrence(kmax))
    std::printf("%u\t%.5Lf\t%.6Lf\n", row.k, round_up(row.c, 5), row.nu);
  return 0;
}

int run_chain_table(bool exact, bool generate) {
  if (generate) {
    GeneratedChainTypes g = generate_chain_types(f_single_clause(), kGeneratorMaxLength);
    std::cout << format_chain_table(g.records, exact);
    std::cout << "# generated " << g.records.size() << " types, missing " << g.missing.size()
              << ", extra " << g.extra.size() << (g.incomplete ? ", incomplete" : "") << "\n";
    for (const auto& z : g.missing) std::cout << "# missing " << z << "\n";
    for (const auto& z : g.extra) std::cout << "# extra " << z << "\n";
    return g.missing.empty() && !g.incomplete ? 0 : kExitMismatch;
  }
  const auto rows = reproduce_chain_table();
  std::cout << format_chain_table(rows, exact);
  const auto diff = check_chain_table(rows);
  for (const TableMismatch& m : diff)
    std::cerr << "type " << m.type_id << " " << m.field << ": expected " << m.expected
              << ", got " << m.actual << "\n";
  return diff.empty() ? 0 : kExitMismatch;
}

struct CoverArgs {
  std::size_t cube = 0;
  std::string rho;
  std::string zeta;
  std::size_t nu = 0;
  unsigned k = 3;
  std::string dump;
};

void print_report(const ProductCode& code, const StructuredSpace& space) {
  std::cout << space.describe() << " log2|S| "
            << space.log2_size() << "\n";
  for (std::size_t r = code.min_radius(); r <= code.max_radius(); ++r)
    if (const auto n = code.count_at(r)) std::cout << "radius " << r << " centers " << n << "\n";
  std::cout << "total " << code.total_centers() << "\n";
}

int run_cover(const CoverArgs& a) {
  const bool cube = a.cube > 0;
  if (cube == !a.zeta.empty())
    throw std::invalid_argument("give exactly one of --cube or --zeta");
  StructuredSpace space;
  ProductCode code;
  if (cube) {
    if (a.rho.empty()) throw std::invalid_argument("--cube needs --rho");
    space.factors.push_back(SpaceFactor::cube(a.cube));
    code = build_generalized_code(space, parse_rational(a.rho), {}, a.k);
  } else {
    if (a.nu == 0) throw std::invalid_argument("--zeta needs --nu >= 1");
    const SolutionSpace A = solution_space(realize_chain(a.zeta));
    const Rational lambda = solve_characteristic(A, a.k).lambda;
    space.factors.push_back(SpaceFactor::power(A, a.nu));
    code = ell_cover_power_blocks(A, a.nu, a.k, lambda);
    std::cout << "lambda " << to_string(lambda) << " ell " << ell_for(a.nu, a.k, lambda)
              << " |A| " << A.size() << "\n";
  }
  print_report(code, space);
  const CoverageReport rep = verify_coverage(code, space);
  std::cout << "coverage " << (rep.sampled ? "sampled" : "exhaustive") << " checked "
            << rep.checked << " uncovered " << rep.uncovered
            << (rep.centers_inside ? "" : " centers-outside") << " "
            << (rep.ok() ? "ok" : "FAILED") << "\n";
  if (!a.dump.empty()) {
    std::ofstream out(a.dump);
    out << dump_code(code.materialize(), "detksat cover " + space.describe());
  }
  return rep.ok() ? 0 : kExitMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deterministic k-SAT toolkit"};
  app.require_subcommand(1);

  SolveArgs sa;
  auto* solve = app.add_subcommand("solve", "Decide a DIMACS CNF file");
  solve->add_option("file", sa.file, "DIMACS input")->required();
  solve->add_option("--mode", sa.mode, "full|br|dls|oracle")
      ->check(CLI::IsMember({"full", "br", "dls", "oracle"}));
  solve->add_option("--c", sa.c, "Base used by the termination test");
  solve->add_flag("--trace", sa.trace, "Include the branching trace");
  solve->add_option("--threads", sa.threads, "Worker threads for local search");

  GeneratorParams gp;
  auto* gen = app.add_subcommand("gen", "Random k-CNF in DIMACS");
  gen->add_option("--k", gp.k)->required();
  gen->add_option("--n", gp.n)->required();
  gen->add_option("--m", gp.m)->required();
  gen->add_option("--seed", gp.seed)->required();

  unsigned kmax = 6;
  auto* bounds = app.add_subcommand("bounds", "Bound bases and balancing fractions");
  bounds->add_option("--kmax", kmax);

  bool exact = false, generate = false;
  auto* table = app.add_subcommand("chain-table", "3-SAT chain types");
  table->add_flag("--exact", exact, "Print b and lambda as fractions");
  table->add_flag("--generate", generate, "Derive the types from the chain rules");

  CoverArgs ca;
  auto* cover = app.add_subcommand("cover", "Build and verify a covering code");
  cover->add_option("--cube", ca.cube, "Cube width");
  cover->add_option("--rho", ca.rho, "Radius fraction p/q");
  cover->add_option("--zeta", ca.zeta, "Chain type");
  cover->add_option("--nu", ca.nu, "Number of chains");
  cover->add_option("--k", ca.k);
  cover->add_option("--dump", ca.dump, "Write centers to a file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitError;
  }
  try {
    if (*solve) return run_solve(sa);
    if (*gen) return run_gen(gp);
    if (*bounds) return run_bounds(kmax);
    if (*table) return run_chain_table(exact, generate);
    if (*cover) return run_cover(ca);
  } catch (const std::exception& e) {
    std::cerr << "detksat: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}

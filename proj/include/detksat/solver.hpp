#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "detksat/branching_3sat.hpp"
#include "detksat/chain.hpp"
#include "detksat/formula.hpp"
#include "detksat/local_search.hpp"

namespace detksat {

enum class SolveMode {
  /// Branching, then local search over the returned instance.
  kFull,
  /// Branching with the termination test switched off.
  kBranch,
  /// Local search over the whole cube.
  kLocalSearch,
  /// Exhaustive enumeration.
  kOracle,
};

std::string to_string(SolveMode m);
SolveMode parse_mode(const std::string& s);

enum class SolvePath { k2Sat, kBranchSolved, kLocalSearch, kOracle };
std::string to_string(SolvePath p);

struct SolveOptions {
  SolveMode mode = SolveMode::kFull;
  PhiConfig phi;
  bool trace = false;
  unsigned threads = 1;
};

struct SolveStats {
  std::uint64_t branch_nodes = 0;
  std::uint64_t branch_leaves = 0;
  std::uint64_t ksat_patterns = 0;
  std::uint64_t balls_searched = 0;
  std::uint64_t code_centers = 0;
  std::uint64_t local_search_calls = 0;
  std::vector<std::pair<std::size_t, std::uint64_t>> code_sizes;
  /// Chain vector of the instance handed to local search at the top level.
  ChainVector chains;
  std::string zeta;
  bool accounting_holds = true;
  bool forbidden_substring = false;
};

struct SolveResult {
  bool sat = false;
  std::optional<PartialAssignment> assignment;
  SolvePath path = SolvePath::kOracle;
  SolveStats stats;
  std::vector<std::string> trace;
};

/// Decides F. k is the width of F: width <= 2 goes to 2-SAT, 3 to the 3-SAT
/// branching, larger widths to k-SAT branching that recurses on k - 1. A
/// returned instance is searched by local search over F. Every SAT answer
/// is checked against F before returning.
SolveResult solve_ksat(const Formula& f, const SolveOptions& opts = {});

}  // namespace detksat

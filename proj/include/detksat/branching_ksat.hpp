#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "detksat/branching_3sat.hpp"
#include "detksat/chain.hpp"
#include "detksat/formula.hpp"

namespace detksat {

struct KSatConfig {
  unsigned k = 4;
  /// Branch while |I| < nu * n.
  long double nu = 0;
  /// Base of the (k-1)-SAT bound the fraction was derived from.
  long double c_prev = 0;

  /// nu and c_prev from the bound recurrence.
  static KSatConfig for_k(unsigned k);
  /// Always branches; never hands an instance to local search.
  static KSatConfig branch_only(unsigned k);
};

/// Scans the k-clauses in clause order and keeps each one that shares no
/// variable with those already kept.
Instance greedy_maximal_1chains(const Formula& f, unsigned k);

/// Satisfying literal patterns of a clause in enumeration order: bit i of
/// a pattern is the truth value of literal i, patterns ascend as binary
/// strings read from the first literal, and the all-false one is skipped.
std::vector<PartialAssignment> clause_patterns(const Clause& c, std::size_t num_vars);

struct BrkResult {
  BranchStatus status = BranchStatus::kUnsat;
  std::optional<PartialAssignment> assignment;
  Instance instance;
  std::uint64_t patterns = 0;
};

class SubSolver;

/// One level of k-SAT branching. Restrictions are decided by `sub`, which
/// receives (k-1)-CNFs.
BrkResult br_k(const Formula& f, const KSatConfig& cfg, SubSolver& sub);

/// Decides the restricted formulas produced by br_k.
class SubSolver {
 public:
  virtual ~SubSolver() = default;
  virtual std::optional<PartialAssignment> solve(const Formula& f) = 0;
};

}  // namespace detksat

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "detksat/bounds.hpp"
#include "detksat/chain.hpp"
#include "detksat/formula.hpp"

namespace detksat {

/// 2-clauses of UP(F | l = 1) whose clause in F is a 3-clause. Members keep
/// their origin tags. `conflict` is set (and `clauses` left empty) when unit
/// propagation derives bottom.
struct TbSet {
  Formula clauses;
  bool conflict = false;
};

TbSet tb_set(const Formula& f, Lit l);

/// One replacement step: for the first 2-clause (l1 v l2) and first member C
/// of TB(F, l1 = 1) containing l2 (or symmetrically), replaces C's clause in F
/// by C. Returns nullopt when no such pair exists.
std::optional<Formula> replacement_step(const Formula& f);

/// Autark elimination and clause replacement applied over the 2-clauses in
/// clause order until neither applies. Units are propagated first. The
/// result may contain bottom.
Formula procedure_p(const Formula& f);

/// True when no 2-clause (l1 v l2) has l2 in a member of TB(F, l1 = 1), nor
/// l1 in a member of TB(F, l2 = 1).
bool replacement_fixpoint(const Formula& f);

/// Base of the termination test. Disabled means the test never fires.
struct PhiConfig {
  long double c = c3();
  bool enabled = true;
};

/// (sum_i nu_i log b_i) / log c > n.
bool condition_phi(const ChainVector& v, std::size_t n, const PhiConfig& cfg);

/// sum_i nu_i log2 b_i.
long double phi_numerator(const ChainVector& v);

/// Chain vector of a clause sequence. `r2` flags the last clause of every
/// chain that ended by a forced termination.
ChainVector chain_vector(const std::vector<Clause>& seq, const std::vector<bool>& r2);

enum class BranchStatus { kSolved, kUnsat, kInstance };

struct Br3Stats {
  std::uint64_t nodes = 0;
  /// Explored leaves, including children cut off by a propagation conflict.
  std::uint64_t leaves = 0;
  std::uint64_t two_negative_bundles = 0;
  /// Fresh-literal branchings by who pays for them: a forced termination,
  /// the two-negative bundle, or nobody (the first one and back-to-back
  /// ones).
  std::uint64_t fallbacks_forced = 0;
  std::uint64_t fallbacks_bundle = 0;
  std::uint64_t fallbacks_uncharged = 0;
  std::uint64_t fallback_autarks = 0;
  std::size_t max_depth = 0;
  /// Largest log2 of (product of branch numbers of the path's chains) *
  /// 2^(uncharged fallbacks on the path), over explored leaves.
  long double max_leaf_log2_bound = 0;
  /// Some clause sequence contained "tp" or "tt".
  bool forbidden_substring = false;
  /// Candidate clauses dropped because their overlap with the previous
  /// branching clause was not one of the four chain patterns.
  std::uint64_t rejected_candidates = 0;

  /// log2(leaves) <= max_leaf_log2_bound (within 1e-9).
  bool accounting_holds() const;
};

struct Br3Result {
  BranchStatus status = BranchStatus::kUnsat;
  std::optional<PartialAssignment> assignment;
  Instance instance;
  std::vector<Clause> clause_seq;
  std::vector<bool> r2;
  std::string zeta;
  ChainVector chains;
  Br3Stats stats;
  std::vector<std::string> trace;
};

struct Br3Options {
  PhiConfig phi;
  bool trace = false;
  /// Node budget; 0 means unlimited. Exceeding it throws std::runtime_error.
  std::uint64_t max_nodes = 0;
};

/// Depth-first branching on 3-CNF. Returns a satisfying assignment, UNSAT,
/// or the instance made from the clause sequence once the termination test
/// fires. `n` in the test is the number of occurring variables of `f`.
Br3Result br_3(const Formula& f, const Br3Options& opts = {});

}  // namespace detksat

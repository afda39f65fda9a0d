#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "detksat/chain.hpp"
#include "detksat/covering.hpp"
#include "detksat/formula.hpp"

namespace detksat {

/// Total assignment as a word: bit v-1 holds x_v.
Word assignment_to_word(const PartialAssignment& a);
PartialAssignment word_to_assignment(const Word& w);

/// Satisfying assignment within Hamming distance r of the total assignment
/// `alpha`, or nullopt. Branches on the literals of the first falsified
/// clause in clause order; a variable is flipped at most once per path.
std::optional<PartialAssignment> searchball(const Formula& f, const PartialAssignment& alpha,
                                            std::size_t r);
std::optional<Word> searchball(const Formula& f, const Word& alpha, std::size_t r);

/// Chains whose solution space exceeds this many words are searched as
/// part of the cube instead.
inline constexpr std::size_t kDlsMaxChainWords = 2048;

/// H(F, I) laid out for a formula: the cube over variables outside the
/// instance, then one power factor per group of chains sharing a shape up
/// to renaming and polarity.
struct DlsSpace {
  StructuredSpace space;
  /// Variable behind each coordinate.
  std::vector<Var> coord_var;
  /// XOR applied to a coordinate before it becomes the variable's value.
  std::vector<bool> coord_flip;
  std::vector<Rational> lambdas;
  std::size_t cube_width = 0;
  std::size_t dissolved_chains = 0;

  PartialAssignment to_assignment(const Word& w, std::size_t num_vars) const;
};

DlsSpace build_dls_space(const Formula& f, const Instance& inst, unsigned k);

struct DlsStats {
  std::size_t cube_width = 0;
  std::size_t chain_groups = 0;
  std::size_t dissolved_chains = 0;
  std::size_t cube_radius = 0;
  std::size_t max_radius = 0;
  std::uint64_t code_centers = 0;
  std::uint64_t balls_searched = 0;
  /// Number of centers per total radius.
  std::vector<std::pair<std::size_t, std::uint64_t>> code_sizes;
};

struct DlsResult {
  std::optional<PartialAssignment> assignment;
  DlsStats stats;
};

/// Covers H(F, I) with radius 1/k and searches every ball in enumeration
/// order. `threads` > 1 searches batches of balls concurrently; the result
/// is still the first hit in enumeration order.
DlsResult dls(const Formula& f, const Instance& inst, unsigned k = 0, unsigned threads = 1);

}  // namespace detksat

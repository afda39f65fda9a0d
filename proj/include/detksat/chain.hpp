#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "detksat/formula.hpp"
#include "detksat/rational.hpp"

namespace detksat {

/// Invalid chain, instance or overlap pattern. `first()`/`second()` name the
/// offending clause positions (0-based) when the error concerns a pair.
class ChainError : public std::invalid_argument {
 public:
  ChainError(const std::string& what, std::size_t first = npos,
             std::size_t second = npos)
      : std::invalid_argument(what), first_(first), second_(second) {}
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::size_t first() const { return first_; }
  std::size_t second() const { return second_; }

 private:
  std::size_t first_, second_;
};

/// Sequence of k-clauses where each clause shares variables with its
/// neighbours and with no other clause.
class Chain {
 public:
  const std::vector<Clause>& clauses() const { return clauses_; }
  std::size_t size() const { return clauses_.size(); }
  std::size_t k() const { return k_; }
  /// Variables in order of first occurrence.
  const std::vector<Var>& variables() const { return vars_; }

  friend Chain build_chain(std::vector<Clause> clauses, std::size_t k);

 private:
  std::vector<Clause> clauses_;
  std::size_t k_ = 0;
  std::vector<Var> vars_;
};

Chain build_chain(std::vector<Clause> clauses, std::size_t k);

/// Pairwise variable-disjoint chains.
struct Instance {
  std::vector<Chain> chains;

  std::size_t size() const { return chains.size(); }
  bool empty() const { return chains.empty(); }
  /// Union of chain variables, sorted.
  std::vector<Var> variables() const;
};

/// Throws ChainError naming the two chains that share a variable.
void validate_instance(const Instance& inst);

inline constexpr std::size_t kSolutionSpaceMaxVars = 24;

/// Satisfying words of a chain. Bit i of every word is the value of
/// `order[i]`; words are sorted by their integer value.
struct SolutionSpace {
  std::vector<Var> order;
  std::vector<Word> words;

  std::size_t size() const { return words.size(); }
  std::size_t width() const { return order.size(); }
  bool contains(const Word& w) const;
};

SolutionSpace solution_space(const Chain& chain);

/// Overlap symbol of two consecutive clauses: '*' independent, 'n' one
/// shared variable with opposite signs, 'p' one shared variable with equal
/// signs, 't' two shared variables both with opposite signs.
char overlap_symbol(const Clause& a, const Clause& b);

/// Type string of a clause sequence; the last symbol is always '*'.
std::string zeta(const std::vector<Clause>& seq);

/// Splits the sequence after every '*' into chains.
Instance transform(const std::vector<Clause>& seq);

/// Non-empty string over {*, n, p, t} ending in '*' with no interior '*'.
bool is_chain_type(std::string_view z);

/// Smaller of z and its reversal (the final '*' stays in place).
std::string canonical_zeta(std::string_view z);

/// 2^#p * 3^(#* + #n) * (7/3)^#t, doubled for a forced termination.
Rational branch_number(std::string_view z, bool r2);

/// Number of variables of a 3-CNF chain of type z.
std::size_t variable_count(std::string_view z);

/// Concrete 3-CNF chain of type z over variables 1..variable_count(z).
Chain realize_chain(std::string_view z);

/// log b / (log b + eta log(4/3) + log lambda).
long double f_value(const Rational& b, std::size_t eta, const Rational& lambda);

/// Chain type as counted by the branching analysis.
struct ChainType {
  std::string zeta;
  bool r2 = false;
  auto operator<=>(const ChainType&) const = default;
};

/// Number of chains of each type.
using ChainVector = std::map<ChainType, std::size_t>;

}  // namespace detksat

#pragma once

#include <random>
#include <vector>

#include "detksat/formula.hpp"

namespace detksat::testing {

inline Lit L(int d) { return Lit::from_dimacs(d); }

inline Clause C(std::initializer_list<int> ds) {
  std::vector<Lit> v;
  for (int d : ds) v.push_back(L(d));
  return Clause(std::move(v));
}

inline Formula F(std::size_t n, std::initializer_list<std::initializer_list<int>> cs) {
  std::vector<Clause> v;
  for (auto c : cs) v.push_back(C(c));
  return Formula(n, std::move(v));
}

/// Clauses of width 1..max_width over n variables, distinct variables per clause.
inline Formula random_mixed(std::mt19937_64& rng, std::size_t n, std::size_t m,
                            std::size_t max_width) {
  Formula f(n);
  std::uniform_int_distribution<std::size_t> width(1, std::min(max_width, n));
  std::uniform_int_distribution<Var> var(1, static_cast<Var>(n));
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t w = width(rng);
    std::vector<Lit> lits;
    while (lits.size() < w) {
      const Var v = var(rng);
      bool dup = false;
      for (Lit l : lits) dup = dup || l.var() == v;
      if (!dup) lits.emplace_back(v, rng() & 1U);
    }
    f.add_clause(Clause(std::move(lits)), static_cast<std::int64_t>(i));
  }
  return f;
}

}  // namespace detksat::testing

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "detksat/chain.hpp"
#include "detksat/rational.hpp"

namespace detksat {

/// Unique solution of the characteristic system of a solution space A:
///   sum_a pi(a) = 1,
///   sum_a pi(a) (1/(k-1))^d(a, a*) = lambda   for every a* in A.
/// pi[i] belongs to A.words[i].
struct Characteristic {
  Rational lambda;
  std::vector<Rational> pi;
};

/// The system is singular or its solution has a negative component.
class CharacteristicError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kCharacteristicMaxWords = 4096;

/// Exact solution by p-adic lifting over a modular LDL^T factorisation,
/// checked by exact integer substitution before returning.
Characteristic solve_characteristic(const SolutionSpace& A, unsigned k);

inline constexpr std::size_t kDenseSolverMaxWords = 256;

/// Plain Gaussian elimination over the rationals. Slow; used as a
/// cross-check on small spaces.
Characteristic solve_characteristic_dense(const SolutionSpace& A, unsigned k);

/// Closed form for the all-positive k-clause (x1 v ... v xk). The words are
/// those of solution_space() on that clause.
Characteristic closed_form_1chain(unsigned k);

/// Exact check of every equality and of pi >= 0.
bool satisfies_characteristic(const SolutionSpace& A, unsigned k,
                              const Characteristic& c);

/// Characteristic value of the 3-CNF chain type z, memoised by canonical type.
Rational chain_lambda(std::string_view z);

}  // namespace detksat

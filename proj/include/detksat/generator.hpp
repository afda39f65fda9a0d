#pragma once

#include <cstddef>
#include <cstdint>

#include "detksat/formula.hpp"

namespace detksat {

struct GeneratorParams {
  unsigned k = 3;
  std::size_t n = 0;
  std::size_t m = 0;
  std::uint64_t seed = 0;
};

/// Uniform random k-CNF drawn from std::mt19937_64 seeded with `seed`.
/// Each clause draws k variables one at a time (value = 1 + draw mod n with
/// rejection of the biased tail, a repeated variable is redrawn) and a
/// polarity per literal from the top bit of the next draw. The same
/// parameters give the same formula on every platform.
Formula random_kcnf(const GeneratorParams& p);

}  // namespace detksat

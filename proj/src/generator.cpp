#include "detksat/generator.hpp"

#include <random>
#include <vector>

namespace detksat {

namespace {

std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  for (;;) {
    const std::uint64_t x = rng();
    if (x < limit) return x % n;
  }
}

}  // namespace

Formula random_kcnf(const GeneratorParams& p) {
  if (p.k == 0) throw PreconditionError("random_kcnf: k must be positive");
  if (p.n == 0) throw PreconditionError("random_kcnf: n must be positive");
  if (p.k > p.n) throw PreconditionError("random_kcnf: k exceeds n");
  std::mt19937_64 rng(p.seed);
  Formula f(p.n);
  for (std::size_t i = 0; i < p.m; ++i) {
    std::vector<Lit> lits;
    while (lits.size() < p.k) {
      const Var v = static_cast<Var>(1 + bounded(rng, p.n));
      bool dup = false;
      for (Lit l : lits)
        if (l.var() == v) dup = true;
      if (dup) continue;
      lits.emplace_back(v, (rng() >> 63) != 0);
    }
    f.add_clause(Clause(std::move(lits)), static_cast<std::int64_t>(i));
  }
  return f;
}

}  // namespace detksat

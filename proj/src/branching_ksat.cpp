#include "detksat/branching_ksat.hpp"

#include <limits>
#include <stdexcept>

#include "detksat/bounds.hpp"

namespace detksat {

KSatConfig KSatConfig::for_k(unsigned k) {
  if (k < 4 || k > kMaxBoundK)
    throw PreconditionError("KSatConfig::for_k: k must lie in [4, " +
                            std::to_string(kMaxBoundK) + "]");
  const auto rows = ck_recurrence(k);
  KSatConfig cfg;
  cfg.k = k;
  cfg.nu = rows.back().nu;
  cfg.c_prev = rows[rows.size() - 2].c;
  return cfg;
}

KSatConfig KSatConfig::branch_only(unsigned k) {
  KSatConfig cfg;
  cfg.k = k;
  cfg.nu = std::numeric_limits<long double>::infinity();
  return cfg;
}

Instance greedy_maximal_1chains(const Formula& f, unsigned k) {
  Instance inst;
  std::vector<char> used(f.num_vars() + 1, 0);
  for (const Clause& c : f.clauses()) {
    if (c.bottom || c.size() != k) continue;
    bool free = true;
    for (Lit l : c.lits)
      if (used[l.var()]) free = false;
    if (!free) continue;
    for (Lit l : c.lits) used[l.var()] = 1;
    inst.chains.push_back(build_chain({c}, k));
  }
  return inst;
}

std::vector<PartialAssignment> clause_patterns(const Clause& c, std::size_t num_vars) {
  const std::size_t k = c.size();
  if (k >= 63) throw PreconditionError("clause_patterns: clause too wide");
  std::vector<PartialAssignment> out;
  for (std::uint64_t p = 1; p < (std::uint64_t{1} << k); ++p) {
    PartialAssignment a(num_vars);
    for (std::size_t i = 0; i < k; ++i) {
      const bool lit_true = (p >> (k - 1 - i)) & 1U;
      a.set_true(lit_true ? c.lits[i] : ~c.lits[i]);
    }
    out.push_back(std::move(a));
  }
  return out;
}

BrkResult br_k(const Formula& f, const KSatConfig& cfg, SubSolver& sub) {
  if (cfg.k < 3) throw PreconditionError("br_k: k must be at least 3");
  if (f.width() > cfg.k) throw PreconditionError("br_k: formula wider than k");
  BrkResult res;
  if (f.has_bottom()) return res;
  if (f.empty()) {
    res.status = BranchStatus::kSolved;
    res.assignment = PartialAssignment(f.num_vars()).completed();
    return res;
  }
  Instance inst = greedy_maximal_1chains(f, cfg.k);
  const long double n = static_cast<long double>(f.occurring_vars().size());
  if (static_cast<long double>(inst.size()) >= cfg.nu * n) {
    res.status = BranchStatus::kInstance;
    res.instance = std::move(inst);
    return res;
  }

  std::vector<std::vector<PartialAssignment>> choices;
  for (const Chain& ch : inst.chains) choices.push_back(clause_patterns(ch.clauses()[0], f.num_vars()));
  std::vector<std::size_t> odo(choices.size(), 0);
  for (;;) {
    PartialAssignment alpha(f.num_vars());
    for (std::size_t i = 0; i < choices.size(); ++i) alpha.merge(choices[i][odo[i]]);
    ++res.patterns;
    const Formula g = restrict(f, alpha);
    if (!g.has_bottom()) {
      if (g.width() >= cfg.k) throw std::logic_error("br_k: restriction kept a k-clause");
      if (auto a = sub.solve(g)) {
        a->merge(alpha);
        if (!f.satisfied_by(*a)) throw std::logic_error("br_k: assignment fails verification");
        res.status = BranchStatus::kSolved;
        res.assignment = std::move(a);
        return res;
      }
    }
    std::size_t i = choices.size();
    while (i > 0) {
      --i;
      if (++odo[i] < choices[i].size()) break;
      odo[i] = 0;
      if (i == 0) return res;
    }
    if (choices.empty()) return res;
  }
}

}  // namespace detksat

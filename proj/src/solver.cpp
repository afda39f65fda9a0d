#include "detksat/solver.hpp"

#include <algorithm>
#include <stdexcept>

#include "detksat/bounds.hpp"
#include "detksat/branching_ksat.hpp"

namespace detksat {

std::string to_string(SolveMode m) {
  switch (m) {
    case SolveMode::kFull: return "full";
    case SolveMode::kBranch: return "br";
    case SolveMode::kLocalSearch: return "dls";
    case SolveMode::kOracle: return "oracle";
  }
  return "?";
}

SolveMode parse_mode(const std::string& s) {
  if (s == "full") return SolveMode::kFull;
  if (s == "br") return SolveMode::kBranch;
  if (s == "dls") return SolveMode::kLocalSearch;
  if (s == "oracle") return SolveMode::kOracle;
  throw std::invalid_argument("unknown mode '" + s + "'");
}

std::string to_string(SolvePath p) {
  switch (p) {
    case SolvePath::k2Sat: return "2SAT";
    case SolvePath::kBranchSolved: return "BR-solved";
    case SolvePath::kLocalSearch: return "DLS";
    case SolvePath::kOracle: return "oracle";
  }
  return "?";
}

namespace {

void absorb(SolveStats& into, const DlsStats& d) {
  ++into.local_search_calls;
  into.balls_searched += d.balls_searched;
  into.code_centers += d.code_centers;
}

class Dispatcher : public SubSolver {
 public:
  explicit Dispatcher(const SolveOptions& opts) : opts_(opts) {}

  SolveResult run(const Formula& f, bool top) {
    SolveResult res;
    if (opts_.mode == SolveMode::kOracle) {
      res.path = SolvePath::kOracle;
      set(res, brute_force_sat(f));
      return res;
    }
    if (opts_.mode == SolveMode::kLocalSearch) {
      res.path = SolvePath::kLocalSearch;
      DlsResult d = dls(f, Instance{}, 0, opts_.threads);
      absorb(stats_, d.stats);
      if (top) stats_.code_sizes = d.stats.code_sizes;
      set(res, std::move(d.assignment));
      return res;
    }
    if (f.has_bottom()) {
      res.path = SolvePath::kBranchSolved;
      return res;
    }
    const std::size_t w = f.width();
    if (w <= 2) {
      res.path = SolvePath::k2Sat;
      set(res, solve_2sat(f));
      return res;
    }
    if (w == 3) {
      Br3Options bo;
      bo.phi = opts_.phi;
      if (opts_.mode == SolveMode::kBranch) bo.phi.enabled = false;
      bo.trace = opts_.trace && top;
      Br3Result b = br_3(f, bo);
      stats_.branch_nodes += b.stats.nodes;
      stats_.branch_leaves += b.stats.leaves;
      stats_.accounting_holds = stats_.accounting_holds && b.stats.accounting_holds();
      stats_.forbidden_substring = stats_.forbidden_substring || b.stats.forbidden_substring;
      if (top) trace_ = std::move(b.trace);
      if (b.status != BranchStatus::kInstance) {
        res.path = SolvePath::kBranchSolved;
        set(res, std::move(b.assignment));
        return res;
      }
      if (top) {
        stats_.chains = b.chains;
        stats_.zeta = b.zeta;
      }
      return local_search(f, b.instance, 3, top);
    }
    KSatConfig cfg = (opts_.mode == SolveMode::kBranch || w > kMaxBoundK)
                         ? KSatConfig::branch_only(static_cast<unsigned>(w))
                         : KSatConfig::for_k(static_cast<unsigned>(w));
    BrkResult b = br_k(f, cfg, *this);
    stats_.ksat_patterns += b.patterns;
    if (b.status != BranchStatus::kInstance) {
      res.path = SolvePath::kBranchSolved;
      set(res, std::move(b.assignment));
      return res;
    }
    if (top) {
      if (!b.instance.empty()) stats_.chains[ChainType{"*", false}] = b.instance.size();
    }
    return local_search(f, b.instance, static_cast<unsigned>(w), top);
  }

  std::optional<PartialAssignment> solve(const Formula& f) override {
    return run(f, false).assignment;
  }

  SolveStats stats_;
  std::vector<std::string> trace_;

 private:
  SolveResult local_search(const Formula& f, const Instance& inst, unsigned k, bool top) {
    SolveResult res;
    res.path = SolvePath::kLocalSearch;
    DlsResult d = dls(f, inst, k, opts_.threads);
    absorb(stats_, d.stats);
    if (top) stats_.code_sizes = d.stats.code_sizes;
    set(res, std::move(d.assignment));
    return res;
  }

  static void set(SolveResult& res, std::optional<PartialAssignment> a) {
    res.sat = a.has_value();
    res.assignment = std::move(a);
  }

  SolveOptions opts_;
};

}  // namespace

SolveResult solve_ksat(const Formula& f, const SolveOptions& opts) {
  Dispatcher d(opts);
  SolveResult res = d.run(f, true);
  if (res.sat) {
    PartialAssignment a = res.assignment->completed();
    if (!f.satisfied_by(a)) throw std::logic_error("solve_ksat: assignment fails verification");
    res.assignment = std::move(a);
  }
  res.stats = std::move(d.stats_);
  res.trace = std::move(d.trace_);
  return res;
}

}  // namespace detksat

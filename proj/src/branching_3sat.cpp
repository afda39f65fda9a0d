#include "detksat/branching_3sat.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

#include "detksat/chain_table.hpp"

namespace detksat {

namespace {

// Copy of f whose clause i has origin i whenever origins are missing or
// repeated.
Formula with_unique_origins(const Formula& f) {
  std::vector<std::int64_t> seen = f.origins();
  std::sort(seen.begin(), seen.end());
  const bool ok = std::adjacent_find(seen.begin(), seen.end()) == seen.end() &&
                  (seen.empty() || seen.front() != Formula::kNoOrigin);
  if (ok) return f;
  return Formula(f.num_vars(), f.clauses());
}

std::map<std::int64_t, std::size_t> origin_index(const Formula& f) {
  std::map<std::int64_t, std::size_t> m;
  for (std::size_t i = 0; i < f.num_clauses(); ++i) m[f.origin(i)] = i;
  return m;
}

PartialAssignment single(std::size_t n, Lit l) {
  PartialAssignment a(n);
  a.set_true(l);
  return a;
}

TbSet tb_from(const Formula& f, const std::map<std::int64_t, std::size_t>& idx, Lit l) {
  TbSet out;
  out.clauses = Formula(f.num_vars());
  const Propagation p = propagate(f, single(f.num_vars(), l));
  if (p.conflict) {
    out.conflict = true;
    return out;
  }
  for (std::size_t i = 0; i < p.formula.num_clauses(); ++i) {
    if (p.formula.clause(i).size() != 2) continue;
    auto it = idx.find(p.formula.origin(i));
    if (it != idx.end() && f.clause(it->second).size() == 3)
      out.clauses.add_clause(p.formula.clause(i), p.formula.origin(i));
  }
  return out;
}

struct Simplified {
  Formula formula;
  PartialAssignment assignment;
};

// Single simplification step on a formula without units. Returns false at
// the fixpoint.
bool p_step(Formula& g, PartialAssignment& a, bool allow_autark) {
  const auto idx = origin_index(g);
  for (std::size_t i = 0; i < g.num_clauses(); ++i) {
    const Clause& c = g.clause(i);
    if (c.size() != 2) continue;
    const Lit l1 = c.lits[0], l2 = c.lits[1];
    if (allow_autark) {
      for (Lit l : {l1, l2}) {
        const TbSet tb = tb_from(g, idx, l);
        if (!tb.conflict && tb.clauses.empty()) {
          Propagation p = propagate(g, single(g.num_vars(), l));
          a.merge(p.assignment);
          g = std::move(p.formula);
          return true;
        }
      }
    }
    for (auto [x, y] : {std::pair{l1, l2}, std::pair{l2, l1}}) {
      const TbSet tb = tb_from(g, idx, x);
      if (tb.conflict) continue;
      for (std::size_t j = 0; j < tb.clauses.num_clauses(); ++j) {
        if (!tb.clauses.clause(j).contains(y)) continue;
        g.replace_clause(idx.at(tb.clauses.origin(j)), tb.clauses.clause(j));
        return true;
      }
    }
  }
  return false;
}

Simplified simplify(const Formula& f) {
  Propagation p = propagate(f);
  Simplified s{std::move(p.formula), std::move(p.assignment)};
  if (p.conflict) return s;
  while (p_step(s.formula, s.assignment, true)) {
  }
  return s;
}

std::string lits_string(const Clause& c) {
  std::ostringstream os;
  os << c;
  return os.str();
}

bool same_lits(const Clause& a, const Clause& b) {
  if (a.size() != b.size()) return false;
  for (Lit l : a.lits)
    if (!b.contains(l)) return false;
  return true;
}

}  // namespace

TbSet tb_set(const Formula& f, Lit l) {
  const Formula g = with_unique_origins(f);
  return tb_from(g, origin_index(g), l);
}

std::optional<Formula> replacement_step(const Formula& f) {
  Formula g = with_unique_origins(f);
  PartialAssignment a(g.num_vars());
  if (p_step(g, a, false)) return g;
  return std::nullopt;
}

Formula procedure_p(const Formula& f) { return simplify(with_unique_origins(f)).formula; }

bool replacement_fixpoint(const Formula& f) {
  const Formula g = with_unique_origins(f);
  const auto idx = origin_index(g);
  for (const Clause& c : g.clauses()) {
    if (c.size() != 2) continue;
    for (auto [x, y] : {std::pair{c.lits[0], c.lits[1]}, std::pair{c.lits[1], c.lits[0]}}) {
      const TbSet tb = tb_from(g, idx, x);
      for (const Clause& t : tb.clauses.clauses())
        if (t.contains(y)) return false;
    }
  }
  return true;
}

long double phi_numerator(const ChainVector& v) {
  long double s = 0;
  for (const auto& [type, count] : v)
    s += static_cast<long double>(count) * log2(branch_number(type.zeta, type.r2));
  return s;
}

bool condition_phi(const ChainVector& v, std::size_t n, const PhiConfig& cfg) {
  if (!cfg.enabled) return false;
  if (!(cfg.c > 1)) throw PreconditionError("condition_phi: c must exceed 1");
  return phi_numerator(v) / std::log2(cfg.c) > static_cast<long double>(n);
}

ChainVector chain_vector(const std::vector<Clause>& seq, const std::vector<bool>& r2) {
  ChainVector v;
  if (seq.empty()) return v;
  if (r2.size() != seq.size()) throw PreconditionError("chain_vector: r2 flags misaligned");
  const std::string z = zeta(seq);
  std::string cur;
  for (std::size_t i = 0; i < z.size(); ++i) {
    cur.push_back(z[i]);
    if (z[i] == '*') {
      ++v[ChainType{canonical_zeta(cur), r2[i]}];
      cur.clear();
    }
  }
  return v;
}

bool Br3Stats::accounting_holds() const {
  if (leaves == 0) return true;
  return std::log2(static_cast<long double>(leaves)) <= max_leaf_log2_bound + 1e-9L;
}

namespace {

struct Seed {
  Lit lit;
  Formula tb;
};

struct Path {
  std::vector<Clause> seq;
  std::vector<bool> r2;
  // Symbols between consecutive clauses of seq.
  std::string links;
  std::size_t uncharged = 0;
  // The last chain may still grow.
  bool chain_open = false;
};

enum class Mode { kNormal, kBundleFallback };

struct Candidate {
  Clause current;
  Clause original;
  char symbol = '*';
};

class Br3Search {
 public:
  Br3Search(const Formula& f, const Br3Options& opts)
      : input_(Formula(f.num_vars(), f.clauses())),
        n_(f.occurring_vars().size()),
        opts_(opts),
        f1_(f_single_clause()) {}

  Br3Result run() {
    if (input_.width() > 3) throw PreconditionError("br_3: formula wider than 3");
    node(input_, PartialAssignment(input_.num_vars()), Path{}, {}, Mode::kNormal, 0);
    if (!done_) res_.status = BranchStatus::kUnsat;
    return std::move(res_);
  }

 private:
  ChainVector vector_of(const Path& p) const { return chain_vector(p.seq, p.r2); }

  void leaf(const Path& p) {
    ++res_.stats.leaves;
    const long double b = phi_numerator(vector_of(p)) + static_cast<long double>(p.uncharged);
    res_.stats.max_leaf_log2_bound = std::max(res_.stats.max_leaf_log2_bound, b);
  }

  void finish_instance(const Path& p) {
    done_ = true;
    res_.status = BranchStatus::kInstance;
    res_.clause_seq = p.seq;
    res_.r2 = p.r2;
    res_.zeta = zeta(p.seq);
    res_.chains = vector_of(p);
    res_.instance = transform(p.seq);
  }

  void note(std::size_t depth, const std::string& what, const Path& p) {
    if (!opts_.trace) return;
    std::ostringstream os;
    os << "depth=" << depth << ' ' << what << " zeta=" << (p.seq.empty() ? "" : zeta(p.seq))
       << " phi=" << phi_numerator(vector_of(p));
    res_.trace.push_back(os.str());
  }

  // Chain rule 2 may end the last chain here.
  bool forced_termination_due(const Path& p) const {
    if (p.seq.empty() || !p.chain_open || p.r2.back()) return false;
    const std::size_t star = p.links.find_last_of('*');
    const std::string open =
        star == std::string::npos ? p.links : p.links.substr(star + 1);
    return forced_termination_allowed(open + "*", f1_);
  }

  std::optional<Candidate> pick(const Formula& f, const std::vector<Seed>& seeds,
                                const Path& p) {
    const auto idx = origin_index(f);
    for (const Seed& s : seeds) {
      for (std::size_t j = 0; j < s.tb.num_clauses(); ++j) {
        auto it = idx.find(s.tb.origin(j));
        if (it == idx.end()) continue;
        const Clause& cur = f.clause(it->second);
        if (cur.size() != 2 || !same_lits(cur, s.tb.clause(j))) continue;
        const Clause& orig = input_.clause(static_cast<std::size_t>(s.tb.origin(j)));
        if (orig.size() != 3) continue;
        char sym = '*';
        if (!p.seq.empty()) {
          try {
            sym = overlap_symbol(p.seq.back(), orig);
          } catch (const ChainError&) {
            ++res_.stats.rejected_candidates;
            continue;
          }
          if ((!p.chain_open && sym != '*') ||
              (!p.links.empty() && p.links.back() == 't' && (sym == 'p' || sym == 't')) ||
              !disjoint_from_open_chain(p, orig)) {
            ++res_.stats.rejected_candidates;
            continue;
          }
        }
        return Candidate{cur, orig, sym};
      }
    }
    return std::nullopt;
  }

  // orig shares no variable with the clauses of the last chain other than
  // its final one.
  static bool disjoint_from_open_chain(const Path& p, const Clause& orig) {
    if (p.seq.size() < 2) return true;
    for (std::size_t i = p.seq.size() - 1; i-- > 0;) {
      for (Lit l : orig.lits)
        if (p.seq[i].has_var(l.var())) return false;
      if (p.links[i] == '*') break;
    }
    return true;
  }

  static Path extend(const Path& p, const Clause& orig, char sym) {
    Path q = p;
    if (!q.seq.empty()) q.links.push_back(sym);
    q.seq.push_back(orig);
    q.r2.push_back(false);
    q.chain_open = true;
    return q;
  }

  void check_links(const Path& p) {
    if (p.links.find("tp") != std::string::npos || p.links.find("tt") != std::string::npos)
      res_.stats.forbidden_substring = true;
  }

  PartialAssignment assign(std::initializer_list<std::pair<Lit, bool>> lits) const {
    PartialAssignment a(input_.num_vars());
    for (auto [l, v] : lits) a.set_true(v ? l : ~l);
    return a;
  }

  // Returns true when the search is over.
  bool node(Formula f, PartialAssignment asg, Path path, std::vector<Seed> seeds, Mode mode,
            std::size_t depth) {
    ++res_.stats.nodes;
    if (opts_.max_nodes != 0 && res_.stats.nodes > opts_.max_nodes)
      throw std::runtime_error("br_3: node budget exhausted");
    res_.stats.max_depth = std::max(res_.stats.max_depth, depth);
    for (;;) {
      Simplified s = simplify(f);
      f = std::move(s.formula);
      asg.merge(s.assignment);
      if (f.has_bottom()) {
        leaf(path);
        return false;
      }
      if (condition_phi(vector_of(path), n_, opts_.phi)) {
        leaf(path);
        note(depth, "terminate", path);
        finish_instance(path);
        return true;
      }
      if (f.count_of_size(3) == 0) {
        leaf(path);
        auto sol = solve_2sat(f);
        if (!sol) return false;
        sol->merge(asg);
        if (!input_.satisfied_by(*sol))
          throw std::logic_error("br_3: assignment fails verification");
        done_ = true;
        res_.status = BranchStatus::kSolved;
        res_.assignment = std::move(*sol);
        return true;
      }

      enum class Charge { kForced, kBundle, kNone } charge = Charge::kNone;
      if (mode == Mode::kBundleFallback) {
        charge = Charge::kBundle;
      } else if (forced_termination_due(path)) {
        charge = Charge::kForced;
      } else {
        if (auto cand = pick(f, seeds, path)) return branch(f, asg, path, *cand, depth);
        if (!path.seq.empty() && !path.r2.back()) charge = Charge::kForced;
      }

      // Fresh literal from the first 3-clause.
      const Clause* first3 = nullptr;
      for (const Clause& c : f.clauses())
        if (c.size() == 3) {
          first3 = &c;
          break;
        }
      const Lit x = first3->lits[0];
      Propagation p1 = propagate(f, assign({{x, true}}));
      Propagation p0 = propagate(f, assign({{x, false}}));
      if (p1.conflict && p0.conflict) {
        leaf(path);
        return false;
      }
      const auto idx = origin_index(f);
      if (p1.conflict || p0.conflict) {
        Propagation& q = p1.conflict ? p0 : p1;
        asg.merge(q.assignment);
        f = std::move(q.formula);
        continue;
      }
      const TbSet tb1 = tb_from(f, idx, x), tb0 = tb_from(f, idx, ~x);
      if (tb1.clauses.empty() || tb0.clauses.empty()) {
        ++res_.stats.fallback_autarks;
        Propagation& q = tb1.clauses.empty() ? p1 : p0;
        asg.merge(q.assignment);
        f = std::move(q.formula);
        continue;
      }
      Path child = path;
      child.chain_open = false;
      switch (charge) {
        case Charge::kForced:
          child.r2.back() = true;
          ++res_.stats.fallbacks_forced;
          break;
        case Charge::kBundle:
          ++res_.stats.fallbacks_bundle;
          break;
        case Charge::kNone:
          ++child.uncharged;
          ++res_.stats.fallbacks_uncharged;
          break;
      }
      note(depth, "fresh literal " + std::to_string(x.dimacs()), child);
      for (auto* q : {&p1, &p0}) {
        PartialAssignment a = asg;
        a.merge(q->assignment);
        std::vector<Seed> sd{{q == &p1 ? x : ~x, q == &p1 ? tb1.clauses : tb0.clauses}};
        if (node(std::move(q->formula), std::move(a), child, std::move(sd), Mode::kNormal,
                 depth + 1))
          return true;
      }
      return false;
    }
  }

  bool branch(const Formula& f, const PartialAssignment& asg, const Path& path,
              const Candidate& cand, std::size_t depth) {
    const Lit l1 = cand.current.lits[0], l2 = cand.current.lits[1];
    Path base = extend(path, cand.original, cand.symbol);
    check_links(base);
    const auto idx = origin_index(f);

    // Two-negative partner: a 3-clause containing ~l1 and ~l2.
    std::size_t partner = f.num_clauses();
    for (std::size_t i = 0; i < f.num_clauses(); ++i) {
      const Clause& c = f.clause(i);
      if (c.size() == 3 && c.contains(~l1) && c.contains(~l2)) {
        partner = i;
        break;
      }
    }

    if (partner != f.num_clauses()) {
      ++res_.stats.two_negative_bundles;
      Lit l3{};
      for (Lit l : f.clause(partner).lits)
        if (l != ~l1 && l != ~l2) l3 = l;
      const Clause& porig = input_.clause(static_cast<std::size_t>(f.origin(partner)));
      Path bundle = extend(base, porig, overlap_symbol(cand.original, porig));
      check_links(bundle);
      note(depth, "bundle " + lits_string(cand.current) + " + " + lits_string(porig), bundle);
      const TbSet tb3 = tb_from(f, idx, l3);
      static constexpr bool kPatterns[5][3] = {
          {false, true, false}, {true, false, false}, {false, true, true},
          {true, false, true},  {true, true, true}};
      for (const auto& pat : kPatterns) {
        Propagation p = propagate(f, assign({{l1, pat[0]}, {l2, pat[1]}, {l3, pat[2]}}));
        if (p.conflict) {
          leaf(bundle);
          continue;
        }
        PartialAssignment a = asg;
        a.merge(p.assignment);
        bool stop;
        if (pat[2]) {
          stop = node(std::move(p.formula), std::move(a), bundle, {{l3, tb3.clauses}},
                      Mode::kNormal, depth + 1);
        } else {
          Path closed = bundle;
          closed.chain_open = false;
          stop = node(std::move(p.formula), std::move(a), closed, {}, Mode::kBundleFallback,
                      depth + 1);
        }
        if (stop) return true;
      }
      return false;
    }

    note(depth, "branch " + lits_string(cand.current) + " sym=" + std::string(1, cand.symbol),
         base);
    const TbSet tb1 = tb_from(f, idx, l1), tb2 = tb_from(f, idx, l2);
    static constexpr bool kPatterns[3][2] = {{true, false}, {false, true}, {true, true}};
    for (const auto& pat : kPatterns) {
      Propagation p = propagate(f, assign({{l1, pat[0]}, {l2, pat[1]}}));
      if (p.conflict) {
        leaf(base);
        continue;
      }
      PartialAssignment a = asg;
      a.merge(p.assignment);
      std::vector<Seed> sd;
      if (pat[0]) sd.push_back({l1, tb1.clauses});
      if (pat[1]) sd.push_back({l2, tb2.clauses});
      if (node(std::move(p.formula), std::move(a), base, std::move(sd), Mode::kNormal,
               depth + 1))
        return true;
    }
    return false;
  }

  Formula input_;
  std::size_t n_;
  Br3Options opts_;
  long double f1_;
  Br3Result res_;
  bool done_ = false;
};

}  // namespace

Br3Result br_3(const Formula& f, const Br3Options& opts) {
  return Br3Search(f, opts).run();
}

}  // namespace detksat

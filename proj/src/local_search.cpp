#include "detksat/local_search.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <mutex>
#include <thread>

#include "detksat/characteristic.hpp"

namespace detksat {

Word assignment_to_word(const PartialAssignment& a) {
  Word w(a.num_vars());
  for (Var v = 1; v <= a.num_vars(); ++v)
    if (a.value(v) == true) w.set(v - 1, true);
  return w;
}

PartialAssignment word_to_assignment(const Word& w) {
  PartialAssignment a(w.width());
  for (Var v = 1; v <= w.width(); ++v) a.assign(v, w.get(v - 1));
  return a;
}

namespace {

// Clause list compiled for repeated ball searches.
class BallSearcher {
 public:
  explicit BallSearcher(const Formula& f) : n_(f.num_vars()), bottom_(f.has_bottom()) {
    for (const auto& c : f.clauses()) {
      std::vector<std::pair<std::size_t, bool>> lits;
      std::uint64_t pos = 0, neg = 0;
      for (Lit l : c.lits) {
        lits.emplace_back(l.var() - 1, l.positive());
        if (n_ <= 64) (l.positive() ? pos : neg) |= std::uint64_t{1} << (l.var() - 1);
      }
      lits_.push_back(std::move(lits));
      masks_.emplace_back(pos, neg);
    }
  }

  std::optional<Word> search(const Word& alpha, std::size_t r) const {
    if (bottom_) return std::nullopt;
    if (n_ <= 64) {
      std::uint64_t x = alpha.to_bits();
      if (!rec_mask(x, 0, r)) return std::nullopt;
      return Word::from_bits(n_, x);
    }
    std::vector<char> x(n_), flipped(n_, 0);
    for (std::size_t i = 0; i < n_; ++i) x[i] = alpha.get(i);
    if (!rec_vec(x, flipped, r)) return std::nullopt;
    Word out(n_);
    for (std::size_t i = 0; i < n_; ++i) out.set(i, x[i] != 0);
    return out;
  }

 private:
  bool rec_mask(std::uint64_t& x, std::uint64_t flipped, std::size_t r) const {
    std::size_t first = masks_.size();
    for (std::size_t i = 0; i < masks_.size(); ++i)
      if (((x & masks_[i].first) | (~x & masks_[i].second)) == 0) {
        first = i;
        break;
      }
    if (first == masks_.size()) return true;
    if (r == 0) return false;
    for (auto [v, pos] : lits_[first]) {
      const std::uint64_t bit = std::uint64_t{1} << v;
      if (flipped & bit) continue;
      x ^= bit;
      if (rec_mask(x, flipped | bit, r - 1)) return true;
      x ^= bit;
    }
    return false;
  }

  bool rec_vec(std::vector<char>& x, std::vector<char>& flipped, std::size_t r) const {
    const std::vector<std::pair<std::size_t, bool>>* first = nullptr;
    for (const auto& c : lits_) {
      bool sat = false;
      for (auto [v, pos] : c)
        if ((x[v] != 0) == pos) {
          sat = true;
          break;
        }
      if (!sat) {
        first = &c;
        break;
      }
    }
    if (first == nullptr) return true;
    if (r == 0) return false;
    for (auto [v, pos] : *first) {
      if (flipped[v]) continue;
      x[v] ^= 1;
      flipped[v] = 1;
      if (rec_vec(x, flipped, r - 1)) return true;
      flipped[v] = 0;
      x[v] ^= 1;
    }
    return false;
  }

  std::size_t n_;
  bool bottom_;
  std::vector<std::vector<std::pair<std::size_t, bool>>> lits_;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> masks_;
};

std::mutex g_lambda_mutex;
std::map<std::pair<std::string, unsigned>, Rational> g_lambda_memo;

Rational shape_lambda(const std::string& key, const SolutionSpace& A, unsigned k) {
  {
    std::lock_guard<std::mutex> lock(g_lambda_mutex);
    auto it = g_lambda_memo.find({key, k});
    if (it != g_lambda_memo.end()) return it->second;
  }
  Rational l = solve_characteristic(A, k).lambda;
  std::lock_guard<std::mutex> lock(g_lambda_mutex);
  g_lambda_memo.emplace(std::make_pair(key, k), l);
  return l;
}

}  // namespace

std::optional<Word> searchball(const Formula& f, const Word& alpha, std::size_t r) {
  if (alpha.width() != f.num_vars())
    throw PreconditionError("searchball: center width differs from the variable count");
  return BallSearcher(f).search(alpha, r);
}

std::optional<PartialAssignment> searchball(const Formula& f, const PartialAssignment& alpha,
                                            std::size_t r) {
  if (alpha.num_vars() != f.num_vars() || !alpha.is_total())
    throw PreconditionError("searchball: center must be a total assignment");
  auto w = searchball(f, assignment_to_word(alpha), r);
  if (!w) return std::nullopt;
  return word_to_assignment(*w);
}

PartialAssignment DlsSpace::to_assignment(const Word& w, std::size_t num_vars) const {
  PartialAssignment a(num_vars);
  for (std::size_t i = 0; i < coord_var.size(); ++i) a.assign(coord_var[i], w.get(i) != coord_flip[i]);
  return a.completed();
}

DlsSpace build_dls_space(const Formula& f, const Instance& inst, unsigned k) {
  validate_instance(inst);
  struct Group {
    std::string key;
    SolutionSpace space;
    Rational lambda;
    std::vector<std::pair<const Chain*, std::vector<bool>>> members;
  };
  std::vector<Group> groups;
  std::map<std::string, std::size_t> index;
  std::vector<char> in_chain(f.num_vars() + 1, 0);
  DlsSpace out;

  for (const Chain& ch : inst.chains) {
    for (Var v : ch.variables())
      if (v > f.num_vars()) throw PreconditionError("dls: instance variable out of range");
    const auto& vars = ch.variables();
    if (vars.size() > kSolutionSpaceMaxVars) {
      ++out.dissolved_chains;
      continue;
    }
    std::map<Var, std::size_t> pos;
    for (std::size_t i = 0; i < vars.size(); ++i) pos[vars[i]] = i;
    std::vector<bool> flip(vars.size(), false), seen(vars.size(), false);
    for (const auto& c : ch.clauses())
      for (Lit l : c.lits) {
        const std::size_t i = pos[l.var()];
        if (!seen[i]) {
          seen[i] = true;
          flip[i] = !l.positive();
        }
      }
    std::vector<Clause> norm;
    std::string key;
    for (const auto& c : ch.clauses()) {
      Clause nc;
      for (Lit l : c.lits) {
        const std::size_t i = pos[l.var()];
        nc.lits.emplace_back(static_cast<Var>(i + 1), l.positive() != flip[i]);
        key += std::to_string(nc.lits.back().dimacs()) + ' ';
      }
      key += "| ";
      norm.push_back(std::move(nc));
    }
    auto it = index.find(key);
    if (it == index.end()) {
      SolutionSpace A = solution_space(build_chain(norm, ch.k()));
      if (A.size() > kDlsMaxChainWords) {
        ++out.dissolved_chains;
        continue;
      }
      Rational lambda = shape_lambda(key, A, k);
      it = index.emplace(key, groups.size()).first;
      groups.push_back({key, std::move(A), lambda, {}});
    }
    groups[it->second].members.emplace_back(&ch, std::move(flip));
    for (Var v : vars) in_chain[v] = 1;
  }

  std::vector<Var> cube;
  for (Var v : f.occurring_vars())
    if (!in_chain[v]) cube.push_back(v);
  out.cube_width = cube.size();
  if (!cube.empty()) out.space.factors.push_back(SpaceFactor::cube(cube.size()));
  for (Var v : cube) {
    out.coord_var.push_back(v);
    out.coord_flip.push_back(false);
  }
  for (auto& g : groups) {
    out.space.factors.push_back(SpaceFactor::power(g.space, g.members.size()));
    out.lambdas.push_back(g.lambda);
    for (const auto& [ch, flip] : g.members)
      for (std::size_t i = 0; i < ch->variables().size(); ++i) {
        out.coord_var.push_back(ch->variables()[i]);
        out.coord_flip.push_back(flip[i]);
      }
  }
  return out;
}

DlsResult dls(const Formula& f, const Instance& inst, unsigned k, unsigned threads) {
  if (k == 0) k = static_cast<unsigned>(std::max<std::size_t>(3, f.width()));
  DlsResult res;
  if (f.has_bottom()) return res;
  const DlsSpace ds = build_dls_space(f, inst, k);
  const ProductCode code = build_generalized_code(ds.space, Rational(1, k), ds.lambdas, k);
  auto& st = res.stats;
  st.cube_width = ds.cube_width;
  st.chain_groups = ds.lambdas.size();
  st.dissolved_chains = ds.dissolved_chains;
  st.cube_radius = (ds.cube_width + k - 1) / k;
  st.max_radius = code.max_radius();
  st.code_centers = code.total_centers();
  for (std::size_t r = code.min_radius(); r <= code.max_radius(); ++r)
    if (auto c = code.count_at(r)) st.code_sizes.emplace_back(r, c);

  const BallSearcher searcher(f);
  const std::size_t n = f.num_vars();
  auto run = [&](const Word& center, std::size_t r) -> std::optional<Word> {
    return searcher.search(assignment_to_word(ds.to_assignment(center, n)), r);
  };

  if (threads <= 1) {
    code.for_each([&](const Word& c, std::size_t r) {
      ++st.balls_searched;
      if (auto w = run(c, r)) {
        res.assignment = word_to_assignment(*w);
        return true;
      }
      return false;
    });
    return res;
  }

  constexpr std::size_t kBatch = 256;
  std::vector<std::pair<Word, std::size_t>> batch;
  auto flush = [&]() -> bool {
    std::vector<std::optional<Word>> hits(batch.size());
    std::atomic<std::size_t> next{0}, best{batch.size()};
    auto worker = [&]() {
      for (std::size_t i; (i = next.fetch_add(1)) < batch.size();) {
        if (i > best.load()) break;
        hits[i] = run(batch[i].first, batch[i].second);
        if (hits[i]) {
          std::size_t b = best.load();
          while (i < b && !best.compare_exchange_weak(b, i)) {
          }
        }
      }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    const std::size_t b = best.load();
    if (b < batch.size()) {
      st.balls_searched += b + 1;
      res.assignment = word_to_assignment(*hits[b]);
      return true;
    }
    st.balls_searched += batch.size();
    batch.clear();
    return false;
  };
  const bool stopped = code.for_each([&](const Word& c, std::size_t r) {
    batch.emplace_back(c, r);
    return batch.size() == kBatch && flush();
  });
  if (!stopped && !batch.empty()) flush();
  return res;
}

}  // namespace detksat

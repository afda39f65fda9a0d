#include "detksat/chain.hpp"

#include <algorithm>
#include <cmath>

namespace detksat {

namespace {

bool share_var(const Clause& a, const Clause& b) {
  for (Lit l : a.lits)
    if (b.has_var(l.var())) return true;
  return false;
}

}  // namespace

Chain build_chain(std::vector<Clause> clauses, std::size_t k) {
  if (clauses.empty()) throw ChainError("a chain needs at least one clause");
  for (std::size_t i = 0; i < clauses.size(); ++i)
    if (clauses[i].bottom || clauses[i].size() != k)
      throw ChainError("clause " + std::to_string(i) + " is not a " +
                           std::to_string(k) + "-clause",
                       i);
  for (std::size_t i = 0; i < clauses.size(); ++i) {
    for (std::size_t j = i + 1; j < clauses.size(); ++j) {
      const bool overlap = share_var(clauses[i], clauses[j]);
      if (j == i + 1 && !overlap)
        throw ChainError("adjacent clauses " + std::to_string(i) + " and " +
                             std::to_string(j) + " are independent",
                         i, j);
      if (j > i + 1 && overlap)
        throw ChainError("non-adjacent clauses " + std::to_string(i) + " and " +
                             std::to_string(j) + " share a variable",
                         i, j);
    }
  }
  Chain c;
  c.k_ = k;
  for (const auto& cl : clauses)
    for (Lit l : cl.lits)
      if (std::find(c.vars_.begin(), c.vars_.end(), l.var()) == c.vars_.end())
        c.vars_.push_back(l.var());
  c.clauses_ = std::move(clauses);
  return c;
}

std::vector<Var> Instance::variables() const {
  std::vector<Var> out;
  for (const auto& ch : chains)
    out.insert(out.end(), ch.variables().begin(), ch.variables().end());
  std::sort(out.begin(), out.end());
  return out;
}

void validate_instance(const Instance& inst) {
  std::map<Var, std::size_t> owner;
  for (std::size_t i = 0; i < inst.chains.size(); ++i) {
    for (Var v : inst.chains[i].variables()) {
      auto [it, fresh] = owner.emplace(v, i);
      if (!fresh)
        throw ChainError("chains " + std::to_string(it->second) + " and " +
                             std::to_string(i) + " share variable " +
                             std::to_string(v),
                         it->second, i);
    }
  }
}

bool SolutionSpace::contains(const Word& w) const {
  return std::binary_search(words.begin(), words.end(), w,
                            [](const Word& a, const Word& b) {
                              return a.to_bits() < b.to_bits();
                            });
}

SolutionSpace solution_space(const Chain& chain) {
  SolutionSpace s;
  s.order = chain.variables();
  const std::size_t w = s.order.size();
  if (w > kSolutionSpaceMaxVars)
    throw PreconditionError("solution_space: chain has " + std::to_string(w) +
                            " variables, guard is " +
                            std::to_string(kSolutionSpaceMaxVars));
  std::vector<std::pair<std::uint64_t, std::uint64_t>> masks;
  for (const auto& c : chain.clauses()) {
    std::uint64_t pos = 0, neg = 0;
    for (Lit l : c.lits) {
      const auto i = static_cast<std::size_t>(
          std::find(s.order.begin(), s.order.end(), l.var()) - s.order.begin());
      (l.positive() ? pos : neg) |= std::uint64_t{1} << i;
    }
    masks.emplace_back(pos, neg);
  }
  const std::uint64_t total = std::uint64_t{1} << w;
  for (std::uint64_t x = 0; x < total; ++x) {
    bool ok = true;
    for (auto [pos, neg] : masks)
      if (((x & pos) | (~x & neg)) == 0) {
        ok = false;
        break;
      }
    if (ok) s.words.push_back(Word::from_bits(w, x));
  }
  return s;
}

char overlap_symbol(const Clause& a, const Clause& b) {
  std::size_t same = 0, opposite = 0;
  for (Lit l : a.lits) {
    if (b.contains(l))
      ++same;
    else if (b.contains(~l))
      ++opposite;
  }
  if (same == 0 && opposite == 0) return '*';
  if (same + opposite == 1) return same == 1 ? 'p' : 'n';
  if (same == 0 && opposite == 2) return 't';
  throw ChainError("overlap with " + std::to_string(same) +
                   " equal and " + std::to_string(opposite) +
                   " opposite shared literals has no type");
}

std::string zeta(const std::vector<Clause>& seq) {
  std::string z;
  for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
    try {
      z.push_back(overlap_symbol(seq[i], seq[i + 1]));
    } catch (const ChainError& e) {
      throw ChainError(std::string(e.what()) + " (clauses " +
                           std::to_string(i) + ", " + std::to_string(i + 1) + ")",
                       i, i + 1);
    }
  }
  if (!seq.empty()) z.push_back('*');
  return z;
}

Instance transform(const std::vector<Clause>& seq) {
  const std::string z = zeta(seq);
  Instance inst;
  std::vector<Clause> cur;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    cur.push_back(seq[i]);
    if (z[i] == '*') {
      const std::size_t k = cur.front().size();
      inst.chains.push_back(build_chain(std::move(cur), k));
      cur.clear();
    }
  }
  validate_instance(inst);
  return inst;
}

bool is_chain_type(std::string_view z) {
  if (z.empty() || z.back() != '*') return false;
  for (std::size_t i = 0; i + 1 < z.size(); ++i)
    if (z[i] != 'n' && z[i] != 'p' && z[i] != 't') return false;
  return true;
}

std::string canonical_zeta(std::string_view z) {
  if (!is_chain_type(z))
    throw ChainError("not a chain type string: '" + std::string(z) + "'");
  std::string body(z.substr(0, z.size() - 1));
  std::string rev(body.rbegin(), body.rend());
  return std::min(body, rev) + "*";
}

Rational branch_number(std::string_view z, bool r2) {
  Rational b = r2 ? 2 : 1;
  for (char c : z) {
    switch (c) {
      case '*':
      case 'n': b *= 3; break;
      case 'p': b *= 2; break;
      case 't': b *= Rational(7, 3); break;
      default: throw ChainError("bad type symbol '" + std::string(1, c) + "'");
    }
  }
  return b;
}

std::size_t variable_count(std::string_view z) {
  if (!is_chain_type(z))
    throw ChainError("not a chain type string: '" + std::string(z) + "'");
  std::size_t eta = 3;
  for (std::size_t i = 0; i + 1 < z.size(); ++i) eta += z[i] == 't' ? 1 : 2;
  return eta;
}

Chain realize_chain(std::string_view z) {
  if (!is_chain_type(z))
    throw ChainError("not a chain type string: '" + std::string(z) + "'");
  Var next = 1;
  auto fresh = [&next] { return Lit(next++, true); };
  std::vector<Clause> clauses;
  const Lit a = fresh(), b = fresh(), c = fresh();
  clauses.push_back(Clause{a, b, c});
  std::vector<Lit> open = {b, c};
  for (std::size_t i = 0; i + 1 < z.size(); ++i) {
    if (z[i] == 't') {
      if (open.size() != 2) throw ChainError("'t' cannot follow 't'");
      const Lit x = fresh();
      clauses.push_back(Clause{~open[0], ~open[1], x});
      open = {x};
    } else {
      const Lit shared = z[i] == 'n' ? ~open.back() : open.back();
      const Lit x = fresh(), y = fresh();
      clauses.push_back(Clause{shared, x, y});
      open = {x, y};
    }
  }
  return build_chain(std::move(clauses), 3);
}

long double f_value(const Rational& b, std::size_t eta, const Rational& lambda) {
  const long double lb = log2(b);
  return lb / (lb + static_cast<long double>(eta) * log2(Rational(4, 3)) +
               log2(lambda));
}

}  // namespace detksat

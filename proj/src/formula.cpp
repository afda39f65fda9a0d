#include "detksat/formula.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

namespace detksat {

bool Clause::contains(Lit l) const {
  return std::find(lits.begin(), lits.end(), l) != lits.end();
}

bool Clause::has_var(Var v) const { return lit_of(v).has_value(); }

std::optional<Lit> Clause::lit_of(Var v) const {
  for (Lit l : lits)
    if (l.var() == v) return l;
  return std::nullopt;
}

void PartialAssignment::assign(Var v, bool b) {
  if (v == 0 || v >= vals_.size())
    throw FormulaError("variable " + std::to_string(v) + " out of range");
  vals_[v] = b ? 1 : 0;
}

void PartialAssignment::merge(const PartialAssignment& other) {
  for (Var v = 1; v <= other.num_vars(); ++v)
    if (auto b = other.value(v)) assign(v, *b);
}

std::size_t PartialAssignment::assigned_count() const {
  if (vals_.empty()) return 0;
  return static_cast<std::size_t>(
      std::count_if(vals_.begin() + 1, vals_.end(),
                    [](std::int8_t x) { return x != kUnset; }));
}

PartialAssignment PartialAssignment::completed() const {
  PartialAssignment out = *this;
  for (Var v = 1; v <= num_vars(); ++v)
    if (!assigned(v)) out.assign(v, false);
  return out;
}

std::string PartialAssignment::to_string() const {
  std::string s;
  for (Var v = 1; v <= num_vars(); ++v) {
    auto b = value(v);
    s.push_back(!b ? '-' : (*b ? '1' : '0'));
  }
  return s;
}

Word Word::from_string(std::string_view bits) {
  Word w(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] != '0' && bits[i] != '1')
      throw std::invalid_argument("word must be a 0/1 string");
    w.set(i, bits[i] == '1');
  }
  return w;
}

Word Word::from_bits(std::size_t width, std::uint64_t bits) {
  if (width > 64) throw std::invalid_argument("from_bits: width > 64");
  Word w(width);
  if (width > 0)
    w.blocks_[0] = width == 64 ? bits : bits & ((std::uint64_t{1} << width) - 1);
  return w;
}

void Word::set(std::size_t i, bool b) {
  const std::uint64_t m = std::uint64_t{1} << (i % 64);
  if (b)
    blocks_[i / 64] |= m;
  else
    blocks_[i / 64] &= ~m;
}

std::size_t Word::weight() const {
  std::size_t w = 0;
  for (auto b : blocks_) w += static_cast<std::size_t>(std::popcount(b));
  return w;
}

Word Word::concat(const Word& tail) const {
  Word out(width_ + tail.width_);
  std::copy(blocks_.begin(), blocks_.end(), out.blocks_.begin());
  const std::size_t shift = width_ % 64, base = width_ / 64;
  for (std::size_t b = 0; b < tail.blocks_.size(); ++b) {
    const std::uint64_t v = tail.blocks_[b];
    out.blocks_[base + b] |= v << shift;
    if (shift != 0 && base + b + 1 < out.blocks_.size())
      out.blocks_[base + b + 1] |= v >> (64 - shift);
  }
  return out;
}

Word Word::slice(std::size_t offset, std::size_t len) const {
  if (offset + len > width_) throw std::out_of_range("Word::slice out of range");
  Word out(len);
  const std::size_t shift = offset % 64, base = offset / 64;
  for (std::size_t b = 0; b < out.blocks_.size(); ++b) {
    std::uint64_t v = blocks_[base + b] >> shift;
    if (shift != 0 && base + b + 1 < blocks_.size()) v |= blocks_[base + b + 1] << (64 - shift);
    out.blocks_[b] = v;
  }
  if (len % 64 != 0) out.blocks_.back() &= (std::uint64_t{1} << (len % 64)) - 1;
  return out;
}

std::string Word::to_string() const {
  std::string s(width_, '0');
  for (std::size_t i = 0; i < width_; ++i)
    if (get(i)) s[i] = '1';
  return s;
}

std::size_t hamming_distance(const Word& a, const Word& b) {
  if (a.width() != b.width())
    throw std::invalid_argument("hamming_distance: width mismatch");
  std::size_t d = 0;
  for (std::size_t i = 0; i < a.blocks().size(); ++i)
    d += static_cast<std::size_t>(std::popcount(a.blocks()[i] ^ b.blocks()[i]));
  return d;
}

ParseError::ParseError(std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what),
      line_(line) {}

namespace {

void validate_clause(const Clause& c, std::size_t n) {
  if (c.bottom && !c.lits.empty())
    throw FormulaError("bottom clause must have no literals");
  for (std::size_t i = 0; i < c.lits.size(); ++i) {
    const Var v = c.lits[i].var();
    if (v == 0 || v > n)
      throw FormulaError("variable " + std::to_string(v) + " out of range 1.." +
                         std::to_string(n));
    for (std::size_t j = 0; j < i; ++j)
      if (c.lits[j].var() == v)
        throw FormulaError("variable " + std::to_string(v) +
                           " occurs twice in a clause");
  }
}

}  // namespace

Formula::Formula(std::size_t num_vars, std::vector<Clause> clauses)
    : num_vars_(num_vars) {
  for (std::size_t i = 0; i < clauses.size(); ++i)
    add_clause(std::move(clauses[i]), static_cast<std::int64_t>(i));
}

void Formula::add_clause(Clause c, std::int64_t origin) {
  validate_clause(c, num_vars_);
  clauses_.push_back(std::move(c));
  origins_.push_back(origin);
}

void Formula::replace_clause(std::size_t i, Clause c) {
  validate_clause(c, num_vars_);
  clauses_.at(i) = std::move(c);
}

std::size_t Formula::width() const {
  std::size_t w = 0;
  for (const auto& c : clauses_) w = std::max(w, c.size());
  return w;
}

bool Formula::has_bottom() const {
  return std::any_of(clauses_.begin(), clauses_.end(),
                     [](const Clause& c) { return c.bottom || c.lits.empty(); });
}

std::size_t Formula::count_of_size(std::size_t size) const {
  return static_cast<std::size_t>(
      std::count_if(clauses_.begin(), clauses_.end(),
                    [size](const Clause& c) { return c.size() == size; }));
}

std::vector<Var> Formula::occurring_vars() const {
  std::vector<bool> seen(num_vars_ + 1, false);
  for (const auto& c : clauses_)
    for (Lit l : c.lits) seen[l.var()] = true;
  std::vector<Var> out;
  for (Var v = 1; v <= num_vars_; ++v)
    if (seen[v]) out.push_back(v);
  return out;
}

bool Formula::satisfied_by(const PartialAssignment& a) const {
  for (const auto& c : clauses_) {
    bool sat = false;
    for (Lit l : c.lits)
      if (a.value(l) == true) {
        sat = true;
        break;
      }
    if (!sat) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// DIMACS

namespace {

struct Tokenizer {
  std::istream& in;
  std::size_t line = 0;
  std::string buf{};
  std::size_t pos = 0;
  bool stop = false;

  bool next_line() {
    if (stop || !std::getline(in, buf)) return false;
    ++line;
    pos = 0;
    if (!buf.empty() && buf.back() == '\r') buf.pop_back();
    return true;
  }
};

std::int64_t parse_int(std::string_view tok, std::size_t line) {
  std::int64_t v = 0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || p != tok.data() + tok.size())
    throw ParseError(line, "expected integer, got '" + std::string(tok) + "'");
  return v;
}

std::vector<std::string_view> split(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

}  // namespace

Formula parse_dimacs(std::istream& in) {
  Tokenizer tz{in};
  std::optional<Formula> f;
  std::size_t expected = 0;
  std::vector<Lit> cur;
  std::size_t cur_line = 0;

  while (tz.next_line()) {
    std::string_view s = tz.buf;
    auto toks = split(s);
    if (toks.empty()) continue;
    if (toks[0] == "c" || toks[0][0] == 'c') continue;
    if (toks[0][0] == '%') break;
    if (toks[0] == "p") {
      if (f) throw ParseError(tz.line, "duplicate header");
      if (toks.size() != 4 || toks[1] != "cnf")
        throw ParseError(tz.line, "malformed header, expected 'p cnf <n> <m>'");
      const auto n = parse_int(toks[2], tz.line);
      const auto m = parse_int(toks[3], tz.line);
      if (n < 0 || m < 0) throw ParseError(tz.line, "malformed header counts");
      f.emplace(static_cast<std::size_t>(n));
      expected = static_cast<std::size_t>(m);
      continue;
    }
    if (!f) throw ParseError(tz.line, "clause before header");
    for (auto tok : toks) {
      const auto v = parse_int(tok, tz.line);
      if (cur.empty() && cur_line == 0) cur_line = tz.line;
      if (v == 0) {
        // Drop duplicate literals, reject tautologies.
        std::vector<Lit> lits;
        for (Lit l : cur) {
          if (std::find(lits.begin(), lits.end(), ~l) != lits.end())
            throw ParseError(cur_line, "tautological clause");
          if (std::find(lits.begin(), lits.end(), l) == lits.end())
            lits.push_back(l);
        }
        Clause c(std::move(lits));
        if (c.lits.empty()) c.bottom = true;
        f->add_clause(std::move(c), static_cast<std::int64_t>(f->num_clauses()));
        cur.clear();
        cur_line = 0;
        continue;
      }
      if (static_cast<std::uint64_t>(v < 0 ? -v : v) > f->num_vars())
        throw ParseError(tz.line, "variable index " + std::to_string(v < 0 ? -v : v) +
                                      " exceeds n=" + std::to_string(f->num_vars()));
      cur.push_back(Lit::from_dimacs(static_cast<std::int32_t>(v)));
    }
  }
  if (!f) throw ParseError(tz.line, "missing header");
  if (!cur.empty()) throw ParseError(cur_line, "unterminated clause");
  if (f->num_clauses() != expected)
    throw ParseError(tz.line, "header declares " + std::to_string(expected) +
                                  " clauses, found " +
                                  std::to_string(f->num_clauses()));
  return std::move(*f);
}

Formula parse_dimacs(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_dimacs(in);
}

std::string to_dimacs(const Formula& f) {
  std::ostringstream os;
  os << "p cnf " << f.num_vars() << ' ' << f.num_clauses() << '\n';
  for (const auto& c : f.clauses()) {
    for (Lit l : c.lits) os << l.dimacs() << ' ';
    os << "0\n";
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Restriction and propagation

Formula restrict(const Formula& f, const PartialAssignment& alpha) {
  Formula out(f.num_vars());
  for (std::size_t i = 0; i < f.num_clauses(); ++i) {
    const Clause& c = f.clause(i);
    if (c.bottom) {
      out.add_clause(c, f.origin(i));
      continue;
    }
    bool sat = false;
    Clause r;
    for (Lit l : c.lits) {
      auto v = alpha.value(l);
      if (!v) {
        r.lits.push_back(l);
      } else if (*v) {
        sat = true;
        break;
      }
    }
    if (sat) continue;
    if (r.lits.empty()) r.bottom = true;
    out.add_clause(std::move(r), f.origin(i));
  }
  return out;
}

Propagation propagate(const Formula& f, const PartialAssignment& seed) {
  Propagation p{restrict(f, seed), seed, false};
  if (p.assignment.num_vars() != f.num_vars())
    p.assignment = PartialAssignment(f.num_vars());
  for (;;) {
    if (p.formula.has_bottom()) {
      p.conflict = true;
      return p;
    }
    const auto& cs = p.formula.clauses();
    auto it = std::find_if(cs.begin(), cs.end(),
                           [](const Clause& c) { return c.size() == 1; });
    if (it == cs.end()) return p;
    PartialAssignment unit(f.num_vars());
    unit.set_true(it->lits[0]);
    p.assignment.set_true(it->lits[0]);
    p.formula = restrict(p.formula, unit);
  }
}

Propagation propagate(const Formula& f) {
  return propagate(f, PartialAssignment(f.num_vars()));
}

Formula unit_propagate(const Formula& f) { return propagate(f).formula; }

// ---------------------------------------------------------------------------
// 2-SAT via implication graph SCCs (iterative Tarjan).

std::optional<PartialAssignment> solve_2sat(const Formula& f) {
  if (f.has_bottom())
    throw PreconditionError("solve_2sat: formula contains bottom");
  if (f.width() > 2)
    throw PreconditionError("solve_2sat: formula has a clause wider than 2");

  const std::size_t n = f.num_vars();
  // Node 2(v-1) is v, 2(v-1)+1 is ~v.
  auto node = [](Lit l) {
    return 2 * (static_cast<std::size_t>(l.var()) - 1) + (l.positive() ? 0 : 1);
  };
  const std::size_t nodes = 2 * n;
  std::vector<std::vector<std::size_t>> adj(nodes);
  for (const auto& c : f.clauses()) {
    if (c.size() == 1) {
      adj[node(~c.lits[0])].push_back(node(c.lits[0]));
    } else {
      adj[node(~c.lits[0])].push_back(node(c.lits[1]));
      adj[node(~c.lits[1])].push_back(node(c.lits[0]));
    }
  }

  constexpr std::size_t kUnvisited = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(nodes, kUnvisited), low(nodes), comp(nodes, kUnvisited);
  std::vector<bool> on_stack(nodes, false);
  std::vector<std::size_t> stack;
  std::vector<std::pair<std::size_t, std::size_t>> call;
  std::size_t counter = 0, comps = 0;

  for (std::size_t s = 0; s < nodes; ++s) {
    if (index[s] != kUnvisited) continue;
    call.emplace_back(s, 0);
    while (!call.empty()) {
      auto& [v, edge] = call.back();
      if (edge == 0 && index[v] == kUnvisited) {
        index[v] = low[v] = counter++;
        stack.push_back(v);
        on_stack[v] = true;
      }
      if (edge < adj[v].size()) {
        const std::size_t w = adj[v][edge++];
        if (index[w] == kUnvisited) {
          call.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp[w] = comps;
        } while (w != v);
        ++comps;
      }
      const std::size_t done = v;
      call.pop_back();
      if (!call.empty()) {
        auto& parent = call.back().first;
        low[parent] = std::min(low[parent], low[done]);
      }
    }
  }

  std::vector<bool> occurs(n + 1, false);
  for (const auto& c : f.clauses())
    for (Lit l : c.lits) occurs[l.var()] = true;

  PartialAssignment out(n);
  for (Var v = 1; v <= n; ++v) {
    const std::size_t pos = 2 * (v - 1), neg = pos + 1;
    if (comp[pos] == comp[neg]) return std::nullopt;
    // Tarjan numbers components in reverse topological order.
    out.assign(v, occurs[v] && comp[pos] < comp[neg]);
  }
  return out;
}

std::optional<PartialAssignment> brute_force_sat(const Formula& f) {
  const std::size_t n = f.num_vars();
  if (n > kBruteForceMaxVars)
    throw PreconditionError("brute_force_sat: n=" + std::to_string(n) +
                            " exceeds guard " + std::to_string(kBruteForceMaxVars));
  if (f.has_bottom()) return std::nullopt;
  // x_v is bit (n - v) so that integer order is lexicographic on x1..xn.
  struct Masks {
    std::uint64_t pos = 0, neg = 0;
  };
  std::vector<Masks> masks;
  masks.reserve(f.num_clauses());
  for (const auto& c : f.clauses()) {
    Masks m;
    for (Lit l : c.lits) {
      const std::uint64_t bit = std::uint64_t{1} << (n - l.var());
      (l.positive() ? m.pos : m.neg) |= bit;
    }
    masks.push_back(m);
  }
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t x = 0; x < total; ++x) {
    bool ok = true;
    for (const auto& m : masks)
      if (((x & m.pos) | (~x & m.neg)) == 0) {
        ok = false;
        break;
      }
    if (!ok) continue;
    PartialAssignment a(n);
    for (Var v = 1; v <= n; ++v) a.assign(v, (x >> (n - v)) & 1U);
    return a;
  }
  return std::nullopt;
}

std::ostream& operator<<(std::ostream& os, const Clause& c) {
  if (c.bottom || c.lits.empty()) return os << "⊥";
  os << '(';
  for (std::size_t i = 0; i < c.lits.size(); ++i) {
    if (i) os << " v ";
    if (!c.lits[i].positive()) os << '-';
    os << 'x' << c.lits[i].var();
  }
  return os << ')';
}

std::ostream& operator<<(std::ostream& os, const Formula& f) {
  os << '{';
  for (std::size_t i = 0; i < f.num_clauses(); ++i) {
    if (i) os << ", ";
    os << f.clause(i);
  }
  return os << '}';
}

}  // namespace detksat

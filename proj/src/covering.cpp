#include "detksat/covering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <sstream>

namespace detksat {

std::size_t CodeFamily::num_centers() const {
  std::size_t n = 0;
  for (const auto& [r, cs] : entries) n += cs.size();
  return n;
}

std::size_t CodeFamily::min_radius() const {
  return entries.empty() ? 0 : entries.begin()->first;
}

std::size_t CodeFamily::max_radius() const {
  return entries.empty() ? 0 : entries.rbegin()->first;
}

namespace {

// base^e capped at `cap`.
std::uint64_t capped_pow(unsigned base, std::size_t e, std::uint64_t cap) {
  std::uint64_t v = 1;
  for (std::size_t i = 0; i < e && v <= cap; ++i) v *= base;
  return std::min(v, cap + 1);
}

struct Candidate {
  std::uint64_t gain;
  std::size_t r;
  std::size_t idx;
  std::size_t stamp;
};

}  // namespace

CodeFamily greedy_cover(const std::vector<Word>& universe,
                        const std::vector<std::size_t>& radii_in, unsigned cost_base) {
  if (universe.size() > kGreedyMaxWords)
    throw PreconditionError("greedy_cover: universe has " +
                            std::to_string(universe.size()) + " words, limit " +
                            std::to_string(kGreedyMaxWords));
  if (cost_base == 0) throw PreconditionError("greedy_cover: cost_base must be positive");
  CodeFamily fam;
  if (universe.empty()) return fam;
  const std::size_t n = universe.size();
  const std::size_t width = universe.front().width();
  fam.width = width;
  for (const Word& w : universe)
    if (w.width() != width) throw PreconditionError("greedy_cover: mixed widths");

  std::vector<std::size_t> radii(radii_in);
  std::sort(radii.begin(), radii.end());
  radii.erase(std::unique(radii.begin(), radii.end()), radii.end());
  if (radii.empty()) throw PreconditionError("greedy_cover: no radii");
  // Radii past the width cover nothing new and cost more.
  while (radii.size() > 1 && radii[radii.size() - 2] >= width) radii.pop_back();

  std::vector<std::uint16_t> dist(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    dist[i * n + i] = 0;
    for (std::size_t j = i + 1; j < n; ++j)
      dist[i * n + j] = dist[j * n + i] =
          static_cast<std::uint16_t>(hamming_distance(universe[i], universe[j]));
  }

  std::vector<std::size_t> rank(n);
  {
    std::vector<std::string> s(n);
    for (std::size_t i = 0; i < n; ++i) s[i] = universe[i].to_string();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return s[a] < s[b]; });
    for (std::size_t i = 0; i < n; ++i) rank[order[i]] = i;
  }

  constexpr std::uint64_t kCap = std::uint64_t{1} << 32;
  // True when a scores strictly better than b.
  auto better = [&](const Candidate& a, const Candidate& b) {
    if (a.r != b.r) {
      const bool a_small = a.r < b.r;
      const std::uint64_t f =
          capped_pow(cost_base, a_small ? b.r - a.r : a.r - b.r, kCap);
      // Compare gain_a / base^ra with gain_b / base^rb.
      const unsigned __int128 lhs =
          static_cast<unsigned __int128>(a.gain) * (a_small ? f : 1);
      const unsigned __int128 rhs =
          static_cast<unsigned __int128>(b.gain) * (a_small ? 1 : f);
      if (lhs != rhs) return lhs > rhs;
      return a_small;
    }
    if (a.gain != b.gain) return a.gain > b.gain;
    return rank[a.idx] < rank[b.idx];
  };
  auto cmp = [&](const Candidate& a, const Candidate& b) { return better(b, a); };
  std::priority_queue<Candidate, std::vector<Candidate>, decltype(cmp)> pq(cmp);

  std::vector<char> covered(n, 0);
  std::size_t remaining = n;
  auto gain_of = [&](std::size_t idx, std::size_t r) {
    std::uint64_t g = 0;
    const std::uint16_t* row = &dist[idx * n];
    for (std::size_t j = 0; j < n; ++j)
      if (!covered[j] && row[j] <= r) ++g;
    return g;
  };
  for (std::size_t r : radii)
    for (std::size_t i = 0; i < n; ++i) pq.push({gain_of(i, r), r, i, 0});

  std::size_t stamp = 0;
  while (remaining > 0 && !pq.empty()) {
    Candidate c = pq.top();
    pq.pop();
    if (c.stamp != stamp) {
      c.gain = gain_of(c.idx, c.r);
      c.stamp = stamp;
      if (c.gain > 0) pq.push(c);
      continue;
    }
    if (c.gain == 0) continue;
    fam.entries[c.r].push_back(universe[c.idx]);
    const std::uint16_t* row = &dist[c.idx * n];
    for (std::size_t j = 0; j < n; ++j)
      if (!covered[j] && row[j] <= c.r) {
        covered[j] = 1;
        --remaining;
      }
    ++stamp;
  }
  if (remaining != 0) throw std::logic_error("greedy_cover: universe not covered");
  return fam;
}

CubeCode cover_cube_blocks(std::size_t width, std::size_t radius) {
  CubeCode cc;
  cc.width = width;
  cc.radius = std::min(radius, width);
  if (width == 0) return cc;
  const std::size_t nb = (width + kCubeBlockBits - 1) / kCubeBlockBits;
  std::vector<std::size_t> widths(nb, width / nb);
  for (std::size_t i = 0; i < width % nb; ++i) ++widths[i];
  std::vector<std::size_t> radii(nb);
  std::size_t assigned = 0;
  for (std::size_t i = 0; i < nb; ++i) {
    radii[i] = cc.radius * widths[i] / width;
    assigned += radii[i];
  }
  for (std::size_t i = 0; assigned < cc.radius; i = (i + 1) % nb)
    if (radii[i] < widths[i]) {
      ++radii[i];
      ++assigned;
    }
  for (std::size_t i = 0; i < nb; ++i) {
    CodeFamily f;
    f.width = widths[i];
    if (radii[i] >= widths[i]) {
      f.entries[radii[i]].push_back(Word(widths[i]));
    } else {
      std::vector<Word> all;
      all.reserve(std::size_t{1} << widths[i]);
      for (std::uint64_t v = 0; v < (std::uint64_t{1} << widths[i]); ++v)
        all.push_back(Word::from_bits(widths[i], v));
      f = greedy_cover(all, {radii[i]}, 1);
    }
    cc.blocks.push_back(std::move(f));
  }
  return cc;
}

CodeFamily cover_cube(std::size_t width, std::size_t radius) {
  CubeCode cc = cover_cube_blocks(width, radius);
  if (cc.blocks.empty()) {
    CodeFamily f;
    f.entries[0].push_back(Word(0));
    return f;
  }
  if (cc.blocks.size() == 1) return cc.blocks.front();
  return product_code(cc.blocks);
}

ProductCode::ProductCode(std::vector<CodeFamily> factors) : factors_(std::move(factors)) {
  for (const auto& f : factors_)
    if (f.entries.empty()) throw PreconditionError("ProductCode: empty factor");
}

std::size_t ProductCode::width() const {
  std::size_t w = 0;
  for (const auto& f : factors_) w += f.width;
  return w;
}

std::size_t ProductCode::min_radius() const {
  std::size_t r = 0;
  for (const auto& f : factors_) r += f.min_radius();
  return r;
}

std::size_t ProductCode::max_radius() const {
  std::size_t r = 0;
  for (const auto& f : factors_) r += f.max_radius();
  return r;
}

namespace {

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  return a > std::numeric_limits<std::uint64_t>::max() - b
             ? std::numeric_limits<std::uint64_t>::max()
             : a + b;
}

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a)
    return std::numeric_limits<std::uint64_t>::max();
  return a * b;
}

}  // namespace

std::uint64_t ProductCode::count_at(std::size_t r) const {
  std::vector<std::uint64_t> dp{1};
  for (const auto& f : factors_) {
    std::vector<std::uint64_t> next(dp.size() + f.max_radius(), 0);
    for (std::size_t s = 0; s < dp.size(); ++s) {
      if (dp[s] == 0) continue;
      for (const auto& [fr, cs] : f.entries)
        next[s + fr] = sat_add(next[s + fr], sat_mul(dp[s], cs.size()));
    }
    dp = std::move(next);
  }
  return r < dp.size() ? dp[r] : 0;
}

std::uint64_t ProductCode::total_centers() const {
  std::uint64_t t = 1;
  for (const auto& f : factors_) t = sat_mul(t, f.num_centers());
  return t;
}

bool ProductCode::for_each(const std::function<bool(const Word&, std::size_t)>& fn) const {
  const std::size_t m = factors_.size();
  if (m == 0) return fn(Word(0), 0);
  // Smallest radius sum achievable by factors i..m-1, and largest.
  std::vector<std::size_t> lo(m + 1, 0), hi(m + 1, 0);
  for (std::size_t i = m; i-- > 0;) {
    lo[i] = lo[i + 1] + factors_[i].min_radius();
    hi[i] = hi[i + 1] + factors_[i].max_radius();
  }
  std::vector<const std::vector<Word>*> chosen(m);

  std::size_t total = 0;
  std::function<bool(std::size_t, std::size_t)> tuples = [&](std::size_t i,
                                                             std::size_t left) -> bool {
    if (i == m) {
      if (left != 0) return false;
      bool stop = false;
      std::function<bool(std::size_t, const Word&)> emit = [&](std::size_t j,
                                                               const Word& acc) -> bool {
        for (const Word& c : *chosen[j]) {
          Word next = acc.concat(c);
          if (j + 1 == m) {
            if (fn(next, total)) return stop = true;
          } else if (emit(j + 1, next)) {
            return true;
          }
        }
        return false;
      };
      emit(0, Word(0));
      return stop;
    }
    for (const auto& [r, cs] : factors_[i].entries) {
      if (r > left) break;
      const std::size_t rest = left - r;
      if (rest < lo[i + 1] || rest > hi[i + 1]) continue;
      chosen[i] = &cs;
      if (tuples(i + 1, rest)) return true;
    }
    return false;
  };
  for (total = lo[0]; total <= hi[0]; ++total)
    if (tuples(0, total)) return true;
  return false;
}

CodeFamily ProductCode::materialize(std::uint64_t limit) const {
  if (total_centers() > limit)
    throw PreconditionError("ProductCode::materialize: " + std::to_string(total_centers()) +
                            " centers exceed the limit");
  CodeFamily out;
  out.width = width();
  for_each([&](const Word& w, std::size_t r) {
    out.entries[r].push_back(w);
    return false;
  });
  return out;
}

CodeFamily product_code(const std::vector<CodeFamily>& codes) {
  for (const auto& c : codes)
    if (c.entries.size() != 1)
      throw PreconditionError("product_code: every input needs a single radius");
  return ProductCode(codes).materialize();
}

std::size_t ell_for(std::size_t nu, unsigned k, const Rational& lambda) {
  if (k < 3) throw PreconditionError("ell_for: k must be at least 3");
  if (lambda <= 0 || lambda > 1) throw PreconditionError("ell_for: lambda must lie in (0, 1]");
  Integer num, den;
  mpz_pow_ui(num.get_mpz_t(), lambda.get_num().get_mpz_t(), nu);
  mpz_pow_ui(den.get_mpz_t(), lambda.get_den().get_mpz_t(), nu);
  // Largest j with (k-1)^j num^nu <= den^nu.
  std::size_t j = 0;
  Integer lhs = num * (k - 1);
  while (lhs <= den) {
    ++j;
    lhs *= (k - 1);
  }
  return j + 2;
}

std::vector<Word> power_words(const SolutionSpace& A, std::size_t nu) {
  std::vector<Word> cur{Word(0)};
  for (std::size_t i = 0; i < nu; ++i) {
    std::vector<Word> next;
    next.reserve(cur.size() * A.size());
    for (const Word& p : cur)
      for (const Word& a : A.words) next.push_back(p.concat(a));
    cur = std::move(next);
  }
  return cur;
}

namespace {

CodeFamily ell_family(const SolutionSpace& A, std::size_t nu, unsigned k,
                      const Rational& lambda) {
  const std::size_t ell = ell_for(nu, k, lambda);
  std::vector<std::size_t> radii(ell + 1);
  std::iota(radii.begin(), radii.end(), 0);
  CodeFamily f = greedy_cover(power_words(A, nu), radii, k - 1);
  f.width = A.width() * nu;
  return f;
}

}  // namespace

ProductCode ell_cover_power_blocks(const SolutionSpace& A, std::size_t nu, unsigned k,
                                   const Rational& lambda) {
  if (A.size() == 0) throw PreconditionError("ell_cover_power: empty solution space");
  if (A.size() > kGreedyMaxWords)
    throw PreconditionError("ell_cover_power: |A| exceeds the greedy limit");
  if (nu == 0) return ProductCode(std::vector<CodeFamily>{});
  std::size_t per = 1;
  while (per < nu) {
    std::uint64_t s = 1;
    for (std::size_t i = 0; i <= per; ++i) s *= A.size();
    if (s > kGreedyMaxWords) break;
    ++per;
  }
  const std::size_t nb = (nu + per - 1) / per;
  std::vector<std::size_t> sizes(nb, nu / nb);
  for (std::size_t i = 0; i < nu % nb; ++i) ++sizes[i];
  std::map<std::size_t, CodeFamily> memo;
  std::vector<CodeFamily> factors;
  for (std::size_t s : sizes) {
    auto it = memo.find(s);
    if (it == memo.end()) it = memo.emplace(s, ell_family(A, s, k, lambda)).first;
    factors.push_back(it->second);
  }
  return ProductCode(std::move(factors));
}

CodeFamily ell_cover_power(const SolutionSpace& A, std::size_t nu, unsigned k,
                           const Rational& lambda) {
  return ell_cover_power_blocks(A, nu, k, lambda).materialize();
}

SpaceFactor SpaceFactor::cube(std::size_t w) {
  SpaceFactor f;
  f.cube_width = w;
  return f;
}

SpaceFactor SpaceFactor::power(SolutionSpace A, std::size_t nu) {
  if (nu == 0) throw PreconditionError("SpaceFactor::power: exponent must be positive");
  SpaceFactor f;
  f.space = std::move(A);
  f.exponent = nu;
  return f;
}

std::size_t SpaceFactor::width() const {
  return is_cube() ? cube_width : space.width() * exponent;
}

long double SpaceFactor::log2_size() const {
  if (is_cube()) return static_cast<long double>(cube_width);
  return exponent * std::log2(static_cast<long double>(space.size()));
}

std::size_t StructuredSpace::width() const {
  std::size_t w = 0;
  for (const auto& f : factors) w += f.width();
  return w;
}

long double StructuredSpace::log2_size() const {
  long double s = 0;
  for (const auto& f : factors) s += f.log2_size();
  return s;
}

bool StructuredSpace::contains(const Word& w) const {
  if (w.width() != width()) return false;
  std::size_t off = 0;
  for (const auto& f : factors) {
    if (!f.is_cube()) {
      const std::size_t aw = f.space.width();
      for (std::size_t i = 0; i < f.exponent; ++i)
        if (!f.space.contains(w.slice(off + i * aw, aw))) return false;
    }
    off += f.width();
  }
  return true;
}

bool StructuredSpace::for_each(const std::function<bool(const Word&)>& fn) const {
  // Flatten into unit factors: single cube bits or single copies of A.
  std::vector<const std::vector<Word>*> units;
  static const std::vector<Word> kBit{Word::from_string("0"), Word::from_string("1")};
  for (const auto& f : factors) {
    if (f.is_cube())
      for (std::size_t i = 0; i < f.cube_width; ++i) units.push_back(&kBit);
    else
      for (std::size_t i = 0; i < f.exponent; ++i) units.push_back(&f.space.words);
  }
  std::function<bool(std::size_t, const Word&)> rec = [&](std::size_t i,
                                                          const Word& acc) -> bool {
    if (i == units.size()) return fn(acc);
    for (const Word& u : *units[i])
      if (rec(i + 1, acc.concat(u))) return true;
    return false;
  };
  return rec(0, Word(0));
}

namespace {

std::uint64_t splitmix64(std::uint64_t& s) {
  std::uint64_t z = (s += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

Word StructuredSpace::sample(std::uint64_t& state) const {
  Word out(0);
  for (const auto& f : factors) {
    if (f.is_cube()) {
      Word c(f.cube_width);
      for (std::size_t i = 0; i < f.cube_width; ++i)
        if (splitmix64(state) & 1U) c.set(i, true);
      out = out.concat(c);
    } else {
      for (std::size_t i = 0; i < f.exponent; ++i)
        out = out.concat(f.space.words[splitmix64(state) % f.space.size()]);
    }
  }
  return out;
}

std::string StructuredSpace::describe() const {
  std::ostringstream os;
  os << "space width=" << width();
  for (const auto& f : factors) {
    if (f.is_cube())
      os << " cube(" << f.cube_width << ")";
    else
      os << " power(|A|=" << f.space.size() << ",w=" << f.space.width() << ",nu=" << f.exponent
         << ")";
  }
  return os.str();
}

ProductCode build_generalized_code(const StructuredSpace& space, const Rational& rho,
                                   const std::vector<Rational>& lambdas, unsigned k) {
  if (rho <= 0 || rho >= Rational(1, 2))
    throw PreconditionError("build_generalized_code: rho must lie in (0, 1/2)");
  std::size_t powers = 0;
  for (const auto& f : space.factors) powers += f.is_cube() ? 0 : 1;
  if (lambdas.size() != powers)
    throw PreconditionError("build_generalized_code: one lambda per power factor");
  std::vector<CodeFamily> parts;
  std::size_t li = 0;
  for (const auto& f : space.factors) {
    if (f.is_cube()) {
      if (f.cube_width == 0) continue;
      Rational prod = rho * static_cast<unsigned long>(f.cube_width);
      Integer ceil_r;
      mpz_cdiv_q(ceil_r.get_mpz_t(), prod.get_num().get_mpz_t(), prod.get_den().get_mpz_t());
      CubeCode cc = cover_cube_blocks(f.cube_width, ceil_r.get_ui());
      for (auto& b : cc.blocks) parts.push_back(std::move(b));
    } else {
      ProductCode pc = ell_cover_power_blocks(f.space, f.exponent, k, lambdas[li++]);
      for (const auto& b : pc.factors()) parts.push_back(b);
    }
  }
  return ProductCode(std::move(parts));
}

namespace {

// Exact product coverage: w is covered iff the sum over factors of
// min_r (d_r - r) is <= 0, d_r the distance to the nearest radius-r center.
bool covered_by(const std::vector<CodeFamily>& factors, const Word& w) {
  long long slack = 0;
  std::size_t off = 0;
  for (const auto& f : factors) {
    const Word part = w.slice(off, f.width);
    long long best = std::numeric_limits<long long>::max();
    for (const auto& [r, cs] : f.entries) {
      for (const Word& c : cs) {
        const long long v = static_cast<long long>(hamming_distance(c, part)) -
                            static_cast<long long>(r);
        best = std::min(best, v);
      }
    }
    slack += best;
    off += f.width;
  }
  return slack <= 0;
}

CoverageReport verify_factors(const std::vector<CodeFamily>& factors,
                              const std::function<bool(const std::function<bool(const Word&, std::size_t)>&)>& centers,
                              const StructuredSpace& space, std::uint64_t samples,
                              std::uint64_t seed) {
  CoverageReport rep;
  std::size_t fw = 0;
  for (const auto& f : factors) fw += f.width;
  if (fw != space.width()) throw PreconditionError("verify_coverage: width mismatch");
  if (space.width() <= kExhaustiveCoverageBits) {
    space.for_each([&](const Word& w) {
      ++rep.checked;
      if (!covered_by(factors, w)) ++rep.uncovered;
      return false;
    });
  } else {
    rep.sampled = true;
    std::uint64_t state = seed;
    for (std::uint64_t i = 0; i < samples; ++i) {
      ++rep.checked;
      if (!covered_by(factors, space.sample(state))) ++rep.uncovered;
    }
  }
  std::uint64_t seen = 0;
  centers([&](const Word& c, std::size_t) {
    if (!space.contains(c)) rep.centers_inside = false;
    return ++seen >= samples || !rep.centers_inside;
  });
  return rep;
}

}  // namespace

CoverageReport verify_coverage(const CodeFamily& code, const StructuredSpace& space,
                               std::uint64_t samples, std::uint64_t seed) {
  CodeFamily c = code;
  if (c.width == 0 && !c.entries.empty() && !c.entries.begin()->second.empty())
    c.width = c.entries.begin()->second.front().width();
  std::vector<CodeFamily> factors{c};
  auto centers = [&](const std::function<bool(const Word&, std::size_t)>& fn) {
    for (const auto& [r, cs] : code.entries)
      for (const Word& w : cs)
        if (fn(w, r)) return true;
    return false;
  };
  return verify_factors(factors, centers, space, samples, seed);
}

CoverageReport verify_coverage(const ProductCode& code, const StructuredSpace& space,
                               std::uint64_t samples, std::uint64_t seed) {
  auto centers = [&](const std::function<bool(const Word&, std::size_t)>& fn) {
    return code.for_each(fn);
  };
  return verify_factors(code.factors(), centers, space, samples, seed);
}

std::string dump_code(const CodeFamily& code, const std::string& header) {
  std::ostringstream os;
  os << "# " << header << '\n';
  for (const auto& [r, cs] : code.entries)
    for (const Word& w : cs) os << "r " << r << ' ' << w.to_string() << '\n';
  return os.str();
}

}  // namespace detksat

#include "detksat/characteristic.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <map>
#include <mutex>

namespace detksat {

namespace {

constexpr std::array<std::uint64_t, 3> kPrimes = {2147483647ULL, 2147483629ULL,
                                                  2147483587ULL};

std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1;
  b %= p;
  while (e) {
    if (e & 1U) r = r * b % p;
    b = b * b % p;
    e >>= 1U;
  }
  return r;
}

// Kernel matrix G[a][b] = (k-1)^(w - d(a,b)) of a solution space.
struct Kernel {
  std::vector<std::uint64_t> bits;
  std::vector<std::int64_t> power;  // power[j] = (k-1)^j
  std::size_t width;

  Kernel(const SolutionSpace& A, unsigned k) : width(A.width()) {
    for (const auto& w : A.words) bits.push_back(w.to_bits());
    power.assign(width + 1, 1);
    for (std::size_t j = 1; j <= width; ++j) power[j] = power[j - 1] * (k - 1);
  }
  std::size_t size() const { return bits.size(); }
  std::int64_t operator()(std::size_t a, std::size_t b) const {
    return power[width - static_cast<std::size_t>(std::popcount(bits[a] ^ bits[b]))];
  }
};

// Symmetric LDL^T factorisation modulo a fixed prime, without pivoting.
template <std::uint64_t P>
class ModularLdl {
 public:
  explicit ModularLdl(const Kernel& g) : n_(g.size()), a_(n_ * n_), dinv_(n_) {
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t m = 0; m <= i; ++m)
        a_[i * n_ + m] = static_cast<std::uint32_t>(
            static_cast<std::uint64_t>(g(i, m)) % P);
  }

  bool factor() {
    std::vector<std::uint64_t> col(n_);
    for (std::size_t j = 0; j < n_; ++j) {
      const std::uint64_t d = a_[j * n_ + j];
      if (d == 0) return false;
      dinv_[j] = pow_mod(d, P - 2, P);
      for (std::size_t m = j + 1; m < n_; ++m) col[m] = a_[m * n_ + j];
      for (std::size_t i = j + 1; i < n_; ++i) {
        const std::uint64_t coef = col[i] * dinv_[j] % P;
        const std::uint64_t neg = P - coef;
        std::uint32_t* row = &a_[i * n_];
        for (std::size_t m = j + 1; m <= i; ++m)
          row[m] = static_cast<std::uint32_t>((row[m] + neg * col[m]) % P);
        row[j] = static_cast<std::uint32_t>(coef);
      }
    }
    return true;
  }

  // Solves G x = b (mod P) in place; entries of b must lie in [0, P).
  void solve(std::vector<std::uint64_t>& x) const {
    for (std::size_t i = 0; i < n_; ++i) {
      const std::uint32_t* row = &a_[i * n_];
      std::uint64_t acc = x[i];
      for (std::size_t j = 0; j < i; ++j) acc = (acc + (P - row[j]) * x[j]) % P;
      x[i] = acc;
    }
    for (std::size_t i = 0; i < n_; ++i) x[i] = x[i] * dinv_[i] % P;
    for (std::size_t i = n_; i-- > 0;) {
      const std::uint32_t* row = &a_[i * n_];
      const std::uint64_t xi = x[i];
      for (std::size_t j = 0; j < i; ++j) x[j] = (x[j] + (P - row[j]) * xi) % P;
    }
  }

 private:
  std::size_t n_;
  std::vector<std::uint32_t> a_;
  std::vector<std::uint64_t> dinv_;
};

// a/b with |a|, b <= sqrt(m/2) and a = b u (mod m), if one exists.
bool rational_reconstruct(const Integer& u, const Integer& m, Integer& a,
                          Integer& b) {
  Integer bound;
  mpz_sqrt(bound.get_mpz_t(), Integer(m / 2).get_mpz_t());
  Integer r0 = m, r1 = u, t0 = 0, t1 = 1, q, tmp;
  while (r1 > bound) {
    q = r0 / r1;
    tmp = r0 - q * r1;
    r0 = r1;
    r1 = tmp;
    tmp = t0 - q * t1;
    t0 = t1;
    t1 = tmp;
  }
  if (t1 == 0 || abs(t1) > bound) return false;
  Integer g;
  mpz_gcd(g.get_mpz_t(), r1.get_mpz_t(), t1.get_mpz_t());
  if (g != 1) return false;
  a = sgn(t1) < 0 ? Integer(-r1) : r1;
  b = abs(t1);
  return true;
}

Integer symmetric_mod(const Integer& x, const Integer& m) {
  Integer r;
  mpz_mod(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
  if (r > m / 2) r -= m;
  return r;
}

// Integer solution num / den of G y = 1, verified exactly.
struct ScaledSolution {
  std::vector<Integer> num;
  Integer den;
};

bool try_reconstruct(const Kernel& g, const std::vector<Integer>& y,
                     const Integer& modulus, ScaledSolution& out) {
  const std::size_t n = y.size();
  Integer bound;
  mpz_sqrt(bound.get_mpz_t(), Integer(modulus / 2).get_mpz_t());
  Integer den = 1, a, b;
  for (std::size_t i = 0; i < n; ++i) {
    const Integer t = symmetric_mod(den * y[i], modulus);
    if (abs(t) <= bound) continue;
    Integer u;
    mpz_mod(u.get_mpz_t(), Integer(den * y[i]).get_mpz_t(), modulus.get_mpz_t());
    if (!rational_reconstruct(u, modulus, a, b)) return false;
    den *= b;
  }
  std::vector<Integer> num(n);
  for (std::size_t i = 0; i < n; ++i) num[i] = symmetric_mod(den * y[i], modulus);
  Integer acc;
  for (std::size_t r = 0; r < n; ++r) {
    acc = 0;
    for (std::size_t c = 0; c < n; ++c)
      mpz_addmul_ui(acc.get_mpz_t(), num[c].get_mpz_t(),
                    static_cast<unsigned long>(g(r, c)));
    if (acc != den) return false;
  }
  out.num = std::move(num);
  out.den = std::move(den);
  return true;
}

template <std::uint64_t P>
bool dixon_solve(const Kernel& g, ScaledSolution& out) {
  ModularLdl<P> ldl(g);
  if (!ldl.factor()) return false;
  const std::size_t n = g.size();
  constexpr std::int64_t half = static_cast<std::int64_t>(P / 2);

  std::vector<std::int64_t> residual(n, 1);
  std::vector<std::uint64_t> x(n);
  std::vector<std::int64_t> xs(n);
  std::vector<Integer> y(n, 0);
  Integer modulus = 1;
  std::size_t next_try = 2;
  constexpr std::size_t kMaxSteps = 4096;

  for (std::size_t step = 1; step <= kMaxSteps; ++step) {
    for (std::size_t i = 0; i < n; ++i) {
      const std::int64_t r = residual[i] % static_cast<std::int64_t>(P);
      x[i] = static_cast<std::uint64_t>(r < 0 ? r + static_cast<std::int64_t>(P) : r);
    }
    ldl.solve(x);
    for (std::size_t i = 0; i < n; ++i) {
      xs[i] = static_cast<std::int64_t>(x[i]);
      if (xs[i] > half) xs[i] -= static_cast<std::int64_t>(P);
      y[i] += Integer(static_cast<long>(xs[i])) * modulus;
    }
    for (std::size_t r = 0; r < n; ++r) {
      __int128 acc = residual[r];
      for (std::size_t c = 0; c < n; ++c)
        acc -= static_cast<__int128>(g(r, c)) * xs[c];
      residual[r] = static_cast<std::int64_t>(acc / static_cast<__int128>(P));
    }
    modulus *= static_cast<unsigned long>(P);
    if (step == next_try) {
      if (try_reconstruct(g, y, modulus, out)) return true;
      next_try = step + std::max<std::size_t>(1, step / 2);
    }
  }
  throw CharacteristicError("p-adic lifting did not converge");
}

void check_space(const SolutionSpace& A, unsigned k, std::size_t guard) {
  if (k < 3) throw PreconditionError("characteristic system needs k >= 3");
  if (A.size() == 0) throw PreconditionError("empty solution space");
  if (A.size() > guard)
    throw PreconditionError("solution space of " + std::to_string(A.size()) +
                            " words exceeds guard " + std::to_string(guard));
}

Characteristic finish(std::vector<Rational> pi, Rational lambda) {
  for (auto& q : pi)
    if (sgn(q) < 0)
      throw CharacteristicError("characteristic distribution has a negative entry");
  if (sgn(lambda) <= 0 || lambda >= 1)
    throw CharacteristicError("characteristic value " + to_string(lambda) +
                              " outside (0, 1)");
  return Characteristic{std::move(lambda), std::move(pi)};
}

}  // namespace

Characteristic solve_characteristic(const SolutionSpace& A, unsigned k) {
  check_space(A, k, kCharacteristicMaxWords);
  const Kernel g(A, k);
  ScaledSolution sol;
  if (!dixon_solve<kPrimes[0]>(g, sol) && !dixon_solve<kPrimes[1]>(g, sol) &&
      !dixon_solve<kPrimes[2]>(g, sol))
    throw CharacteristicError("characteristic system singular modulo every prime");

  // G y = 1 with y = num/den gives pi = y / sum(y), lambda = 1 / (S sum(y)).
  Integer total = 0;
  for (const auto& v : sol.num) total += v;
  if (total == 0) throw CharacteristicError("degenerate characteristic system");
  std::vector<Rational> pi;
  pi.reserve(sol.num.size());
  for (const auto& v : sol.num) {
    Rational q(v, total);
    q.canonicalize();
    pi.push_back(std::move(q));
  }
  Rational lambda(sol.den, total * Integer(g.power[g.width]));
  lambda.canonicalize();
  return finish(std::move(pi), std::move(lambda));
}

Characteristic solve_characteristic_dense(const SolutionSpace& A, unsigned k) {
  check_space(A, k, kDenseSolverMaxWords);
  const std::size_t n = A.size();
  const std::size_t cols = n + 2;  // pi..., lambda, rhs
  std::vector<std::vector<Rational>> m(n + 1, std::vector<Rational>(cols, 0));
  const Rational q(1, k - 1);
  std::vector<Rational> qpow(A.width() + 1, 1);
  for (std::size_t j = 1; j < qpow.size(); ++j) qpow[j] = qpow[j - 1] * q;
  for (std::size_t a = 0; a < n; ++a) m[0][a] = 1;
  m[0][cols - 1] = 1;
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t a = 0; a < n; ++a)
      m[s + 1][a] = qpow[hamming_distance(A.words[a], A.words[s])];
    m[s + 1][n] = -1;
  }
  const std::size_t rows = n + 1;
  for (std::size_t c = 0; c < rows; ++c) {
    std::size_t piv = c;
    while (piv < rows && sgn(m[piv][c]) == 0) ++piv;
    if (piv == rows) throw CharacteristicError("characteristic system is singular");
    std::swap(m[c], m[piv]);
    const Rational inv = 1 / m[c][c];
    for (std::size_t j = c; j < cols; ++j) m[c][j] *= inv;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == c || sgn(m[r][c]) == 0) continue;
      const Rational f = m[r][c];
      for (std::size_t j = c; j < cols; ++j) m[r][j] -= f * m[c][j];
    }
  }
  std::vector<Rational> pi(n);
  for (std::size_t a = 0; a < n; ++a) pi[a] = m[a][cols - 1];
  return finish(std::move(pi), m[n][cols - 1]);
}

Characteristic closed_form_1chain(unsigned k) {
  if (k < 3) throw PreconditionError("closed_form_1chain needs k >= 3");
  std::vector<Lit> lits;
  for (Var v = 1; v <= k; ++v) lits.emplace_back(v, true);
  const SolutionSpace A = solution_space(build_chain({Clause(lits)}, k));
  Integer a, b, c;
  mpz_ui_pow_ui(a.get_mpz_t(), 2 * k - 2, k);
  mpz_ui_pow_ui(b.get_mpz_t(), k - 2, k);
  mpz_ui_pow_ui(c.get_mpz_t(), k - 1, k);
  const Integer d = a - b;
  Integer kk;
  mpz_ui_pow_ui(kk.get_mpz_t(), k, k);
  Rational lambda(kk, d);
  lambda.canonicalize();
  Rational coef(c, d);
  coef.canonicalize();
  const Rational ratio(-1, k - 1);
  std::vector<Rational> pi;
  for (const auto& w : A.words)
    pi.push_back(coef * (1 - pow(ratio, w.weight())));
  return Characteristic{lambda, std::move(pi)};
}

bool satisfies_characteristic(const SolutionSpace& A, unsigned k,
                              const Characteristic& c) {
  if (c.pi.size() != A.size()) return false;
  Rational total = 0;
  for (const auto& q : c.pi) {
    if (sgn(q) < 0) return false;
    total += q;
  }
  if (total != 1) return false;
  const Rational q(1, k - 1);
  std::vector<Rational> qpow(A.width() + 1, 1);
  for (std::size_t j = 1; j < qpow.size(); ++j) qpow[j] = qpow[j - 1] * q;
  for (std::size_t s = 0; s < A.size(); ++s) {
    Rational sum = 0;
    for (std::size_t a = 0; a < A.size(); ++a)
      sum += c.pi[a] * qpow[hamming_distance(A.words[a], A.words[s])];
    if (sum != c.lambda) return false;
  }
  return true;
}

Rational chain_lambda(std::string_view z) {
  static std::mutex mu;
  static std::map<std::string, Rational> memo;
  const std::string key = canonical_zeta(z);
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
  }
  const Rational lambda =
      solve_characteristic(solution_space(realize_chain(key)), 3).lambda;
  std::lock_guard<std::mutex> lock(mu);
  memo.emplace(key, lambda);
  return lambda;
}

}  // namespace detksat

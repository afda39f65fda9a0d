#include "detksat/bounds.hpp"

#include <cmath>

#include "detksat/characteristic.hpp"
#include "detksat/formula.hpp"

namespace detksat {

namespace {

long double lg(long double x) { return std::log2(x); }

}  // namespace

long double c3_exponent() { return lg(4.0L / 3.0L) / lg(64.0L / 21.0L); }

long double c3() { return std::exp2(c3_exponent() * lg(3.0L)); }

long double ksat_nu(unsigned k, long double c_prev) {
  if (k < 4) throw PreconditionError("ksat_nu needs k >= 4");
  const long double kk = k;
  const long double q = std::pow((kk - 2) / (2 * kk - 2), kk);
  return (lg(2 * kk - 2) - lg(kk) - lg(c_prev)) /
         (lg(std::exp2(kk) - 1) - lg(1 - q) - kk * lg(c_prev));
}

std::vector<BoundRow> ck_recurrence(unsigned kmax) {
  if (kmax < 3 || kmax > kMaxBoundK)
    throw PreconditionError("ck_recurrence: kmax must lie in [3, " +
                            std::to_string(kMaxBoundK) + "]");
  std::vector<BoundRow> rows;
  rows.push_back({3, c3(), c3_exponent()});
  for (unsigned k = 4; k <= kmax; ++k) {
    const long double prev = rows.back().c;
    const long double nu = ksat_nu(k, prev);
    const long double c =
        std::exp2(nu * lg(std::exp2(static_cast<long double>(k)) - 1) +
                  (1 - k * nu) * lg(prev));
    rows.push_back({k, c, nu});
  }
  return rows;
}

long double round_up(long double x, int decimals) {
  const long double scale = std::pow(10.0L, static_cast<long double>(decimals));
  return std::ceil(x * scale - 1e-9L) / scale;
}

BalanceReport balance_check(unsigned k) {
  if (k < 3 || k > kMaxBoundK)
    throw PreconditionError("balance_check: k out of range");
  BalanceReport r{k, 0, 0, 0};
  if (k == 3) {
    // Only single-clause chains: log c = x log 3 = log(4/3) - x (3 log(4/3) + log(3/7)).
    const long double x = c3_exponent();
    r.branching_side = std::exp2(x * lg(3.0L));
    r.search_side =
        std::exp2(lg(4.0L / 3.0L) - x * (3 * lg(4.0L / 3.0L) + lg(3.0L / 7.0L)));
  } else {
    const auto rows = ck_recurrence(k);
    const long double prev = rows[rows.size() - 2].c;
    const long double nu = rows.back().nu;
    const long double kk = k;
    const long double lambda = to_long_double(closed_form_1chain(k).lambda);
    r.branching_side =
        std::exp2(nu * lg(std::exp2(kk) - 1) + (1 - kk * nu) * lg(prev));
    r.search_side =
        std::exp2((1 - kk * nu) * lg(2 * (kk - 1) / kk) - nu * lg(lambda));
  }
  r.relative_error = std::fabs(r.branching_side - r.search_side) / r.search_side;
  return r;
}

DegenerationReport degeneration_check() {
  const long double l43 = lg(4.0L / 3.0L);
  const long double lp = log2(chain_lambda("p*"));
  const long double lt = log2(chain_lambda("t*"));
  // 9^x = (4/3)^(1 - eta x) lambda^(-x), solved for x = nu / n.
  const long double xp = l43 / (lg(9.0L) + 5 * l43 + lp);
  const long double xt = l43 / (lg(9.0L) + 4 * l43 + lt);
  return {std::exp2(xp * lg(9.0L)), std::exp2(xt * lg(9.0L)), c3()};
}

}  // namespace detksat

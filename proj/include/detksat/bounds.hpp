#pragma once

#include <vector>

namespace detksat {

/// log(4/3) / log(64/21).
long double c3_exponent();

/// Base of the 3-SAT bound, 3^c3_exponent().
long double c3();

struct BoundRow {
  unsigned k;
  long double c;
  /// Instance-size fraction at which branching and local search balance.
  long double nu;
};

inline constexpr unsigned kMaxBoundK = 12;

/// Rows for k = 3..kmax. Row k = 3 carries c3() and its balancing fraction;
/// later rows follow the k-SAT recurrence.
std::vector<BoundRow> ck_recurrence(unsigned kmax);

/// Balancing fraction for k >= 4 given the (k-1)-SAT base.
long double ksat_nu(unsigned k, long double c_prev);

/// Rounds up at the given number of decimals.
long double round_up(long double x, int decimals);

struct BalanceReport {
  unsigned k;
  long double branching_side;
  long double search_side;
  long double relative_error;
};

/// Evaluates both sides of the branching/local-search balance at the
/// computed fraction (per-variable bases).
BalanceReport balance_check(unsigned k);

struct DegenerationReport {
  long double positive_base;
  long double two_negative_base;
  long double c3;
};

/// Bases obtained when 2-chains of type "p*" or "t*" cost 9 branches.
DegenerationReport degeneration_check();

}  // namespace detksat

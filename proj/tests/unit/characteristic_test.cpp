#include <gtest/gtest.h>

#include "detksat/chain_table.hpp"
#include "detksat/characteristic.hpp"
#include "test_util.hpp"

using namespace detksat;
using namespace detksat::testing;

namespace {

SolutionSpace one_chain(unsigned k) {
  std::vector<Lit> lits;
  for (Var v = 1; v <= k; ++v) lits.emplace_back(v, true);
  return solution_space(build_chain({Clause(lits)}, k));
}

}  // namespace

TEST(Characteristic, ReferenceValuesExact) {
  const auto& refs = reference_chain_types();
  ASSERT_EQ(refs.size(), 38u);
  for (const auto& ref : refs) {
    const SolutionSpace A = solution_space(realize_chain(ref.zeta));
    const Characteristic c = solve_characteristic(A, 3);
    EXPECT_EQ(c.lambda, parse_rational(ref.lambda)) << ref.type_id << " " << ref.zeta;
    EXPECT_TRUE(satisfies_characteristic(A, 3, c));
  }
}

TEST(Characteristic, NamedValues) {
  EXPECT_EQ(chain_lambda("*"), Rational(3, 7));
  EXPECT_EQ(chain_lambda("n*"), Rational(27, 110));
  EXPECT_EQ(chain_lambda("p*"), Rational(81, 331));
  EXPECT_EQ(chain_lambda("t*"), Rational(15, 46));
  EXPECT_EQ(chain_lambda("tnt*"), Rational(25, 176));
  EXPECT_EQ(chain_lambda("tnnt*"), Rational(45, 553));
  EXPECT_EQ(chain_lambda("nnnn*"), Rational(243, 5264));
}

TEST(Characteristic, DenseSolverAgrees) {
  for (const char* z : {"*", "n*", "p*", "t*", "nn*", "tn*", "np*"}) {
    const SolutionSpace A = solution_space(realize_chain(z));
    EXPECT_EQ(solve_characteristic(A, 3).pi, solve_characteristic_dense(A, 3).pi) << z;
  }
}

TEST(Characteristic, ClosedFormMatchesSolver) {
  for (unsigned k = 3; k <= 6; ++k) {
    const Characteristic closed = closed_form_1chain(k);
    const Characteristic lp = solve_characteristic(one_chain(k), k);
    EXPECT_EQ(closed.lambda, lp.lambda) << k;
    EXPECT_EQ(closed.pi, lp.pi) << k;
  }
  EXPECT_EQ(closed_form_1chain(4).lambda, Rational(1, 5));
}

TEST(Characteristic, ClosedFormDistribution) {
  const SolutionSpace A = one_chain(3);
  const Characteristic c = closed_form_1chain(3);
  Rational total = 0;
  for (std::size_t i = 0; i < A.size(); ++i) {
    const std::size_t w = A.words[i].weight();
    if (w == 1) EXPECT_EQ(c.pi[i], Rational(4, 21));
    if (w == 3) EXPECT_EQ(c.pi[i], Rational(1, 7));
    total += c.pi[i];
  }
  EXPECT_EQ(total, 1);
}

TEST(Characteristic, RejectsBadSpace) {
  SolutionSpace empty;
  EXPECT_ANY_THROW(solve_characteristic(empty, 3));
}

TEST(FValue, TableRows) {
  const auto rows = reproduce_chain_table();
  EXPECT_TRUE(check_chain_table(rows).empty());
  for (const auto& r : rows) {
    if (r.type_id == 3) EXPECT_TRUE(f_matches_prefix(r.f, "0.983"));
    if (r.type_id == 20) {
      EXPECT_TRUE(r.r2);
      EXPECT_EQ(r.b, 486);
      EXPECT_EQ(r.eta, 11u);
      EXPECT_TRUE(f_matches_prefix(r.f, "0.98583"));
    }
  }
}

TEST(FValue, SingleClauseIsMaximum) {
  const long double f1 = f_single_clause();
  EXPECT_NEAR(static_cast<double>(f1), 0.9858678095, 1e-9);
  for (const auto& r : reproduce_chain_table()) {
    if (r.type_id != 1) EXPECT_LT(r.f, f1) << r.type_id;
  }
}

TEST(FValue, ForcedTerminationTest) {
  EXPECT_TRUE(forced_termination_allowed("nnnn*", f_single_clause()));
  EXPECT_FALSE(forced_termination_allowed("*", f_single_clause()));
}

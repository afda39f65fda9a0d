#include <gtest/gtest.h>

#include "detksat/formula.hpp"
#include "detksat/generator.hpp"
#include "test_util.hpp"

using namespace detksat;
using namespace detksat::testing;

TEST(Dimacs, ParsesMinimalInput) {
  Formula f = parse_dimacs(std::string_view("p cnf 3 1\n1 2 3 0\n"));
  EXPECT_EQ(f.num_vars(), 3u);
  ASSERT_EQ(f.num_clauses(), 1u);
  EXPECT_EQ(f.clause(0), C({1, 2, 3}));
}

TEST(Dimacs, DropsDuplicateLiterals) {
  Formula f = parse_dimacs(std::string_view("p cnf 2 1\n1 1 2 0\n"));
  EXPECT_EQ(f.clause(0), C({1, 2}));
}

TEST(Dimacs, RejectsTautologyWithLine) {
  try {
    parse_dimacs(std::string_view("p cnf 2 1\n1 -1 0\n"));
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(Dimacs, RejectsBadInput) {
  EXPECT_THROW(parse_dimacs(std::string_view("p cnf 2 1\n1 3 0\n")), ParseError);
  EXPECT_THROW(parse_dimacs(std::string_view("1 2 0\n")), ParseError);
  EXPECT_THROW(parse_dimacs(std::string_view("p cnf 2 2\n1 2 0\n")), ParseError);
}

TEST(Dimacs, RoundTrips) {
  Formula f = random_kcnf({3, 12, 40, 9});
  EXPECT_EQ(parse_dimacs(std::string_view(to_dimacs(f))), f);
}

TEST(Restrict, SatisfiedClauseRemoved) {
  PartialAssignment a(3);
  a.assign(1, true);
  EXPECT_TRUE(restrict(F(3, {{1, 2, 3}}), a).empty());
}

TEST(Restrict, FalsifiedClauseBecomesBottom) {
  PartialAssignment a(2);
  a.assign(1, false);
  a.assign(2, false);
  EXPECT_TRUE(restrict(F(2, {{1, 2}}), a).has_bottom());
}

TEST(Restrict, KeepsOrigin) {
  PartialAssignment a(3);
  a.assign(1, false);
  Formula g = restrict(F(3, {{1, 2, 3}}), a);
  ASSERT_EQ(g.num_clauses(), 1u);
  EXPECT_EQ(g.clause(0), C({2, 3}));
  EXPECT_EQ(g.origin(0), 0);
}

TEST(UnitPropagation, TwoSteps) {
  Formula g = unit_propagate(F(4, {{1}, {-1, 2}, {-2, 3, 4}}));
  ASSERT_EQ(g.num_clauses(), 1u);
  EXPECT_EQ(g.clause(0), C({3, 4}));
}

TEST(UnitPropagation, Conflict) { EXPECT_TRUE(unit_propagate(F(1, {{1}, {-1}})).has_bottom()); }

TEST(UnitPropagation, Fixpoint) {
  Formula f = F(3, {{1, 2, 3}});
  EXPECT_EQ(unit_propagate(f), f);
}

TEST(TwoSat, ClassicContradiction) {
  EXPECT_FALSE(solve_2sat(F(2, {{1, 2}, {-1, 2}, {1, -2}, {-1, -2}})));
}

TEST(TwoSat, UnitLike) {
  Formula f = parse_dimacs(std::string_view("p cnf 1 1\n1 1 0\n"));
  auto a = solve_2sat(f);
  ASSERT_TRUE(a);
  EXPECT_EQ(a->value(Var{1}), true);
}

TEST(TwoSat, EmptyFormula) {
  auto a = solve_2sat(Formula(3));
  ASSERT_TRUE(a);
  EXPECT_EQ(a->to_string(), "000");
}

TEST(TwoSat, AgreesWithOracle) {
  std::mt19937_64 rng(2024);
  int sat = 0;
  for (int i = 0; i < 1200; ++i) {
    const std::size_t n = 2 + i % 13;
    const std::size_t m = 1 + (i * 7) % (3 * n);
    Formula f = random_mixed(rng, n, m, 2);
    auto a = solve_2sat(f);
    ASSERT_EQ(a.has_value(), brute_force_sat(f).has_value()) << to_dimacs(f);
    if (a) {
      ++sat;
      EXPECT_TRUE(f.satisfied_by(*a));
    }
  }
  EXPECT_GT(sat, 100);
  EXPECT_LT(sat, 1100);
}

TEST(BruteForce, LexicographicFirst) {
  auto a = brute_force_sat(F(3, {{1, 2, 3}}));
  ASSERT_TRUE(a);
  EXPECT_EQ(a->to_string(), "001");
}

TEST(BruteForce, AllSignPatternsUnsat) {
  Formula f(3);
  for (int s = 0; s < 8; ++s)
    f.add_clause(Clause{Lit(1, s & 1), Lit(2, s & 2), Lit(3, s & 4)});
  EXPECT_FALSE(brute_force_sat(f));
}

TEST(BruteForce, EmptyIsAllZero) { EXPECT_EQ(brute_force_sat(Formula(4))->to_string(), "0000"); }

TEST(BruteForce, RejectsTooManyVars) {
  EXPECT_THROW(brute_force_sat(Formula(kBruteForceMaxVars + 1)), PreconditionError);
}

TEST(Word, ConcatSliceDistance) {
  Word a = Word::from_string("10110");
  Word b = Word::from_string("011");
  Word ab = a.concat(b);
  EXPECT_EQ(ab.to_string(), "10110011");
  EXPECT_EQ(ab.slice(5, 3), b);
  EXPECT_EQ(hamming_distance(a, Word::from_string("00111")), 2u);
  Word wide(130);
  wide.set(129, true);
  EXPECT_EQ(wide.slice(64, 66).weight(), 1u);
}

TEST(Generator, DeterministicPerSeed) {
  EXPECT_EQ(to_dimacs(random_kcnf({3, 20, 85, 42})), to_dimacs(random_kcnf({3, 20, 85, 42})));
  EXPECT_NE(to_dimacs(random_kcnf({3, 20, 85, 42})), to_dimacs(random_kcnf({3, 20, 85, 43})));
}

TEST(Generator, ClausesHaveDistinctVariables) {
  Formula f = random_kcnf({5, 6, 200, 1});
  for (const Clause& c : f.clauses()) {
    ASSERT_EQ(c.size(), 5u);
    for (std::size_t i = 0; i < c.size(); ++i)
      for (std::size_t j = i + 1; j < c.size(); ++j) EXPECT_NE(c.lits[i].var(), c.lits[j].var());
  }
}

TEST(Generator, EmptyAndInvalid) {
  EXPECT_EQ(random_kcnf({3, 5, 0, 1}).num_clauses(), 0u);
  EXPECT_THROW(random_kcnf({4, 3, 1, 1}), PreconditionError);
  EXPECT_THROW(random_kcnf({0, 3, 1, 1}), PreconditionError);
}

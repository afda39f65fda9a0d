#include <gtest/gtest.h>

#include "detksat/branching_3sat.hpp"
#include "detksat/branching_ksat.hpp"
#include "detksat/covering.hpp"
#include "detksat/generator.hpp"
#include "detksat/local_search.hpp"
#include "test_util.hpp"

using namespace detksat;
using namespace detksat::testing;

namespace {

bool ball_has_solution(const Formula& f, const Word& alpha, std::size_t r) {
  const std::size_t n = f.num_vars();
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
    const Word w = Word::from_bits(n, x);
    if (hamming_distance(w, alpha) <= r && f.satisfied_by(word_to_assignment(w))) return true;
  }
  return false;
}

Formula all_sign_patterns() {
  Formula f(3);
  for (int s = 0; s < 8; ++s) f.add_clause(Clause{Lit(1, s & 1), Lit(2, s & 2), Lit(3, s & 4)});
  return f;
}

}  // namespace

TEST(Searchball, OneFlip) {
  const Formula f = F(3, {{1, 2, 3}});
  auto a = searchball(f, Word::from_string("000"), 1);
  ASSERT_TRUE(a);
  EXPECT_EQ(a->to_string(), "100");
  EXPECT_FALSE(searchball(f, Word::from_string("000"), 0));
}

TEST(Searchball, AssignmentOverload) {
  const Formula f = F(3, {{1, 2, 3}, {-1, 2}});
  auto a = searchball(f, PartialAssignment(3).completed(), 2);
  ASSERT_TRUE(a);
  EXPECT_TRUE(f.satisfied_by(*a));
}

TEST(Searchball, WordLayout) {
  PartialAssignment a(3);
  a.assign(1, true);
  a.assign(2, false);
  a.assign(3, false);
  EXPECT_EQ(assignment_to_word(a).to_string(), "100");
  EXPECT_EQ(word_to_assignment(Word::from_string("011")).to_string(), "011");
}

TEST(Searchball, AgreesWithBallEnumeration) {
  std::mt19937_64 rng(77);
  for (int i = 0; i < 600; ++i) {
    const std::size_t n = 3 + i % 10;
    Formula f = random_kcnf({3, n, static_cast<std::size_t>(2 + i % 5) * n, static_cast<std::uint64_t>(i)});
    const Word alpha = Word::from_bits(n, rng() & ((std::uint64_t{1} << n) - 1));
    const std::size_t r = i % 5;
    auto w = searchball(f, alpha, r);
    ASSERT_EQ(w.has_value(), ball_has_solution(f, alpha, r)) << to_dimacs(f) << alpha.to_string();
    if (w) {
      EXPECT_LE(hamming_distance(*w, alpha), r);
      EXPECT_TRUE(f.satisfied_by(word_to_assignment(*w)));
    }
  }
}

TEST(Searchball, WideFormula) {
  const std::size_t n = 80;
  Formula f(n);
  f.add_clause(Clause{Lit(70, true), Lit(75, true), Lit(80, true)});
  f.add_clause(Clause{Lit(1, true), Lit(2, true)});
  auto w = searchball(f, Word(n), 2);
  ASSERT_TRUE(w);
  EXPECT_TRUE(f.satisfied_by(word_to_assignment(*w)));
  EXPECT_FALSE(searchball(f, Word(n), 1));
}

TEST(Dls, UnsatCube) { EXPECT_FALSE(dls(all_sign_patterns(), Instance{}).assignment); }

TEST(Dls, CentersStayInChainSpace) {
  const Formula f = F(5, {{1, 2, 3}, {-4, 5}});
  Instance inst;
  inst.chains.push_back(build_chain({C({1, 2, 3})}, 3));
  const DlsSpace s = build_dls_space(f, inst, 3);
  EXPECT_EQ(s.cube_width, 2u);
  ProductCode pc = build_generalized_code(s.space, Rational(1, 3), s.lambdas, 3);
  pc.for_each([&](const Word& w, std::size_t) {
    EXPECT_TRUE(s.space.contains(w));
    const PartialAssignment a = s.to_assignment(w, 5);
    EXPECT_TRUE(*a.value(Var{1}) || *a.value(Var{2}) || *a.value(Var{3}));
    return false;
  });
  auto r = dls(f, inst, 3);
  ASSERT_TRUE(r.assignment);
  EXPECT_TRUE(f.satisfied_by(*r.assignment));
}

TEST(Dls, EmptyInstanceAgreesWithOracle) {
  for (int i = 0; i < 300; ++i) {
    const unsigned k = 3 + i % 2;
    const std::size_t n = 4 + i % 9;
    const std::size_t m = k == 3 ? (3 + i % 4) * n : (7 + i % 5) * n;
    Formula f = random_kcnf({k, n, m, static_cast<std::uint64_t>(5000 + i)});
    auto r = dls(f, Instance{}, k);
    ASSERT_EQ(r.assignment.has_value(), brute_force_sat(f).has_value()) << to_dimacs(f);
    if (r.assignment) EXPECT_TRUE(f.satisfied_by(*r.assignment));
  }
}

TEST(Dls, ChainInstancesAgreeWithOracle) {
  for (int i = 0; i < 300; ++i) {
    const std::size_t n = 6 + i % 7;
    Formula f = random_kcnf({3, n, (2 + i % 5) * n, static_cast<std::uint64_t>(9000 + i)});
    Instance inst = greedy_maximal_1chains(f, 3);
    auto r = dls(f, inst, 3);
    ASSERT_EQ(r.assignment.has_value(), brute_force_sat(f).has_value()) << to_dimacs(f);
    if (r.assignment) EXPECT_TRUE(f.satisfied_by(*r.assignment));
  }
}

TEST(Dls, BranchingInstancesAgreeWithOracle) {
  Br3Options o;
  o.phi.c = 1.05L;
  int instances = 0;
  for (int i = 0; i < 400 && instances < 60; ++i) {
    const std::size_t n = 8 + i % 5;
    Formula f = random_kcnf({3, n, (2 + i % 3) * n, static_cast<std::uint64_t>(13000 + i)});
    Br3Result b = br_3(f, o);
    if (b.status != BranchStatus::kInstance) continue;
    ++instances;
    EXPECT_NO_THROW(validate_instance(b.instance));
    auto r = dls(f, b.instance, 3);
    ASSERT_EQ(r.assignment.has_value(), brute_force_sat(f).has_value()) << to_dimacs(f);
  }
  EXPECT_GE(instances, 60);
}

TEST(Dls, ThreadsGiveSameAnswer) {
  for (int i = 0; i < 15; ++i) {
    Formula f = random_kcnf({3, 12, 40, static_cast<std::uint64_t>(i)});
    auto one = dls(f, Instance{}, 3, 1);
    auto four = dls(f, Instance{}, 3, 4);
    EXPECT_EQ(one.assignment, four.assignment);
  }
}

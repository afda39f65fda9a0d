#include <gtest/gtest.h>

#include <cmath>

#include "detksat/characteristic.hpp"
#include "detksat/covering.hpp"
#include "test_util.hpp"

using namespace detksat;
using namespace detksat::testing;

namespace {

StructuredSpace cube_space(std::size_t w) { return {{SpaceFactor::cube(w)}}; }

SolutionSpace one_chain_space() { return solution_space(build_chain({C({1, 2, 3})}, 3)); }

}  // namespace

TEST(CubeCode, WeightArgument) {
  CodeFamily c = cover_cube(4, 2);
  EXPECT_LE(c.num_centers(), 2u);
  EXPECT_TRUE(verify_coverage(c, cube_space(4)).ok());
}

TEST(CubeCode, RadiusZeroIsWholeSpace) {
  CodeFamily c = cover_cube(1, 0);
  EXPECT_EQ(c.num_centers(), 2u);
  EXPECT_TRUE(verify_coverage(c, cube_space(1)).ok());
}

TEST(CubeCode, GreedyBound) {
  CodeFamily c = cover_cube(10, 3);
  const double bound = (10 * std::log(2.0) + 1) * 1024 / 176;
  EXPECT_LE(static_cast<double>(c.num_centers()), bound);
  const CoverageReport rep = verify_coverage(c, cube_space(10));
  EXPECT_FALSE(rep.sampled);
  EXPECT_EQ(rep.checked, 1024u);
  EXPECT_TRUE(rep.ok());
}

TEST(CubeCode, BlocksCoverWideCubes) {
  for (std::size_t w : {13u, 17u, 20u}) {
    const std::size_t r = (w + 2) / 3;
    const CubeCode blocks = cover_cube_blocks(w, r);
    EXPECT_GT(blocks.blocks.size(), 1u);
    std::size_t sum = 0;
    for (const auto& b : blocks.blocks) sum += b.max_radius();
    EXPECT_EQ(sum, r);
    EXPECT_TRUE(verify_coverage(ProductCode(blocks.blocks), cube_space(w)).ok()) << w;
  }
}

TEST(CubeCode, SmallRadiiExhaustive) {
  for (std::size_t w = 1; w <= 9; ++w)
    for (std::size_t r = 0; r <= w; ++r)
      EXPECT_TRUE(verify_coverage(cover_cube(w, r), cube_space(w)).ok()) << w << " " << r;
}

TEST(ProductCode, ConcatenatesCenters) {
  CodeFamily a{1, {{1, {Word::from_string("0")}}}};
  CodeFamily b{2, {{1, {Word::from_string("00"), Word::from_string("11")}}}};
  CodeFamily p = product_code({a, b});
  ASSERT_EQ(p.entries.size(), 1u);
  EXPECT_EQ(p.entries.at(2), (std::vector<Word>{Word::from_string("000"), Word::from_string("011")}));
  EXPECT_TRUE(verify_coverage(p, cube_space(3)).ok());
}

TEST(ProductCode, IdentityAndRadiusZero) {
  CodeFamily a = cover_cube(3, 1);
  EXPECT_EQ(product_code({a}).entries, a.entries);
  CodeFamily z1 = cover_cube(2, 0), z2 = cover_cube(1, 0);
  CodeFamily p = product_code({z1, z2});
  EXPECT_EQ(p.min_radius(), 0u);
  EXPECT_EQ(p.num_centers(), 8u);
}

TEST(ProductCode, LazyOrderAndCounts) {
  ProductCode pc({cover_cube(4, 1), ell_cover_power(one_chain_space(), 1, 3, Rational(3, 7))});
  std::size_t last = 0, seen = 0;
  pc.for_each([&](const Word& w, std::size_t r) {
    EXPECT_EQ(w.width(), pc.width());
    EXPECT_GE(r, last);
    last = r;
    ++seen;
    return false;
  });
  EXPECT_EQ(seen, pc.total_centers());
  std::uint64_t total = 0;
  for (std::size_t r = pc.min_radius(); r <= pc.max_radius(); ++r) total += pc.count_at(r);
  EXPECT_EQ(total, pc.total_centers());
}

TEST(EllCover, OneChainSquared) {
  const SolutionSpace A = one_chain_space();
  EXPECT_EQ(ell_for(2, 3, Rational(3, 7)), 4u);
  CodeFamily fam = ell_cover_power(A, 2, 3, Rational(3, 7));
  EXPECT_LE(fam.max_radius(), 4u);
  StructuredSpace s{{SpaceFactor::power(A, 2)}};
  const CoverageReport rep = verify_coverage(fam, s);
  EXPECT_EQ(rep.checked, 49u);
  EXPECT_TRUE(rep.ok());
}

TEST(EllCover, RadiusZeroNoWorseThanSpace) {
  const SolutionSpace A = one_chain_space();
  CodeFamily g = greedy_cover(A.words, {0}, 1);
  EXPECT_EQ(g.num_centers(), A.size());
  CodeFamily big = greedy_cover(A.words, {3}, 1);
  EXPECT_EQ(big.num_centers(), 1u);
}

TEST(EllCover, ReferenceChainsExhaustive) {
  for (const char* z : {"*", "n*", "p*", "t*", "nn*", "tn*"}) {
    const SolutionSpace A = solution_space(realize_chain(z));
    for (std::size_t nu = 1; nu * A.width() <= 20; ++nu) {
      const Rational lambda = chain_lambda(z);
      ProductCode pc = ell_cover_power_blocks(A, nu, 3, lambda);
      EXPECT_TRUE(verify_coverage(pc, StructuredSpace{{SpaceFactor::power(A, nu)}}).ok())
          << z << " nu=" << nu;
    }
  }
}

TEST(GeneralizedCode, CubeOnly) {
  StructuredSpace s = cube_space(6);
  ProductCode pc = build_generalized_code(s, Rational(1, 3), {}, 3);
  EXPECT_EQ(pc.min_radius(), 2u);
  EXPECT_EQ(pc.max_radius(), 2u);
  EXPECT_TRUE(verify_coverage(pc, s).ok());
}

TEST(GeneralizedCode, PowerOnly) {
  const SolutionSpace A = one_chain_space();
  StructuredSpace s{{SpaceFactor::power(A, 2)}};
  ProductCode pc = build_generalized_code(s, Rational(1, 3), {Rational(3, 7)}, 3);
  EXPECT_EQ(pc.materialize().entries, ell_cover_power(A, 2, 3, Rational(3, 7)).entries);
}

TEST(GeneralizedCode, CubeTimesChain) {
  StructuredSpace s{{SpaceFactor::cube(4), SpaceFactor::power(one_chain_space(), 1)}};
  ProductCode pc = build_generalized_code(s, Rational(1, 3), {Rational(3, 7)}, 3);
  const CoverageReport rep = verify_coverage(pc, s);
  EXPECT_EQ(rep.checked, 112u);
  EXPECT_TRUE(rep.ok());
}

TEST(GeneralizedCode, MixedSpacesUpToTwentyBits) {
  const SolutionSpace n2 = solution_space(realize_chain("n*"));
  for (std::size_t cube = 0; cube <= 10; cube += 5)
    for (std::size_t nu = 1; cube + nu * n2.width() <= 20; ++nu) {
      StructuredSpace s;
      if (cube) s.factors.push_back(SpaceFactor::cube(cube));
      s.factors.push_back(SpaceFactor::power(n2, nu));
      ProductCode pc = build_generalized_code(s, Rational(1, 3), {chain_lambda("n*")}, 3);
      const CoverageReport rep = verify_coverage(pc, s);
      EXPECT_FALSE(rep.sampled);
      EXPECT_TRUE(rep.ok()) << s.describe();
    }
}

TEST(GeneralizedCode, SampledAboveGuard) {
  StructuredSpace s = cube_space(30);
  ProductCode pc = build_generalized_code(s, Rational(1, 4), {}, 3);
  const CoverageReport rep = verify_coverage(pc, s, 2000);
  EXPECT_TRUE(rep.sampled);
  EXPECT_TRUE(rep.ok());
}

TEST(GeneralizedCode, RejectsRho) {
  StructuredSpace s = cube_space(4);
  EXPECT_THROW(build_generalized_code(s, Rational(1, 2), {}, 3), PreconditionError);
  EXPECT_THROW(build_generalized_code(s, Rational(0), {}, 3), PreconditionError);
}

TEST(DumpCode, Format) {
  const std::string d = dump_code(cover_cube(2, 1), "cube 2");
  EXPECT_EQ(d.rfind("# cube 2\n", 0), 0u);
  EXPECT_NE(d.find("r 1 "), std::string::npos);
}

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "detksat/chain.hpp"
#include "detksat/formula.hpp"
#include "detksat/rational.hpp"

namespace detksat {

/// Radius-indexed sets of centers. Together the balls B(c, r) for every
/// c in entries[r] cover the space the family was built for.
struct CodeFamily {
  std::size_t width = 0;
  std::map<std::size_t, std::vector<Word>> entries;

  std::size_t num_centers() const;
  std::size_t min_radius() const;
  std::size_t max_radius() const;
};

/// Largest universe the greedy set cover works on directly.
inline constexpr std::size_t kGreedyMaxWords = 4096;
/// Cubes wider than this are covered block by block.
inline constexpr std::size_t kCubeBlockBits = 12;

/// Weighted greedy set cover of `universe` by balls centred on universe
/// words. A candidate (c, r) scores newly_covered / cost_base^r; ties go to
/// the smaller radius, then to the lexicographically smaller center.
/// cost_base = 1 makes the score plain marginal coverage.
CodeFamily greedy_cover(const std::vector<Word>& universe,
                        const std::vector<std::size_t>& radii, unsigned cost_base);

/// Cube code split into blocks of at most kCubeBlockBits bits. Block radii
/// sum to the requested radius.
struct CubeCode {
  std::size_t width = 0;
  std::size_t radius = 0;
  std::vector<CodeFamily> blocks;
};

CubeCode cover_cube_blocks(std::size_t width, std::size_t radius);

/// Single-radius covering code of {0,1}^width.
CodeFamily cover_cube(std::size_t width, std::size_t radius);

/// Product of families, enumerated lazily. A product entry picks one radius
/// per factor; its radius is the sum.
class ProductCode {
 public:
  ProductCode() = default;
  explicit ProductCode(std::vector<CodeFamily> factors);

  const std::vector<CodeFamily>& factors() const { return factors_; }
  std::size_t width() const;
  std::size_t min_radius() const;
  std::size_t max_radius() const;
  /// Number of centers whose total radius is r.
  std::uint64_t count_at(std::size_t r) const;
  std::uint64_t total_centers() const;

  /// Visits centers by ascending total radius, then radius tuple in
  /// lexicographic order, then center tuple in lexicographic order. Stops
  /// early when `fn` returns true; returns whether it did.
  bool for_each(const std::function<bool(const Word&, std::size_t)>& fn) const;

  /// Materialises the product; throws PreconditionError above `limit`.
  CodeFamily materialize(std::uint64_t limit = 1u << 22) const;

 private:
  std::vector<CodeFamily> factors_;
};

/// Product of single-radius codes: every concatenation, radius = sum.
CodeFamily product_code(const std::vector<CodeFamily>& codes);

/// floor(-nu log_{k-1} lambda + 2), computed exactly.
std::size_t ell_for(std::size_t nu, unsigned k, const Rational& lambda);

/// All words of A^nu in product order.
std::vector<Word> power_words(const SolutionSpace& A, std::size_t nu);

/// Radius family for A^nu with radii in [0, ell]. When |A|^nu exceeds the
/// greedy limit the exponent is split into blocks whose families are
/// combined by product; radii then run up to the sum of block ells.
ProductCode ell_cover_power_blocks(const SolutionSpace& A, std::size_t nu, unsigned k,
                                   const Rational& lambda);

CodeFamily ell_cover_power(const SolutionSpace& A, std::size_t nu, unsigned k,
                           const Rational& lambda);

/// One factor of a structured Hamming space: a cube {0,1}^w or A^nu.
struct SpaceFactor {
  std::size_t cube_width = 0;
  SolutionSpace space;
  std::size_t exponent = 0;

  static SpaceFactor cube(std::size_t w);
  static SpaceFactor power(SolutionSpace A, std::size_t nu);
  bool is_cube() const { return exponent == 0; }
  std::size_t width() const;
  long double log2_size() const;
};

struct StructuredSpace {
  std::vector<SpaceFactor> factors;

  std::size_t width() const;
  long double log2_size() const;
  bool contains(const Word& w) const;
  /// Visits every word; stops when fn returns true.
  bool for_each(const std::function<bool(const Word&)>& fn) const;
  Word sample(std::uint64_t& state) const;
  std::string describe() const;
};

/// Cube factor at radius ceil(rho n') and one radius family per power
/// factor, combined by product.
ProductCode build_generalized_code(const StructuredSpace& space, const Rational& rho,
                                   const std::vector<Rational>& lambdas, unsigned k);

struct CoverageReport {
  bool sampled = false;
  std::uint64_t checked = 0;
  std::uint64_t uncovered = 0;
  bool centers_inside = true;
  bool ok() const { return uncovered == 0 && centers_inside; }
};

inline constexpr std::size_t kExhaustiveCoverageBits = 20;

/// Checks every word when the space is at most kExhaustiveCoverageBits
/// wide, otherwise `samples` words drawn from a fixed seed.
CoverageReport verify_coverage(const CodeFamily& code, const StructuredSpace& space,
                               std::uint64_t samples = 100000, std::uint64_t seed = 1);
CoverageReport verify_coverage(const ProductCode& code, const StructuredSpace& space,
                               std::uint64_t samples = 100000, std::uint64_t seed = 1);

/// "r <radius> <bits>" per center after a header line.
std::string dump_code(const CodeFamily& code, const std::string& header);

}  // namespace detksat

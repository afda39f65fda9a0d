#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace detksat {

/// Variables are 1-based, contiguous from 1 to n.
using Var = std::uint32_t;

class Lit {
 public:
  constexpr Lit() = default;
  constexpr Lit(Var v, bool positive)
      : code_(positive ? static_cast<std::int32_t>(v)
                       : -static_cast<std::int32_t>(v)) {}

  static constexpr Lit from_dimacs(std::int32_t d) {
    Lit l;
    l.code_ = d;
    return l;
  }

  constexpr Var var() const {
    return static_cast<Var>(code_ < 0 ? -code_ : code_);
  }
  constexpr bool positive() const { return code_ > 0; }
  constexpr std::int32_t dimacs() const { return code_; }
  constexpr Lit operator~() const { return from_dimacs(-code_); }

  constexpr auto operator<=>(const Lit&) const = default;

 private:
  std::int32_t code_ = 0;
};

/// A disjunction of literals. A bottom clause has no literals and stands
/// for a clause falsified by a restriction.
struct Clause {
  std::vector<Lit> lits;
  bool bottom = false;

  Clause() = default;
  Clause(std::initializer_list<Lit> l) : lits(l) {}
  explicit Clause(std::vector<Lit> l) : lits(std::move(l)) {}

  static Clause falsum() {
    Clause c;
    c.bottom = true;
    return c;
  }

  std::size_t size() const { return lits.size(); }
  bool contains(Lit l) const;
  bool has_var(Var v) const;
  /// The literal of `v` in this clause, if any.
  std::optional<Lit> lit_of(Var v) const;

  bool operator==(const Clause&) const = default;
};

class PartialAssignment {
 public:
  PartialAssignment() = default;
  explicit PartialAssignment(std::size_t num_vars)
      : vals_(num_vars + 1, kUnset) {}

  std::size_t num_vars() const { return vals_.empty() ? 0 : vals_.size() - 1; }

  std::optional<bool> value(Var v) const {
    if (v >= vals_.size() || vals_[v] == kUnset) return std::nullopt;
    return vals_[v] == 1;
  }
  std::optional<bool> value(Lit l) const {
    auto v = value(l.var());
    if (!v) return std::nullopt;
    return *v == l.positive();
  }
  bool assigned(Var v) const { return value(v).has_value(); }

  void assign(Var v, bool b);
  /// Makes `l` true.
  void set_true(Lit l) { assign(l.var(), l.positive()); }
  void unassign(Var v) { vals_.at(v) = kUnset; }

  /// Copies every binding of `other` into this assignment.
  void merge(const PartialAssignment& other);

  std::size_t assigned_count() const;
  bool is_total() const { return assigned_count() == num_vars(); }

  /// Unassigned variables default to 0.
  PartialAssignment completed() const;

  /// Bit string x1 x2 ... xn, '-' for unassigned.
  std::string to_string() const;

  bool operator==(const PartialAssignment&) const = default;

 private:
  static constexpr std::int8_t kUnset = -1;
  std::vector<std::int8_t> vals_;
};

/// Fixed-length bit vector.
class Word {
 public:
  Word() = default;
  explicit Word(std::size_t width) : width_(width), blocks_((width + 63) / 64) {}

  static Word from_string(std::string_view bits);
  /// Bit i of the word is bit i of `bits`.
  static Word from_bits(std::size_t width, std::uint64_t bits);

  std::size_t width() const { return width_; }
  bool get(std::size_t i) const { return (blocks_[i / 64] >> (i % 64)) & 1U; }
  void set(std::size_t i, bool b);
  void flip(std::size_t i) { blocks_[i / 64] ^= std::uint64_t{1} << (i % 64); }
  std::size_t weight() const;
  /// Low 64 bits.
  std::uint64_t to_bits() const { return blocks_.empty() ? 0 : blocks_[0]; }
  const std::vector<std::uint64_t>& blocks() const { return blocks_; }

  Word concat(const Word& tail) const;
  /// Bits [offset, offset + len).
  Word slice(std::size_t offset, std::size_t len) const;
  std::string to_string() const;

  auto operator<=>(const Word&) const = default;

 private:
  std::size_t width_ = 0;
  std::vector<std::uint64_t> blocks_;
};

std::size_t hamming_distance(const Word& a, const Word& b);

/// Thrown when a clause or formula violates its structural invariants.
class FormulaError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when an operation is called outside its precondition.
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// CNF over variables 1..n. Every clause optionally remembers the index of
/// its ancestor in the unrestricted input (its original form).
class Formula {
 public:
  static constexpr std::int64_t kNoOrigin = -1;

  Formula() = default;
  explicit Formula(std::size_t num_vars) : num_vars_(num_vars) {}
  /// Clause i gets origin i.
  Formula(std::size_t num_vars, std::vector<Clause> clauses);

  void add_clause(Clause c, std::int64_t origin = kNoOrigin);

  std::size_t num_vars() const { return num_vars_; }
  std::size_t num_clauses() const { return clauses_.size(); }
  bool empty() const { return clauses_.empty(); }
  const std::vector<Clause>& clauses() const { return clauses_; }
  const Clause& clause(std::size_t i) const { return clauses_[i]; }
  std::int64_t origin(std::size_t i) const { return origins_[i]; }
  const std::vector<std::int64_t>& origins() const { return origins_; }

  /// Replaces clause i, keeping its origin.
  void replace_clause(std::size_t i, Clause c);

  std::size_t width() const;
  bool has_bottom() const;
  /// Number of clauses of exactly `size` literals.
  std::size_t count_of_size(std::size_t size) const;
  /// Sorted variables that occur in some clause.
  std::vector<Var> occurring_vars() const;

  bool satisfied_by(const PartialAssignment& a) const;

  /// Structural equality: same n and clause list; origins are ignored.
  bool operator==(const Formula& o) const {
    return num_vars_ == o.num_vars_ && clauses_ == o.clauses_;
  }

 private:
  std::size_t num_vars_ = 0;
  std::vector<Clause> clauses_;
  std::vector<std::int64_t> origins_;
};

Formula parse_dimacs(std::istream& in);
Formula parse_dimacs(std::string_view text);
std::string to_dimacs(const Formula& f);

/// Removes satisfied clauses and false literals; falsified clauses become
/// bottom. Origins are preserved.
Formula restrict(const Formula& f, const PartialAssignment& alpha);

struct Propagation {
  Formula formula;
  /// Literals forced by propagation (and the seed assignment, if any).
  PartialAssignment assignment;
  bool conflict = false;
};

/// Restricts by `seed` and runs unit propagation until no 1-clause is left
/// or a bottom clause appears. Units are processed in clause order.
Propagation propagate(const Formula& f, const PartialAssignment& seed);
Propagation propagate(const Formula& f);

Formula unit_propagate(const Formula& f);

/// Total assignment satisfying a formula of width at most 2, or nullopt.
/// Variables not occurring in `f` are set to 0.
std::optional<PartialAssignment> solve_2sat(const Formula& f);

inline constexpr std::size_t kBruteForceMaxVars = 30;

/// Enumerates assignments in lexicographic order of x1 x2 ... xn (x1 most
/// significant) and returns the first satisfying one.
std::optional<PartialAssignment> brute_force_sat(const Formula& f);

std::ostream& operator<<(std::ostream& os, const Clause& c);
std::ostream& operator<<(std::ostream& os, const Formula& f);

}  // namespace detksat

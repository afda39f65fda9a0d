#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "detksat/rational.hpp"

namespace detksat {

struct ChainTypeRecord {
  int type_id = 0;
  std::string zeta;
  bool r2 = false;
  Rational b;
  std::size_t eta = 0;
  Rational lambda;
  long double f = 0;
};

/// One row of the expected 3-SAT chain-type table: the characteristic value
/// and the known leading digits of f.
struct ReferenceChainType {
  int type_id;
  std::string_view zeta;
  bool r2;
  std::string_view lambda;
  std::string_view f_prefix;
};

/// The 38 expected chain types, in table order.
const std::vector<ReferenceChainType>& reference_chain_types();

/// Computes b, eta, lambda and f for a chain type.
ChainTypeRecord make_chain_record(int type_id, std::string zeta, bool r2);

/// Recomputes every reference row from a concrete chain of its type.
std::vector<ChainTypeRecord> reproduce_chain_table();

struct TableMismatch {
  int type_id;
  std::string field;
  std::string expected;
  std::string actual;
};

/// Itemised differences between computed rows and the reference table: zeta,
/// r2 flag, exact lambda and the leading f digits.
std::vector<TableMismatch> check_chain_table(const std::vector<ChainTypeRecord>& rows);

/// True when the decimal expansion of f starts with `prefix` (truncation).
bool f_matches_prefix(long double f, std::string_view prefix);

/// f of the single-clause chain "*".
long double f_single_clause();

/// Whether the forced termination of z (branch number doubled) keeps f at
/// or below `threshold`.
bool forced_termination_allowed(std::string_view z, long double threshold);

inline constexpr std::size_t kGeneratorMaxLength = 8;

struct GeneratedChainTypes {
  std::vector<ChainTypeRecord> records;
  /// Reference types (canonical form) the generator did not produce.
  std::vector<std::string> missing;
  /// Generated types (canonical form) absent from the reference table.
  std::vector<std::string> extra;
  /// Some state reached max_len (or the solver guard) while still open.
  bool incomplete = false;
  std::vector<std::string> open_states;
};

/// Breadth-first closure of the chain-type rules from the empty string.
/// Emitted types equal to the reversal of an earlier one are merged.
GeneratedChainTypes generate_chain_types(long double f_threshold,
                                         std::size_t max_len);

/// TSV rows "id zeta r2 b eta lambda f". Exact mode prints b and lambda as
/// p/q, otherwise as 6-decimal floats; f always has 6 decimals.
std::string format_chain_table(const std::vector<ChainTypeRecord>& rows, bool exact);

}  // namespace detksat

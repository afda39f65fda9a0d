#include "detksat/chain_table.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <set>
#include <sstream>

#include "detksat/chain.hpp"
#include "detksat/characteristic.hpp"

namespace detksat {

const std::vector<ReferenceChainType>& reference_chain_types() {
  static const std::vector<ReferenceChainType> rows = {
      {1, "*", false, "3/7", "0.98586"},
      {2, "n*", false, "27/110", "0.984"},
      {3, "p*", false, "81/331", "0.983"},
      {4, "t*", false, "15/46", "0.984"},
      {5, "nn*", false, "9/64", "0.984"},
      {6, "np*", false, "81/578", "0.983"},
      {7, "nt*", false, "45/241", "0.984"},
      {8, "pp*", true, "243/1739", "0.98580"},
      {9, "pt*", false, "27/145", "0.983"},
      {10, "nnn*", false, "243/3016", "0.984"},
      {11, "nnp*", false, "729/9080", "0.983"},
      {12, "nnt*", false, "135/1262", "0.984"},
      {13, "npn*", false, "243/3028", "0.983"},
      {14, "npp*", true, "729/9110", "0.9853"},
      {15, "npt*", false, "45/422", "0.983"},
      {16, "ntn*", false, "405/3788", "0.984"},
      {17, "pnp*", true, "2187/27334", "0.9853"},
      {18, "pnt*", false, "405/3799", "0.983"},
      {19, "tnt*", false, "25/176", "0.984"},
      {20, "nnnn*", true, "243/5264", "0.98583"},
      {21, "nnnp*", true, "729/15848", "0.9854"},
      {22, "nnnt*", false, "405/6608", "0.984"},
      {23, "nnpn*", true, "729/15856", "0.9855"},
      {24, "nnpp*", true, "2187/47704", "0.984"},
      {25, "nnpt*", true, "1215/19888", "0.9854"},
      {26, "npnp*", true, "2187/47732", "0.9850"},
      {27, "npnt*", true, "405/6634", "0.9856"},
      {28, "ntnn*", false, "135/2204", "0.984"},
      {29, "ntnp*", true, "1215/19904", "0.9856"},
      {30, "ntnt*", false, "675/8299", "0.984"},
      {31, "pnnp*", true, "729/15904", "0.9850"},
      {32, "pnnt*", true, "1215/19894", "0.9855"},
      {33, "tnnt*", false, "45/553", "0.984"},
      {34, "tnpp*", true, "405/6653", "0.9850"},
      {35, "tnpt*", true, "675/8321", "0.9855"},
      {36, "tnnnn*", true, "243/6920", "0.9855"},
      {37, "tnnnp*", true, "3645/104168", "0.9852"},
      {38, "tnnnt*", true, "225/4826", "0.9856"},
  };
  return rows;
}

ChainTypeRecord make_chain_record(int type_id, std::string zeta, bool r2) {
  ChainTypeRecord r;
  r.type_id = type_id;
  r.r2 = r2;
  r.b = branch_number(zeta, r2);
  r.eta = variable_count(zeta);
  r.lambda = chain_lambda(zeta);
  r.f = f_value(r.b, r.eta, r.lambda);
  r.zeta = std::move(zeta);
  return r;
}

std::vector<ChainTypeRecord> reproduce_chain_table() {
  std::vector<ChainTypeRecord> out;
  for (const auto& ref : reference_chain_types())
    out.push_back(make_chain_record(ref.type_id, std::string(ref.zeta), ref.r2));
  return out;
}

bool f_matches_prefix(long double f, std::string_view prefix) {
  const auto dot = prefix.find('.');
  const std::size_t digits = dot == std::string_view::npos ? 0 : prefix.size() - dot - 1;
  const long double scale = std::pow(10.0L, static_cast<long double>(digits));
  const long double truncated = std::floor(f * scale);
  const long double expected =
      std::round(std::stold(std::string(prefix)) * scale);
  return truncated == expected;
}

std::vector<TableMismatch> check_chain_table(const std::vector<ChainTypeRecord>& rows) {
  std::vector<TableMismatch> out;
  const auto& ref = reference_chain_types();
  if (rows.size() != ref.size())
    out.push_back({0, "rows", std::to_string(ref.size()), std::to_string(rows.size())});
  for (std::size_t i = 0; i < std::min(rows.size(), ref.size()); ++i) {
    const auto& r = rows[i];
    const auto& e = ref[i];
    if (r.zeta != e.zeta) out.push_back({e.type_id, "zeta", std::string(e.zeta), r.zeta});
    if (r.r2 != e.r2)
      out.push_back({e.type_id, "r2", e.r2 ? "r2" : "-", r.r2 ? "r2" : "-"});
    if (r.lambda != parse_rational(e.lambda))
      out.push_back({e.type_id, "lambda", std::string(e.lambda), to_string(r.lambda)});
    if (!f_matches_prefix(r.f, e.f_prefix)) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.8Lf", r.f);
      out.push_back({e.type_id, "f", std::string(e.f_prefix) + "...", buf});
    }
  }
  return out;
}

long double f_single_clause() {
  return f_value(branch_number("*", false), variable_count("*"), chain_lambda("*"));
}

bool forced_termination_allowed(std::string_view z, long double threshold) {
  return f_value(branch_number(z, true), variable_count(z), chain_lambda(z)) <= threshold;
}

GeneratedChainTypes generate_chain_types(long double f_threshold, std::size_t max_len) {
  if (max_len > kGeneratorMaxLength)
    throw PreconditionError("generate_chain_types: max_len " + std::to_string(max_len) +
                            " exceeds guard " + std::to_string(kGeneratorMaxLength));
  GeneratedChainTypes g;
  std::deque<std::string> queue = {""};
  std::set<std::string> emitted;
  int next_id = 1;

  while (!queue.empty()) {
    const std::string s = queue.front();
    queue.pop_front();

    const std::string z = s + "*";
    if (z.size() > max_len) {
      g.incomplete = true;
      g.open_states.push_back(s);
      continue;
    }
    Rational lambda;
    try {
      lambda = chain_lambda(z);
    } catch (const PreconditionError&) {
      g.incomplete = true;
      g.open_states.push_back(s);
      continue;
    }
    const bool r2 = forced_termination_allowed(z, f_threshold);
    if (emitted.insert(canonical_zeta(z)).second)
      g.records.push_back(make_chain_record(next_id++, z, r2));
    if (r2) continue;
    if (!s.empty() && s.back() == 't') {
      queue.push_back(s + "n");
    } else {
      queue.push_back(s + "n");
      queue.push_back(s + "p");
      queue.push_back(s + "t");
    }
  }

  std::set<std::string> expected;
  for (const auto& ref : reference_chain_types())
    expected.insert(canonical_zeta(ref.zeta));
  for (const auto& e : expected)
    if (!emitted.count(e)) g.missing.push_back(e);
  for (const auto& e : emitted)
    if (!expected.count(e)) g.extra.push_back(e);
  return g;
}

std::string format_chain_table(const std::vector<ChainTypeRecord>& rows, bool exact) {
  std::ostringstream os;
  char buf[64];
  for (const auto& r : rows) {
    os << r.type_id << '\t' << r.zeta << '\t' << (r.r2 ? "r2" : "-") << '\t';
    if (exact) {
      os << to_string(r.b) << '\t' << r.eta << '\t' << to_string(r.lambda);
    } else {
      std::snprintf(buf, sizeof buf, "%.6Lf", to_long_double(r.b));
      os << buf << '\t' << r.eta << '\t';
      std::snprintf(buf, sizeof buf, "%.6Lf", to_long_double(r.lambda));
      os << buf;
    }
    std::snprintf(buf, sizeof buf, "%.6Lf", r.f);
    os << '\t' << buf << '\n';
  }
  return os.str();
}

}  // namespace detksat

#include "detksat/report.hpp"

#include <stdexcept>

#include "json.hpp"

namespace detksat {

std::string chain_vector_key(const ChainType& t) { return t.zeta + (t.r2 ? " r2" : ""); }

std::string run_report_json(const Formula& f, const SolveResult& r, SolveMode mode,
                            int indent) {
  using nlohmann::json;
  json j;
  j["schema"] = kReportSchema;
  j["verdict"] = r.sat ? "SAT" : "UNSAT";
  j["mode"] = to_string(mode);
  j["path"] = to_string(r.path);
  j["num_vars"] = f.num_vars();
  j["num_clauses"] = f.num_clauses();
  if (r.sat) {
    if (!r.assignment || !f.satisfied_by(*r.assignment))
      throw std::logic_error("run_report_json: SAT verdict without a verified assignment");
    j["assignment"] = r.assignment->to_string();
    json lits = json::array();
    for (Var v = 1; v <= f.num_vars(); ++v)
      lits.push_back(*r.assignment->value(v) ? static_cast<long>(v) : -static_cast<long>(v));
    j["literals"] = lits;
  } else {
    j["assignment"] = nullptr;
  }
  const SolveStats& s = r.stats;
  json st;
  st["branch_nodes"] = s.branch_nodes;
  st["branch_leaves"] = s.branch_leaves;
  st["ksat_patterns"] = s.ksat_patterns;
  st["local_search_calls"] = s.local_search_calls;
  st["balls_searched"] = s.balls_searched;
  st["code_centers"] = s.code_centers;
  json sizes = json::object();
  for (auto [rad, count] : s.code_sizes) sizes[std::to_string(rad)] = count;
  st["code_sizes"] = sizes;
  json chains = json::object();
  for (const auto& [t, count] : s.chains) chains[chain_vector_key(t)] = count;
  st["chain_vector"] = chains;
  st["zeta"] = s.zeta;
  st["accounting_holds"] = s.accounting_holds;
  j["stats"] = st;
  if (!r.trace.empty()) j["trace"] = r.trace;
  return j.dump(indent);
}

}  // namespace detksat

#pragma once

#include <string>

#include "detksat/formula.hpp"
#include "detksat/solver.hpp"

namespace detksat {

inline constexpr int kReportSchema = 1;

/// JSON run report. A SAT verdict is re-checked against `f` first; a
/// failing assignment throws std::logic_error instead of being reported.
std::string run_report_json(const Formula& f, const SolveResult& r, SolveMode mode,
                            int indent = 2);

/// "chain type [r2]" -> count, e.g. {"nn*": 2, "* r2": 1}.
std::string chain_vector_key(const ChainType& t);

}  // namespace detksat

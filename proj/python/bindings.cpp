#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "detksat/bounds.hpp"
#include "detksat/chain_table.hpp"
#include "detksat/characteristic.hpp"
#include "detksat/covering.hpp"
#include "detksat/generator.hpp"
#include "detksat/report.hpp"
#include "detksat/solver.hpp"

namespace py = pybind11;
using namespace detksat;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Deterministic k-SAT toolkit";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);

  m.def(
      "solve",
      [](const std::string& dimacs, const std::string& mode, unsigned threads) {
        const Formula f = parse_dimacs(std::string_view(dimacs));
        SolveOptions o;
        o.mode = parse_mode(mode);
        o.threads = threads;
        py::gil_scoped_release release;
        const SolveResult r = solve_ksat(f, o);
        return run_report_json(f, r, o.mode, -1);
      },
      py::arg("dimacs"), py::arg("mode") = "full", py::arg("threads") = 1,
      "JSON run report for a DIMACS string.");

  m.def(
      "brute_force",
      [](const std::string& dimacs) -> std::optional<std::string> {
        const auto a = brute_force_sat(parse_dimacs(std::string_view(dimacs)));
        if (!a) return std::nullopt;
        return a->to_string();
      },
      py::arg("dimacs"));

  m.def(
      "generate",
      [](unsigned k, std::size_t n, std::size_t mm, std::uint64_t seed) {
        return to_dimacs(random_kcnf({k, n, mm, seed}));
      },
      py::arg("k"), py::arg("n"), py::arg("m"), py::arg("seed"));

  m.def("bounds", [](unsigned kmax) {
    std::vector<std::tuple<unsigned, double, double>> out;
    for (const BoundRow& r : ck_recurrence(kmax))
      out.emplace_back(r.k, static_cast<double>(r.c), static_cast<double>(r.nu));
    return out;
  }, py::arg("kmax") = 6);

  m.def("c3", [] { return static_cast<double>(c3()); });

  m.def(
      "chain_lambda",
      [](const std::string& zeta, unsigned k) {
        return to_string(solve_characteristic(solution_space(realize_chain(zeta)), k).lambda);
      },
      py::arg("zeta"), py::arg("k") = 3, "Characteristic value as 'p/q'.");

  m.def(
      "ell_for",
      [](std::size_t nu, unsigned k, const std::string& lambda) {
        return ell_for(nu, k, parse_rational(lambda));
      },
      py::arg("nu"), py::arg("k"), py::arg("lambda_"));

  m.def("chain_table_mismatches", [] { return check_chain_table(reproduce_chain_table()).size(); });
}

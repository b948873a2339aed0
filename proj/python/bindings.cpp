#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "cli_commands.hpp"
#include "ordgne/corpus.hpp"
#include "ordgne/error.hpp"
#include "ordgne/problem_io.hpp"
#include "ordgne/qvi_solver.hpp"
#include "ordgne/verifier.hpp"

namespace py = pybind11;
using namespace ordgne;

namespace {

py::dict certificate_dict(const Certificate& c) {
  py::dict d;
  d["kind"] = to_string(c.kind);
  d["passed"] = c.passed;
  d["expected_failure"] = c.expected_failure;
  d["resolution"] = c.resolution ? py::cast(*c.resolution) : py::none();
  d["margin"] = c.margin ? py::cast(*c.margin) : py::none();
  if (c.witness) {
    py::dict w;
    w["player"] = c.witness->player ? py::cast(*c.witness->player) : py::none();
    w["game_index"] = c.witness->game_index ? py::cast(*c.witness->game_index) : py::none();
    w["point"] = c.witness->point;
    d["witness"] = w;
  } else {
    d["witness"] = py::none();
  }
  py::dict counts;
  for (const auto& [k, v] : c.counts) counts[py::str(k)] = v;
  d["counts"] = counts;
  d["detail"] = c.detail;
  return d;
}

Profile to_profile(const GameSpec& g, std::vector<double> point) {
  if (point.size() != g.total_dim()) throw Error(ErrorKind::dimension_mismatch, "point has wrong dimension");
  return Profile::from_stacked(g, std::move(point));
}

std::vector<std::string> sources(const Selection& s) {
  std::vector<std::string> out;
  for (auto src : s.sources) out.emplace_back(to_string(src));
  return out;
}

}  // namespace

PYBIND11_MODULE(_ordgne, m) {
  m.doc() = "Solver and verifier for generalized ordinal Nash games";

  py::register_exception<Error>(m, "OrdgneError", PyExc_ValueError);

  py::class_<GameSpec>(m, "Game")
      .def_property_readonly("player_count", &GameSpec::player_count)
      .def_property_readonly("total_dim", &GameSpec::total_dim)
      .def_property_readonly("digest", [](const GameSpec& g) { return spec_digest(g); })
      .def("dump", [](const GameSpec& g) { return dump_problem(g); })
      .def("issues", [](const GameSpec& g) {
        std::vector<std::pair<std::string, std::string>> out;
        for (const auto& i : validate_spec(g)) out.emplace_back(i.code, i.message);
        return out;
      })
      .def("__repr__", [](const GameSpec& g) {
        return "<Game players=" + std::to_string(g.player_count()) + " dim=" + std::to_string(g.total_dim()) + ">";
      });

  m.def("parse_problem", [](const std::string& text) { return parse_problem(text); }, py::arg("text"));
  m.def("load_problem", &load_problem, py::arg("path"));
  m.def("example_names", &example_names);
  m.def(
      "example",
      [](const std::string& name) {
        auto g = example_by_name(name);
        if (!g) throw Error(ErrorKind::invalid_argument, "unknown example '" + name + "'");
        return *g;
      },
      py::arg("name"));

  m.def(
      "solve",
      [](const GameSpec& g, double step, double tol, int max_iters, int restarts, std::uint64_t seed) {
        SolverConfig cfg;
        cfg.step = step;
        cfg.tol = tol;
        cfg.max_iters = max_iters;
        cfg.restarts = restarts;
        cfg.seed = seed;
        SvipSolution s;
        {
          py::gil_scoped_release release;
          s = solve_svip(g, cfg);
        }
        py::dict d;
        d["point"] = std::vector<double>(s.point.stacked().begin(), s.point.stacked().end());
        d["operator_value"] = s.operator_value.stacked;
        d["selection_sources"] = sources(s.operator_value);
        d["residual"] = s.residual;
        d["iterations"] = s.iters;
        d["converged"] = s.converged;
        d["restart"] = s.restart;
        return d;
      },
      py::arg("game"), py::arg("step") = 0.1, py::arg("tol") = 1e-8, py::arg("max_iters") = 10000,
      py::arg("restarts") = 16, py::arg("seed") = 42);

  m.def(
      "selection",
      [](const GameSpec& g, std::vector<double> point) {
        Selection s = selection_T(g, to_profile(g, std::move(point)));
        return py::make_tuple(s.stacked, sources(s));
      },
      py::arg("game"), py::arg("point"));

  m.def(
      "check_gne_grid",
      [](const GameSpec& g, std::vector<double> point, double h) {
        return certificate_dict(check_gne_grid(g, to_profile(g, std::move(point)), h));
      },
      py::arg("game"), py::arg("point"), py::arg("h") = 0.05);

  m.def(
      "check_svip",
      [](const GameSpec& g, std::vector<double> point, const std::vector<double>& xstar, double tol) {
        return certificate_dict(check_svip(g, to_profile(g, std::move(point)), xstar, tol));
      },
      py::arg("game"), py::arg("point"), py::arg("xstar"), py::arg("tol") = 1e-6);

  m.def(
      "brute_force_gne",
      [](const GameSpec& g, double h) {
        std::vector<std::vector<double>> out;
        for (const auto& [x, c] : brute_force_gne(g, h)) out.emplace_back(x.stacked().begin(), x.stacked().end());
        return out;
      },
      py::arg("game"), py::arg("h") = 0.05);

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code = cli::run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"));

  m.attr("__version__") = ORDGNE_VERSION;
}

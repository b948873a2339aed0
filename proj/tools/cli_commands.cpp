#include "cli_commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "ordgne/corpus.hpp"
#include "ordgne/error.hpp"
#include "ordgne/problem_io.hpp"
#include "ordgne/verifier.hpp"

namespace ordgne::cli {

namespace {

constexpr int kExitPass = 0;
constexpr int kExitError = 1;
constexpr int kExitFailed = 2;

struct Options {
  std::string file;
  std::string out;
  double step = 0.1;
  double tol = 1e-8;
  int max_iters = 10000;
  int restarts = 16;
  std::uint64_t seed = 42;
  double grid = 0.05;
  std::string point;
  std::string suite;
  int instances = 0;
  std::string name;
  bool run = false;
  std::string dump;
};

std::vector<double> parse_point(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    char* end = nullptr;
    const double v = std::strtod(item.c_str(), &end);
    if (item.empty() || end == item.c_str() || *end != '\0' || !std::isfinite(v)) {
      throw Error(ErrorKind::parse, "--point: cannot read '" + item + "' as a number");
    }
    out.push_back(v);
  }
  return out;
}

GameSpec load_valid(const std::string& path, Report& report) {
  GameSpec game = load_problem(path);
  for (const auto& issue : validate_spec(game)) {
    if (issue.severity == IssueSeverity::error) {
      throw Error(ErrorKind::invalid_argument, issue.code + ": " + issue.message);
    }
    report.warnings.push_back(issue.code + ": " + issue.message);
  }
  report.spec_digest = spec_digest(game);
  return game;
}

SolverConfig solver_config(const Options& o) {
  SolverConfig cfg;
  cfg.step = o.step;
  cfg.tol = o.tol;
  cfg.max_iters = o.max_iters;
  cfg.restarts = o.restarts;
  cfg.seed = o.seed;
  return cfg;
}

int cmd_solve(const Options& o, Report& report) {
  GameSpec game = load_valid(o.file, report);
  const SolverConfig cfg = solver_config(o);
  report.seed = cfg.seed;
  SvipSolution sol = solve_svip(game, cfg);
  if (sol.operator_value.all_full_space()) report.warnings.push_back("degenerate: empty strict preference");
  Certificate grid = check_gne_grid(game, sol.point, o.grid);
  const bool converged = sol.converged;
  if (!converged) report.errors.push_back("solver did not converge: residual " + format_number(sol.residual));
  report.solution = std::move(sol);
  const bool passed = grid.passed;
  report.certificates.push_back({"grid", std::move(grid)});
  return converged && passed ? kExitPass : kExitFailed;
}

int cmd_verify(const Options& o, Report& report) {
  GameSpec game = load_valid(o.file, report);
  auto values = parse_point(o.point);
  if (values.size() != game.total_dim()) {
    throw Error(ErrorKind::dimension_mismatch, "--point has " + std::to_string(values.size()) +
                                                   " coordinates, the game has " + std::to_string(game.total_dim()));
  }
  Certificate grid = check_gne_grid(game, Profile::from_stacked(game, std::move(values)), o.grid);
  const bool passed = grid.passed;
  report.certificates.push_back({"grid", std::move(grid)});
  return passed ? kExitPass : kExitFailed;
}

int cmd_theorems(const Options& o, Report& report) {
  if (o.instances < 1) throw Error(ErrorKind::invalid_argument, "--instances must be at least 1");
  report.seed = o.seed;
  const auto count = static_cast<std::size_t>(o.instances);
  if (o.suite == "t1") {
    auto games = suite_instances(Suite::theorem1, count, o.seed);
    SolverConfig cfg = solver_config(o);
    Certificate c = theorem1_property(games, cfg, o.grid);
    const bool passed = c.passed;
    report.certificates.push_back({"theorem1", std::move(c)});
    return passed ? kExitPass : kExitFailed;
  }
  if (o.suite == "t2") {
    auto games = suite_instances(Suite::theorem2, count, o.seed);
    Certificate c = theorem2_property(games, o.grid, 1e-6);
    const bool passed = c.passed;
    report.certificates.push_back({"theorem2", std::move(c)});
    const GameSpec counterexample = example_trivial_pref();
    Certificate cx = theorem2_property(std::span(&counterexample, 1), o.grid, 1e-6);
    const bool as_expected = cx.expected_failure;
    report.certificates.push_back({"theorem2:trivial-pref", std::move(cx)});
    return passed && as_expected ? kExitPass : kExitFailed;
  }
  if (o.suite == "existence") {
    auto games = suite_instances(Suite::existence, count, o.seed);
    Certificate c = existence_property(games, o.grid);
    const bool passed = c.passed;
    report.certificates.push_back({"existence", std::move(c)});
    return passed ? kExitPass : kExitFailed;
  }
  throw Error(ErrorKind::invalid_argument, "unknown suite '" + o.suite + "'");
}

int cmd_examples(const Options& o, Report& report) {
  auto game = example_by_name(o.name);
  if (!game) throw Error(ErrorKind::invalid_argument, "unknown example '" + o.name + "'");
  report.spec_digest = spec_digest(*game);
  if (!o.dump.empty()) save_problem(*game, o.dump);
  if (!o.run) return kExitPass;
  report.certificates = example_checks(o.name);
  const bool as_expected = std::all_of(report.certificates.begin(), report.certificates.end(),
                                       [](const NamedCertificate& c) {
                                         return c.certificate.passed != c.certificate.expected_failure;
                                       });
  return as_expected ? kExitPass : kExitFailed;
}

Certificate expect_failure(Certificate c) {
  c.expected_failure = true;
  return c;
}

}  // namespace

std::vector<NamedCertificate> example_checks(const std::string& name) {
  std::vector<NamedCertificate> out;
  const double h = 0.05;
  if (name == "trivial-pref") {
    GameSpec game = example_trivial_pref();
    Profile origin = Profile::from_stacked(game, {0.0, 0.0});
    out.push_back({"grid:(0,0)", check_gne_grid(game, origin, h)});
    for (int k = 0; k < 8; ++k) {
      const double angle = k * std::numbers::pi / 4.0;
      std::vector<double> dir{std::cos(angle), std::sin(angle)};
      out.push_back({"svip:(0,0):direction-" + std::to_string(k), expect_failure(check_svip(game, origin, dir, 1e-6))});
    }
  } else if (name == "coordinate-pref") {
    GameSpec game = example_coordinate_pref();
    SvipSolution sol = solve_svip(game, SolverConfig{});
    Certificate solved = check_gne_grid(game, sol.point, h);
    solved.detail = "solver point " + [&] {
      std::string s;
      for (double v : sol.point.stacked()) s += (s.empty() ? "" : ", ") + format_number(v);
      return "(" + s + ")";
    }() + "; " + solved.detail;
    out.push_back({"grid:solution", std::move(solved)});
    out.push_back({"grid:(0,0)", expect_failure(check_gne_grid(game, Profile::from_stacked(game, {0.0, 0.0}), h))});
    auto eqs = brute_force_gne(game, 0.1);
    Certificate bf;
    bf.kind = CertificateKind::gne_grid;
    bf.resolution = 0.1;
    bf.passed = eqs.size() == 1 && eqs.front().first.stacked()[0] == 1.0 && eqs.front().first.stacked()[1] == 1.0;
    bf.counts = {{"equilibria", static_cast<std::int64_t>(eqs.size())}};
    bf.detail = bf.passed ? "brute force finds exactly (1, 1)" : "brute force does not find exactly (1, 1)";
    out.push_back({"brute-force", std::move(bf)});
  } else if (name == "lhc-remark") {
    LhcRemark remark = example_lhc_remark();
    std::vector<std::vector<double>> bases{{-0.5, 0.0}, {0.0, 0.0}, {0.5, 0.0}};
    std::vector<std::vector<double>> dirs{{1.0, 0.0}, {-1.0, 0.0}, {0.0, 1.0}, {0.0, -1.0}};
    std::vector<double> steps;
    for (int k = 0; k <= 30; ++k) steps.push_back(0.1 * std::ldexp(1.0, -k));
    out.push_back({"lhc:U", lhc_probe(remark.contour, bases, dirs, steps, 1e-9)});
    out.push_back({"lhc:V", expect_failure(lhc_probe(remark.closed_variant, bases, dirs, steps, 1e-9))});
  } else if (name == "quadratic" || name == "arrow-debreu") {
    GameSpec game = *example_by_name(name);
    SvipSolution sol = solve_svip(game, SolverConfig{});
    out.push_back({"grid:solution", check_gne_grid(game, sol.point, h)});
    out.push_back({"existence", existence_property(std::span(&game, 1), h)});
  } else {
    throw Error(ErrorKind::invalid_argument, "unknown example '" + name + "'");
  }
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Solve and verify generalized ordinal Nash games", "ordgne"};
  app.set_version_flag("--version", std::string(ORDGNE_VERSION));
  app.require_subcommand(1);
  Options o;

  auto* solve = app.add_subcommand("solve", "Solve the SVIP reformulation and grid-check the result");
  solve->add_option("file", o.file, "Problem file")->required();
  solve->add_option("--step", o.step, "Fixed-point step")->capture_default_str();
  solve->add_option("--tol", o.tol, "Residual tolerance")->capture_default_str();
  solve->add_option("--max-iters", o.max_iters, "Iteration cap per restart")->capture_default_str();
  solve->add_option("--restarts", o.restarts, "Number of restarts")->capture_default_str();
  solve->add_option("--seed", o.seed, "Seed")->capture_default_str();
  solve->add_option("--grid", o.grid, "Grid resolution h")->capture_default_str();
  solve->add_option("--out", o.out, "Report path (default standard output)");

  auto* verify = app.add_subcommand("verify", "Grid-check a profile");
  verify->add_option("file", o.file, "Problem file")->required();
  verify->add_option("--point", o.point, "Stacked profile, comma separated")->required();
  verify->add_option("--grid", o.grid, "Grid resolution h")->capture_default_str();
  verify->add_option("--out", o.out, "Report path (default standard output)");

  auto* theorems = app.add_subcommand("theorems", "Run a seeded property suite");
  theorems->add_option("--suite", o.suite, "Suite")->required()->check(CLI::IsMember({"t1", "t2", "existence"}));
  theorems->add_option("--instances", o.instances, "Number of instances")->required();
  theorems->add_option("--seed", o.seed, "Seed")->capture_default_str();
  theorems->add_option("--grid", o.grid, "Grid resolution h")->capture_default_str();
  theorems->add_option("--out", o.out, "Report path (default standard output)");

  auto* examples = app.add_subcommand("examples", "Build, dump or run a bundled example");
  examples->add_option("--name", o.name, "Example name")->required()->check(CLI::IsMember(example_names()));
  examples->add_flag("--run", o.run, "Run the example's canonical checks");
  examples->add_option("--dump", o.dump, "Write the problem file here");
  examples->add_option("--out", o.out, "Report path (default standard output)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitError;
  }

  Report report;
  report.command = args;
  report.command.insert(report.command.begin(), "ordgne");
  const auto start = std::chrono::steady_clock::now();
  int code = kExitError;
  try {
    if (*solve) code = cmd_solve(o, report);
    else if (*verify) code = cmd_verify(o, report);
    else if (*theorems) code = cmd_theorems(o, report);
    else code = cmd_examples(o, report);
    report.wall_time_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const std::string text = report_to_json(report);
    if (o.out.empty()) out << text;
    else write_file_atomic(o.out, text);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
  for (const auto& w : report.warnings) err << "warning: " << w << "\n";
  return code;
}

}  // namespace ordgne::cli

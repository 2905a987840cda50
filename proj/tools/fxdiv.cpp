// Command-line front end: solve, sweep, simulate.
//
// Exit codes: 0 success, 1 input or usage error, 2 solved but a verification
// check failed.

#include <CLI11.hpp>
#include <fmt/format.h>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "fxdiv/barrier.hpp"
#include "fxdiv/hjb_ode.hpp"
#include "fxdiv/model_json.hpp"
#include "fxdiv/monte_carlo.hpp"
#include "fxdiv/solution_document.hpp"

namespace {

using namespace fxdiv;

constexpr int kOk = 0;
constexpr int kInputError = 1;
constexpr int kCertificateFailure = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

ModelSpec load_and_validate(const std::string& path) {
  return validate(load_model(path));
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError(fmt::format("cannot write {}", path));
  out << text;
}

int run_solve(const std::string& model_path, const std::string& out_path,
              const std::string& route) {
  const ModelSpec model = load_and_validate(model_path);
  SolutionDocument doc;
  doc.model = model.description();
  doc.route = route;

  std::optional<BarrierSolution> sol;
  if (route != "ode") {
    sol.emplace(solve(model));
    doc.scale = make_scale_section(*sol, verify_optimality(*sol));
  }
  if (route != "scale") {
    try {
      const OdeSolution ode = solve_boundary(build_cubic(model));
      doc.ode = make_ode_section(ode);
      if (sol) {
        const RouteCheck rc = cross_check(*sol, ode);
        doc.cross_check = CrossCheckSection{rc.max_abs, rc.relative, rc.passed};
      }
    } catch (const SolverError& err) {
      if (route == "ode" || err.code() != ErrorCode::UnsupportedModel) throw;
      std::cerr << "note: ODE route skipped: " << err.what() << '\n';
    }
  }
  if (doc.scale) {
    doc.a_star = doc.scale->a_star;
    doc.value_at_barrier = doc.scale->value_at_barrier;
  } else {
    doc.a_star = doc.ode->a_star;
    doc.value_at_barrier = doc.ode->value_at_barrier;
  }

  emit(out_path, to_json(doc).dump(2) + "\n");
  return doc.verified() ? kOk : kCertificateFailure;
}

int run_sweep(const std::string& model_path, double from, double to,
              double step, const std::string& out_path) {
  if (!(step > 0.0)) throw UsageError("--step must be positive");
  if (!(from >= 0.0) || !(to >= from)) {
    throw UsageError("--from and --to must satisfy 0 <= from <= to");
  }
  const ModelSpec model = load_and_validate(model_path);
  const BarrierSolution sol = solve(model);
  std::ostringstream csv;
  write_sweep_csv(sol, from, to, step, csv);
  emit(out_path, csv.str());
  return kOk;
}

int run_simulate(const std::string& model_path, const SimConfig& cfg,
                 const std::string& out_path) {
  const ModelSpec model = load_and_validate(model_path);
  const Estimate est = estimate_value(model, cfg);
  nlohmann::json j = {
      {"mean", est.mean},
      {"std_error", est.std_error},
      {"paths", est.paths},
      {"horizon", est.horizon},
      {"ruin_fraction", est.ruin_fraction},
      {"config",
       {{"barrier", cfg.barrier},
        {"x", cfg.x},
        {"l", cfg.l},
        {"paths", cfg.paths},
        {"dt", cfg.dt},
        {"seed", cfg.seed}}}};
  emit(out_path, j.dump(2) + "\n");
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Optimal dividend barrier under a stochastic exchange rate"};
  app.require_subcommand(1);

  std::string model_path;
  std::string out_path;

  auto* solve_cmd = app.add_subcommand("solve", "solve a model, write JSON");
  std::string route = "both";
  solve_cmd->add_option("--model", model_path, "model JSON")->required();
  solve_cmd->add_option("--out", out_path, "output path (default stdout)");
  solve_cmd->add_option("--route", route, "scale, ode or both")
      ->check(CLI::IsMember({"scale", "ode", "both"}));

  auto* sweep_cmd = app.add_subcommand("sweep", "tabulate F, F', F'', 1/Delta', H");
  double from = 0.0;
  double to = 2.0;
  double step = 0.01;
  sweep_cmd->add_option("--model", model_path, "model JSON")->required();
  sweep_cmd->add_option("--from", from, "first abscissa")->required();
  sweep_cmd->add_option("--to", to, "last abscissa")->required();
  sweep_cmd->add_option("--step", step, "grid step")->required();
  sweep_cmd->add_option("--out", out_path, "output path (default stdout)");

  auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo barrier value");
  SimConfig cfg;
  long long paths = 0;
  sim_cmd->add_option("--model", model_path, "model JSON")->required();
  sim_cmd->add_option("--barrier", cfg.barrier, "dividend barrier")->required();
  sim_cmd->add_option("--x", cfg.x, "initial surplus")->required();
  sim_cmd->add_option("--l", cfg.l, "initial exchange exponent")->required();
  sim_cmd->add_option("--paths", paths, "number of paths (>= 1000)")->required();
  sim_cmd->add_option("--dt", cfg.dt, "time step (<= 0.01)")->required();
  sim_cmd->add_option("--seed", cfg.seed, "RNG seed")->required();
  sim_cmd->add_option("--out", out_path, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    if (solve_cmd->parsed()) return run_solve(model_path, out_path, route);
    if (sweep_cmd->parsed()) return run_sweep(model_path, from, to, step, out_path);
    if (paths <= 0) throw UsageError("--paths must be positive");
    cfg.paths = static_cast<std::uint64_t>(paths);
    return run_simulate(model_path, cfg, out_path);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
  } catch (const ValidationError& e) {
    std::cerr << "error: invalid model: " << e.what() << '\n';
  } catch (const SolverError& e) {
    std::cerr << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
  }
  return kInputError;
}

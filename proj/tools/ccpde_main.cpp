// Command-line driver: threshold | solve | solve2d | spectrum | multiplicity
// | sweep | validate, configured by a flat sectioned key=value file.
// Exit codes: 0 success, 1 certification failure, 2 config error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "ccpde/config.hpp"
#include "ccpde/io.hpp"
#include "ccpde/pipelines.hpp"
#include "ccpde/validate.hpp"

namespace fs = std::filesystem;
using namespace ccpde;

namespace {

struct CommonArgs {
  std::string config_path;
  std::string output_dir = ".";
};

Config load_and_check(const CommonArgs& args) {
  Config cfg = Config::parse_file(args.config_path);
  cfg.check_schema(config_schema());
  return cfg;
}

SolveOptions solve_options(const Config& cfg) {
  SolveOptions opts = solver_from_config(cfg);
  if (const char* env_seed = std::getenv("CCPDE_SEED"))
    opts.seed = static_cast<std::uint64_t>(std::stoull(env_seed));
  return opts;
}

int workers_from(const Config& cfg) {
  long long w = cfg.get_int("run", "workers", 1);
  if (const char* env = std::getenv("CCPDE_WORKERS")) w = std::stoll(env);
  return static_cast<int>(std::max<long long>(1, w));
}

double resolve_lambda(const Config& cfg, double lambda_crit) {
  const bool has_abs = cfg.has("nonlinearity", "lambda");
  const bool has_scale = cfg.has("nonlinearity", "lambda_scale");
  if (has_abs == has_scale)
    throw ConfigError(cfg.origin() +
                      ": [nonlinearity] needs exactly one of 'lambda' or 'lambda_scale'");
  if (has_abs) return cfg.get_double("nonlinearity", "lambda");
  return cfg.get_double("nonlinearity", "lambda_scale") * lambda_crit;
}

std::ofstream open_out(const CommonArgs& args, const std::string& name) {
  fs::create_directories(args.output_dir);
  const fs::path p = fs::path(args.output_dir) / name;
  std::ofstream f(p, std::ios::binary);  // '\n' line endings everywhere
  if (!f) throw std::runtime_error("cannot open output file: " + p.string());
  return f;
}

std::string threshold_csv_row(double lambda, double delta1, const ThresholdResult& res) {
  std::string row = fmt_double(lambda);
  row += ',' + fmt_double(res.lambda_crit);
  row += ',' + std::string(to_string(res.regime));
  row += ',' + fmt_double(res.r1) + ',' + fmt_double(res.r2) + ',' + fmt_double(res.r_star);
  row += ',' + fmt_double(res.defect_r1) + ',' + fmt_double(res.defect_r2);
  row += ',' + fmt_double(delta1);
  row += ',' + std::string(res.delta1_binding ? "1" : "0");
  return row;
}

int run_threshold(const CommonArgs& args) {
  const Config cfg = load_and_check(args);
  const double q = cfg.get_double("nonlinearity", "q");
  const double v0 = cfg.get_double("potential", "v0", 1.0);
  const std::string kind = cfg.get_string("nonlinearity", "kind", "power");

  write_hash_header(std::cout, cfg.hash());
  std::cout << "lambda,lambda_crit,regime,r1,r2,r_star,defect_r1,defect_r2,delta1,delta1_binding\n";
  if (kind == "power") {
    const double p = cfg.get_double("nonlinearity", "p");
    const double lambda = resolve_lambda(cfg, lambda_critical(p, q, v0));
    const auto res = admissible_radii(PowerParams{p, q, lambda, v0});
    std::cout << threshold_csv_row(lambda, std::numeric_limits<double>::quiet_NaN(), res) << '\n';
    return 0;
  }
  const NonlinearitySpec f = nonlinearity_from_config(cfg);
  const double delta1 = detect_delta1(f);
  const double lambda = resolve_lambda(cfg, lambda_critical_2d(f.nu, q, v0, delta1));
  const auto res = admissible_radii_2d(f.nu, q, v0, delta1, lambda);
  std::cout << threshold_csv_row(lambda, delta1, res) << '\n';
  return 0;
}

int run_solve(const CommonArgs& args) {
  const Config cfg = load_and_check(args);
  const GridSpec gs = grid_from_config(cfg);
  const Grid grid(gs);
  const SchrodingerOperator op(grid, potential_from_config(cfg, gs));
  const NonlinearitySpec f = nonlinearity_from_config(cfg);
  if (f.kind != NonlinearitySpec::Kind::Power)
    throw ConfigError(cfg.origin() + ": `solve` runs the power pipeline; use `solve2d` otherwise");
  const double q = cfg.get_double("nonlinearity", "q");
  const double lambda = resolve_lambda(cfg, lambda_critical(f.p, q, op.v0()));
  const SolveOptions opts = solve_options(cfg);

  const auto res = solve_power(op, f.p, q, lambda, opts);
  if (!res.certificate_available)
    std::cerr << "warning: lambda >= Lambda_0, no admissible radius; result is uncertified\n";

  const std::uint64_t hash = cfg.hash();
  {
    auto out = open_out(args, "solution.csv");
    write_field_csv(out, grid, res.report.u, hash);
  }
  {
    auto out = open_out(args, "convergence.csv");
    write_trace_csv(out, res.report.trace, hash);
  }
  {
    auto out = open_out(args, "certificate.txt");
    write_certificate(out, grid, res.report, res.pde_residual_inf, hash,
                      {{"lambda", fmt_double(lambda)},
                       {"lambda_crit", fmt_double(res.radii.lambda_crit)},
                       {"regime", to_string(res.radii.regime)},
                       {"r1", fmt_double(res.radii.r1)},
                       {"r2", fmt_double(res.radii.r2)},
                       {"box_radius", fmt_double(res.box_radius)}});
  }
  const bool ok = res.certificate_available && res.report.converged &&
                  res.report.invariance.certified;
  std::cout << "energy " << fmt_double(res.report.energy) << ", pde_residual "
            << fmt_double(res.pde_residual_inf) << ", certified " << (ok ? "true" : "false")
            << '\n';
  return ok ? 0 : 1;
}

int run_solve2d(const CommonArgs& args) {
  const Config cfg = load_and_check(args);
  const GridSpec gs = grid_from_config(cfg);
  const Grid grid(gs);
  const SchrodingerOperator op(grid, potential_from_config(cfg, gs));
  const NonlinearitySpec f = nonlinearity_from_config(cfg);
  const double q = cfg.get_double("nonlinearity", "q");
  const double delta1 = detect_delta1(f);
  const double lambda = resolve_lambda(cfg, lambda_critical_2d(f.nu, q, op.v0(), delta1));
  const SolveOptions opts = solve_options(cfg);

  const auto res = solve_truncated(op, f, q, lambda, opts);

  const std::uint64_t hash = cfg.hash();
  {
    auto out = open_out(args, "solution.csv");
    write_field_csv(out, grid, res.report.u, hash);
  }
  {
    auto out = open_out(args, "convergence.csv");
    write_trace_csv(out, res.report.trace, hash);
  }
  {
    auto out = open_out(args, "certificate.txt");
    write_certificate(out, grid, res.report, res.truncated_residual_inf, hash,
                      {{"lambda", fmt_double(lambda)},
                       {"lambda1", fmt_double(res.lambda1)},
                       {"delta1", fmt_double(res.delta1)},
                       {"r1", fmt_double(res.radii.r1)},
                       {"r2", fmt_double(res.radii.r2)},
                       {"box_radius", fmt_double(res.box_radius)},
                       {"untruncated_residual", fmt_double(res.untruncated_residual_inf)},
                       {"solves_untruncated", res.solves_untruncated ? "true" : "false"}});
  }
  const bool ok = res.report.converged && res.report.invariance.certified &&
                  res.solves_untruncated;
  std::cout << "energy " << fmt_double(res.report.energy) << ", untruncated_residual "
            << fmt_double(res.untruncated_residual_inf) << ", certified "
            << (ok ? "true" : "false") << '\n';
  return ok ? 0 : 1;
}

int run_spectrum(const CommonArgs& args) {
  const Config cfg = load_and_check(args);
  const GridSpec gs = grid_from_config(cfg);
  const Grid grid(gs);
  const SchrodingerOperator op(grid, potential_from_config(cfg, gs));
  const int k = static_cast<int>(cfg.get_int("run", "eigen_k", 6));
  const double tol = cfg.get_double("solver", "eigen_tol", 1e-9);
  const SolveOptions opts = solve_options(cfg);

  const EigenPairs pairs = eigenpairs(op, k, tol, opts.seed);
  const std::uint64_t hash = cfg.hash();
  {
    auto out = open_out(args, "spectrum.csv");
    write_hash_header(out, hash);
    out << "j,mu\n";
    for (int j = 0; j < k; ++j)
      out << (j + 1) << ',' << fmt_double(pairs.values[static_cast<std::size_t>(j)]) << '\n';
  }
  for (int j = 0; j < k; ++j) {
    auto out = open_out(args, "eigenfield_" + std::to_string(j + 1) + ".csv");
    write_field_csv(out, grid, pairs.fields[static_cast<std::size_t>(j)], hash);
  }
  std::cout << "computed " << k << " eigenpairs, mu_1 = " << fmt_double(pairs.values[0]) << '\n';
  return 0;
}

int run_multiplicity(const CommonArgs& args) {
  const Config cfg = load_and_check(args);
  const GridSpec gs = grid_from_config(cfg);
  const Grid grid(gs);
  const SchrodingerOperator op(grid, potential_from_config(cfg, gs));
  const NonlinearitySpec f = nonlinearity_from_config(cfg);
  if (f.kind != NonlinearitySpec::Kind::Power)
    throw ConfigError(cfg.origin() + ": `multiplicity` runs the power pipeline");
  const double q = cfg.get_double("nonlinearity", "q");
  const double lambda = resolve_lambda(cfg, lambda_critical(f.p, q, op.v0()));

  const auto radii = admissible_radii(PowerParams{f.p, q, lambda, op.v0()});
  if (radii.regime == RadiusRegime::Empty)
    throw EmptyAdmissibleInterval("multiplicity: lambda > Lambda_0, no admissible radius");
  const double r2 = (radii.regime == RadiusRegime::Interval) ? radii.r2 : radii.r_star;

  MultiSolveOptions mopts;
  mopts.solve = solve_options(cfg);
  mopts.seed_directions = static_cast<int>(cfg.get_int("run", "eigen_k", 4));
  mopts.deflation_radius = cfg.get_double("run", "deflation_radius", 0.25);
  mopts.pde_tol = 1e-6 * op.v0() * r2;

  const EigenPairs pairs = eigenpairs(op, mopts.seed_directions,
                                      cfg.get_double("solver", "eigen_tol", 1e-9),
                                      mopts.solve.seed);
  const ConvexSet Ksym{-r2, r2};
  const PowerNonlinearTerm nl{f.p, q, lambda};
  const auto reports = multi_solve(op, nl, Ksym, pairs, mopts);

  const std::uint64_t hash = cfg.hash();
  {
    auto out = open_out(args, "multiplicity.csv");
    write_hash_header(out, hash);
    out << "id,energy,sup_norm,pde_residual,stationarity_margin,box_ok,fixed_point_gap,certified\n";
    for (std::size_t i = 0; i < reports.size(); ++i) {
      const auto& r = reports[i];
      out << i << ',' << fmt_double(r.energy) << ',' << fmt_double(lp_norm(grid, r.u, infinity))
          << ',' << fmt_double(pde_residual(op, nl, r.u)) << ','
          << fmt_double(r.stationarity_margin) << ',' << (r.invariance.box_ok ? 1 : 0) << ','
          << fmt_double(r.invariance.fixed_point_gap) << ',' << (r.invariance.certified ? 1 : 0)
          << '\n';
    }
  }
  for (std::size_t i = 0; i < reports.size(); ++i) {
    auto out = open_out(args, "solution_" + std::to_string(i) + ".csv");
    write_field_csv(out, grid, reports[i].u, hash);
  }
  std::cout << "found " << reports.size() << " distinct certified solutions\n";
  return reports.empty() ? 1 : 0;
}

int run_sweep(const CommonArgs& args) {
  const Config cfg = load_and_check(args);
  const GridSpec gs = grid_from_config(cfg);
  const Grid grid(gs);
  const SchrodingerOperator op(grid, potential_from_config(cfg, gs));
  const NonlinearitySpec f = nonlinearity_from_config(cfg);
  if (f.kind != NonlinearitySpec::Kind::Power)
    throw ConfigError(cfg.origin() + ": `sweep` runs the power pipeline");
  const double q = cfg.get_double("nonlinearity", "q");
  const int count = static_cast<int>(cfg.get_int("run", "sweep_count", 8));
  const SolveOptions opts = solve_options(cfg);

  const auto rows = sweep_lambda(op, f.p, q, count, opts, workers_from(cfg));
  auto out = open_out(args, "sweep.csv");
  write_hash_header(out, cfg.hash());
  out << "lambda,energy,sup_norm,certified\n";
  for (const auto& row : rows)
    out << fmt_double(row.lambda) << ',' << fmt_double(row.energy) << ','
        << fmt_double(row.sup_norm) << ',' << (row.certified ? 1 : 0) << '\n';
  std::cout << "swept " << rows.size() << " lambda values\n";
  return 0;
}

int run_validate(const CommonArgs&) {
  const auto results = run_validation_suite();
  bool all = true;
  for (const auto& r : results) {
    std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.name << " — " << r.detail << '\n';
    all = all && r.pass;
  }
  std::cout << (all ? "validation suite passed\n" : "validation suite FAILED\n");
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"constrained-minimization solver for concave-convex Schrodinger problems"};
  app.require_subcommand(1);

  CommonArgs args;
  int (*handler)(const CommonArgs&) = nullptr;

  auto add = [&](const std::string& name, const std::string& desc, int (*fn)(const CommonArgs&),
                 bool needs_config) {
    CLI::App* sub = app.add_subcommand(name, desc);
    auto* copt = sub->add_option("-c,--config", args.config_path, "config file");
    if (needs_config) copt->required();
    sub->add_option("-o,--output", args.output_dir, "output directory");
    sub->callback([&, fn]() { handler = fn; });
    return sub;
  };

  add("threshold", "critical lambda and admissible radii as a CSV row", run_threshold, true);
  add("solve", "power-case constrained solve with certification", run_solve, true);
  add("solve2d", "two-dimensional truncated pipeline", run_solve2d, true);
  add("spectrum", "low eigenpairs of the Schrodinger operator", run_spectrum, true);
  add("multiplicity", "search for multiple distinct certified solutions", run_multiplicity, true);
  add("sweep", "lambda sweep of certified solves", run_sweep, true);
  add("validate", "run the invariant suite", run_validate, false);

  CLI11_PARSE(app, argc, argv);

  try {
    return handler(args);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const EmptyAdmissibleInterval& e) {
    std::cerr << "certification failure: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}

// Command-line front end: eval, moments, converge, bounds, selftest.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dunkl_approx/errors.hpp"
#include "dunkl_approx/experiment.hpp"

namespace {

struct Flags {
  double mu = 0.0;
  std::string family = "unit";
  double gh_a = 0.0;
  int gh_d = 1;
  std::size_t gh_degree = 64;
  std::vector<double> coeffs;
  bool allow_unverified = false;
  std::vector<int> n_list{10};
  std::string x_grid = "1";
  std::string function;
  double tol = 1e-13;
  std::size_t cap = 0;
  std::string format = "csv";
  std::string out;
  unsigned threads = 0;
  std::string theorem;
  std::optional<double> holder_m;
  std::optional<double> holder_beta;
  double interval_end = 2.0;
  double sabotage = 1.0;
  std::uint64_t seed = 20240601;
};

dunkl::RunConfig to_config(const Flags& f, dunkl::Mode mode) {
  dunkl::RunConfig c;
  c.mu = f.mu;
  c.family = dunkl::parse_family(f.family);
  c.gh_a = f.gh_a;
  c.gh_d = f.gh_d;
  c.gh_degree = f.gh_degree;
  c.coeffs = f.coeffs;
  c.allow_unverified = f.allow_unverified;
  c.n_list = f.n_list;
  c.x_grid = dunkl::Grid::parse(f.x_grid);
  c.function = !f.function.empty() ? f.function : (mode == dunkl::Mode::moments ? "id" : "sinx");
  c.tol = f.tol;
  c.cap = f.cap;
  c.output = dunkl::parse_format(f.format);
  if (!f.theorem.empty()) c.theorem = dunkl::parse_theorem(f.theorem);
  c.holder_m = f.holder_m;
  c.holder_beta = f.holder_beta;
  c.interval_end = f.interval_end;
  c.sabotage_modulus = f.sabotage;
  c.threads = f.threads;
  return c;
}

void print_summary(const dunkl::Report& report) {
  if (report.mode == dunkl::Mode::converge) {
    std::cerr << "n,sup_abs_err,ratio_to_previous\n";
    double previous = 0.0;
    for (const auto& s : report.convergence) {
      std::cerr << s.n << ',' << s.sup_error << ',';
      if (previous > 0.0) std::cerr << s.sup_error / previous;
      std::cerr << '\n';
      previous = s.sup_error;
    }
  } else if (report.mode == dunkl::Mode::bounds) {
    std::cerr << "violations: " << report.violations << ", min margin: " << report.min_margin;
    if (!report.analytic_modulus) std::cerr << " (grid-estimated modulus: consistency check, not proof)";
    std::cerr << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dunkl-Appell positive linear operators: evaluation, moments, convergence and error bounds"};
  app.set_config("--config", "", "TOML/INI file with the same keys as the flags; flags win");
  app.require_subcommand(1);

  Flags f;
  std::optional<double> single_x;
  app.add_option("--mu", f.mu, "Dunkl parameter (>= 0)");
  app.add_option("--family", f.family, "unit | gould-hopper | custom");
  app.add_option("--gh-a", f.gh_a, "Gould-Hopper parameter a (>= 0)");
  app.add_option("--gh-d", f.gh_d, "Gould-Hopper order d (>= 1)");
  app.add_option("--gh-degree", f.gh_degree, "Truncation degree of the Gould-Hopper generator");
  app.add_option("--coeffs", f.coeffs, "Plain coefficients c_0,c_1,... of Q for --family custom")
      ->delimiter(',');
  app.add_flag("--allow-unverified", f.allow_unverified, "Accept generators with negative coefficients");
  app.add_option("--n", f.n_list, "Operator indices, comma separated")->delimiter(',');
  app.add_option("--x", single_x, "Single evaluation point");
  app.add_option("--x-grid", f.x_grid, "Evaluation grid start:stop:step");
  app.add_option("--f", f.function, "Test function (const1, id, square, sinx, cosx, sqrtx, expnegx)");
  app.add_option("--tol", f.tol, "Weight truncation tolerance");
  app.add_option("--cap", f.cap, "Maximum number of weights (0: automatic)");
  app.add_option("--format", f.format, "csv | json");
  app.add_option("--out", f.out, "Output path (default: standard output)");
  app.add_option("--threads", f.threads, "Worker threads (default: DUNKL_APPROX_THREADS or all cores)");
  app.add_option("--theorem", f.theorem, "T2 | T3 | T4 (bounds)");
  app.add_option("--M", f.holder_m, "Hoelder constant (T3)");
  app.add_option("--beta", f.holder_beta, "Hoelder exponent in (0, 1] (T3)");
  app.add_option("--interval-end", f.interval_end, "Right end a of [0, a] (T4)");
  app.add_option("--sabotage-modulus", f.sabotage)->group("");
  app.add_option("--seed", f.seed, "Seed for selftest");

  const std::pair<const char*, dunkl::Mode> modes[] = {
      {"eval", dunkl::Mode::eval},
      {"moments", dunkl::Mode::moments},
      {"converge", dunkl::Mode::converge},
      {"bounds", dunkl::Mode::bounds},
  };
  std::optional<dunkl::Mode> mode;
  for (const auto& [name, m] : modes) {
    app.add_subcommand(name, std::string("Run ") + name)->fallthrough()->callback([&mode, m = m] { mode = m; });
  }
  app.add_subcommand("selftest", "Randomized series-calculus property checks")->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  if (!mode) {
    const auto result = dunkl::run_selftest(f.seed, std::cout);
    return result.failures == 0 ? 0 : 1;
  }

  try {
    if (single_x) f.x_grid = std::to_string(*single_x);
    const dunkl::RunConfig config = to_config(f, *mode);
    const dunkl::Report report = dunkl::run(*mode, config);
    if (f.out.empty()) {
      dunkl::emit(report, config.output, std::cout);
    } else {
      std::ofstream file(f.out);
      if (!file) throw dunkl::ConfigError("out: cannot open '" + f.out + "' for writing");
      dunkl::emit(report, config.output, file);
    }
    print_summary(report);
    return dunkl::exit_code(report);
  } catch (const dunkl::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
  } catch (const dunkl::Error& e) {
    std::cerr << "numeric error: " << e.what() << '\n';
  }
  return 1;
}

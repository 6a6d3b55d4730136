#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <random>
#include <string>

#include "dunkl_approx/appell_family.hpp"
#include "dunkl_approx/experiment.hpp"
#include "dunkl_approx/power_series.hpp"

namespace dunkl {

namespace {

class Checker {
 public:
  Checker(std::ostream& log, SelftestResult& result) : log_(log), result_(result) {}

  void expect(bool ok, const std::string& what) {
    ++result_.checks;
    if (!ok) {
      ++result_.failures;
      log_ << "FAIL " << what << '\n';
    }
  }

 private:
  std::ostream& log_;
  SelftestResult& result_;
};

double max_coeff_gap(const PowerSeries& a, const PowerSeries& b) {
  double gap = 0.0;
  for (std::size_t i = 0; i < std::max(a.size(), b.size()); ++i) gap = std::max(gap, std::fabs(a[i] - b[i]));
  return gap;
}

PowerSeries random_series(const DunklContext& ctx, std::mt19937_64& rng, std::size_t max_degree,
                          double lo, double hi) {
  std::uniform_int_distribution<std::size_t> deg(0, max_degree);
  std::uniform_real_distribution<double> coef(lo, hi);
  std::vector<double> c(deg(rng) + 1);
  for (auto& v : c) v = coef(rng);
  return {ctx, std::move(c)};
}

}  // namespace

SelftestResult run_selftest(std::uint64_t seed, std::ostream& log) {
  SelftestResult result;
  Checker check(log, result);
  std::mt19937_64 rng(seed);
  const double mus[] = {0.0, 0.5, 1.3};

  // Dunkl product rule on random polynomial pairs.
  for (int trial = 0; trial < 100; ++trial) {
    const DunklContext ctx(mus[trial % 3]);
    const PowerSeries a = random_series(ctx, rng, 10, -1.0, 1.0);
    const PowerSeries b = random_series(ctx, rng, 10, -1.0, 1.0);
    const PowerSeries lhs = (a * b).dunkl_derivative();
    const PowerSeries rhs = a * b.dunkl_derivative() + b.reflect() * a.dunkl_derivative() +
                            a.derivative() * (b - b.reflect());
    check.expect(max_coeff_gap(lhs, rhs) <= 1e-11, "product rule, trial " + std::to_string(trial));
  }

  // Generating function: Q(t) e_mu(x t) has t^i coefficient q_i(x) / gamma_mu(i).
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const DunklContext ctx(2.0 * unit(rng));
    PowerSeries q = random_series(ctx, rng, 10, 0.0, 1.0);
    std::vector<double> c(q.coeffs().begin(), q.coeffs().end());
    c[0] += 0.5;
    const AppellFamily family = AppellFamily::from_coefficients(ctx, c);
    const double x = 3.0 * unit(rng);
    const std::size_t degree = family.generator().degree() + 12;
    const PowerSeries product = family.generator() * PowerSeries::dunkl_exponential(ctx, x, degree);
    double gap = 0.0;
    for (std::size_t i = 0; i <= degree; ++i) {
      const auto poly = family.polynomial(i);
      const PowerSeries qi(ctx, poly);
      gap = std::max(gap, std::fabs(product[i] - qi(x) / ctx.gamma(i)));
    }
    check.expect(gap <= 1e-10, "generating-function round trip, trial " + std::to_string(trial));
  }

  // Reflection is evaluation at -t.
  for (int trial = 0; trial < 50; ++trial) {
    const DunklContext ctx(mus[trial % 3]);
    const PowerSeries s = random_series(ctx, rng, 12, -1.0, 1.0);
    const double t = 4.0 * unit(rng) - 2.0;
    const double a = s.reflect()(t);
    const double b = s(-t);
    check.expect(std::fabs(a - b) <= 1e-12 * std::max(1.0, std::fabs(b)),
                 "reflection, trial " + std::to_string(trial));
  }

  // Squared Dunkl operator on monomials.
  for (const double mu : mus) {
    const DunklContext ctx(mu);
    for (std::size_t j = 2; j <= 30; ++j) {
      std::vector<double> c(j + 1, 0.0);
      c[j] = 1.0;
      const PowerSeries twice = PowerSeries(ctx, c).dunkl_derivative().dunkl_derivative();
      const double expect = ctx.step(j) * ctx.step(j - 1);
      check.expect(twice.degree() == j - 2 && twice[j - 2] == expect,
                   "squared Dunkl operator on t^" + std::to_string(j));
    }
  }

  // Partition of unity for random admissible families.
  std::uniform_int_distribution<int> ns(1, 50);
  for (int trial = 0; trial < 30; ++trial) {
    const DunklContext ctx(mus[trial % 3]);
    PowerSeries q = random_series(ctx, rng, 6, 0.0, 1.0);
    std::vector<double> c(q.coeffs().begin(), q.coeffs().end());
    c[0] += 0.1;
    const AppellFamily family = AppellFamily::from_coefficients(ctx, c);
    const WeightSequence w = weights(family, ns(rng), 3.0 * unit(rng));
    const double mass = std::accumulate(w.weights.begin(), w.weights.end(), 0.0);
    check.expect(std::fabs(mass - 1.0) <= 1e-12 && std::fabs(mass + w.tail_mass - 1.0) <= 1e-12,
                 "partition of unity, trial " + std::to_string(trial));
  }

  log << "selftest seed " << seed << ": " << result.checks - result.failures << "/" << result.checks
      << " checks passed\n";
  return result;
}

}  // namespace dunkl

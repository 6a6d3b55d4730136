#include <cmath>
#include <random>
#include <thread>
#include <vector>

#include "doctest.h"
#include "dunkl_approx/appell_family.hpp"
#include "dunkl_approx/errors.hpp"
#include "oracles.hpp"

using dunkl::AppellFamily;
using dunkl::DunklContext;

namespace {

double total(const dunkl::WeightSequence& w) {
  long double s = 0.0L;
  for (const double v : w.weights) s += v;
  return static_cast<double>(s);
}

}  // namespace

TEST_CASE("from_coefficients validation") {
  const DunklContext ctx(0.5);
  CHECK_THROWS_WITH_AS((void)AppellFamily::from_coefficients(ctx, {0.0, 1.0}),
                       doctest::Contains("not an Appell generator"), dunkl::DomainError);
  CHECK_THROWS_WITH_AS((void)AppellFamily::from_coefficients(ctx, {1.0, -2.0}),
                       doctest::Contains("normalization undefined"), dunkl::DomainError);
  CHECK_THROWS_AS((void)AppellFamily::from_coefficients(DunklContext(-0.2), {1.0}), dunkl::DomainError);
  CHECK_THROWS_AS((void)AppellFamily::from_coefficients(ctx, {}), dunkl::DomainError);

  const auto unit = AppellFamily::from_coefficients(ctx, {1.0});
  CHECK(unit.q_at_one() == 1.0);
  CHECK(unit.positivity() == dunkl::Positivity::proven_by_coefficients);
  CHECK(AppellFamily::from_coefficients(ctx, {1.0, -0.5}).positivity() == dunkl::Positivity::unverified);
}

TEST_CASE("gould_hopper coefficients") {
  const DunklContext ctx(0.5);
  const auto zero = AppellFamily::gould_hopper(ctx, 0.0, 3, 12);
  CHECK(zero.q_at_one() == 1.0);
  CHECK(zero.support() == std::vector<std::size_t>{0});

  const auto a = AppellFamily::gould_hopper(ctx, 0.5, 1, 8);
  const std::vector<double> expect{1.0, 0.0, 0.5, 0.0, 0.125, 0.0, 1.0 / 48.0, 0.0, 1.0 / 384.0};
  REQUIRE(a.generator().size() == expect.size());
  for (std::size_t i = 0; i < expect.size(); ++i) CHECK(a.generator()[i] == doctest::Approx(expect[i]).epsilon(1e-15));

  const auto b = AppellFamily::gould_hopper(ctx, 1.0, 2, 6);
  CHECK(b.support() == std::vector<std::size_t>{0, 3, 6});
  CHECK(b.generator()[3] == 1.0);
  CHECK(b.generator()[6] == 0.5);

  const auto ref = oracle::gould_hopper(0.3, 2, 60);
  const auto c = AppellFamily::gould_hopper(ctx, 0.3, 2, 60);
  for (std::size_t i = 0; i <= 60; ++i) CHECK(c.generator()[i] == doctest::Approx(ref[i]).epsilon(1e-14));

  CHECK_THROWS_AS((void)AppellFamily::gould_hopper(ctx, -0.1, 1, 8), dunkl::DomainError);
  CHECK_THROWS_AS((void)AppellFamily::gould_hopper(ctx, 0.5, 0, 8), dunkl::DomainError);
}

TEST_CASE("Appell polynomials") {
  SUBCASE("q_0 is the constant a_0") {
    const auto f = AppellFamily::from_coefficients(DunklContext(0.7), {2.5, 1.0});
    CHECK(f.polynomial(0) == std::vector<double>{2.5});
  }

  SUBCASE("classical r(w) = 1 + w") {
    // r(w) e^{xw} = sum_i q_i(x) w^i / i!  gives q_i(x) = x^i + i x^(i-1).
    const auto f = AppellFamily::from_coefficients(DunklContext(0.0), {1.0, 1.0});
    for (std::size_t i = 1; i <= 12; ++i) {
      const auto q = f.polynomial(i);
      for (std::size_t j = 0; j <= i; ++j) {
        const double expect = j == i ? 1.0 : (j + 1 == i ? static_cast<double>(i) : 0.0);
        CHECK(q[j] == doctest::Approx(expect).epsilon(1e-14));
      }
      for (const double x : {0.0, 0.4, 3.0}) CHECK(oracle::poly_eval(q, x) >= 0.0L);
    }
  }

  SUBCASE("Q = 1 at mu = 0 gives x^i") {
    const auto f = AppellFamily::from_coefficients(DunklContext(0.0), {1.0});
    const auto q = f.polynomial(6);
    for (std::size_t j = 0; j < 6; ++j) CHECK(q[j] == 0.0);
    CHECK(q[6] == 1.0);
  }

  SUBCASE("generating-function round trip") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> coef(0.0, 1.0);
    std::uniform_real_distribution<double> xs(0.0, 2.0);
    std::uniform_real_distribution<double> mus(0.0, 1.5);
    for (int trial = 0; trial < 20; ++trial) {
      const double mu = trial == 0 ? 0.6 : mus(rng);
      const double x = trial == 0 ? 1.3 : xs(rng);
      std::vector<double> c(11);
      for (auto& v : c) v = coef(rng);
      c[0] += 0.5;
      const DunklContext ctx(mu);
      const auto family = AppellFamily::from_coefficients(ctx, c);
      const auto product = family.generator() * dunkl::PowerSeries::dunkl_exponential(ctx, x, 30);
      for (std::size_t i = 0; i <= 30; ++i) {
        const double lhs = product[i];
        const double rhs =
            static_cast<double>(oracle::poly_eval(family.polynomial(i), x) / oracle::gamma_mu(mu, i));
        CHECK(std::fabs(lhs - rhs) <= 1e-10 * std::max(1.0, std::fabs(rhs)));
      }
    }
  }
}

TEST_CASE("weights at x = 0 are the normalized coefficients") {
  const DunklContext ctx(0.5);
  const auto f = AppellFamily::from_coefficients(ctx, {1.0, 0.3, 0.2});
  const auto w = dunkl::weights(f, 10, 0.0);
  REQUIRE(w.weights.size() >= 3);
  CHECK(w.weights[0] == doctest::Approx(1.0 / 1.5).epsilon(1e-15));
  CHECK(w.weights[1] == doctest::Approx(0.3 / 1.5).epsilon(1e-15));
  CHECK(w.weights[2] == doctest::Approx(0.2 / 1.5).epsilon(1e-15));
  for (std::size_t i = 3; i < w.weights.size(); ++i) CHECK(w.weights[i] == 0.0);
  CHECK(std::fabs(w.tail_mass) <= 1e-15);
}

TEST_CASE("classical Szasz reduction gives Poisson weights") {
  const auto f = AppellFamily::from_coefficients(DunklContext(0.0), {1.0});
  for (const auto& [n, x] : std::vector<std::pair<int, double>>{{1, 2.0}, {10, 0.35}, {40, 1.7}}) {
    const auto w = dunkl::weights(f, n, x);
    const double lambda = n * x;
    for (std::size_t i = 0; i < w.weights.size(); ++i) {
      const double p = std::exp(-lambda + i * std::log(lambda) - std::lgamma(i + 1.0));
      CHECK(std::fabs(w.weights[i] - p) <= 1e-12);
    }
  }
}

TEST_CASE("Gould-Hopper weights against the double-sum oracle") {
  const DunklContext ctx(0.5);
  const auto family = AppellFamily::gould_hopper(ctx, 0.5, 1, 64);
  const std::vector<double> c(family.generator().coeffs().begin(), family.generator().coeffs().end());
  const auto w = dunkl::weights(family, 10, 1.0, {1e-12, 0, false});
  CHECK(std::fabs(total(w) - 1.0) <= 1e-12);
  const auto ref = oracle::weights(c, 0.5, 10, 1.0, w.weights.size());
  for (std::size_t i = 0; i < w.weights.size(); ++i) {
    CHECK(std::fabs(w.weights[i] - static_cast<double>(ref[i])) <= 1e-12);
  }
}

TEST_CASE("reduction chain") {
  for (const double mu : {0.0, 0.5, 1.2}) {
    const DunklContext ctx(mu);
    const auto gh = dunkl::weights(AppellFamily::gould_hopper(ctx, 0.0, 2, 30), 7, 1.1);
    const auto unit = dunkl::weights(AppellFamily::from_coefficients(ctx, {1.0}), 7, 1.1);
    REQUIRE(gh.weights.size() == unit.weights.size());
    for (std::size_t i = 0; i < gh.weights.size(); ++i) CHECK(gh.weights[i] == unit.weights[i]);
  }
}

TEST_CASE("partition of unity and nonnegativity on a grid") {
  for (const double mu : {0.0, 0.5, 1.0, 2.0}) {
    const DunklContext ctx(mu);
    const AppellFamily families[] = {
        AppellFamily::from_coefficients(ctx, {1.0}),
        AppellFamily::gould_hopper(ctx, 0.5, 1, 64),
        AppellFamily::gould_hopper(ctx, 0.3, 2, 64),
        AppellFamily::from_coefficients(ctx, {1.0, 0.3, 0.2}),
    };
    for (const auto& family : families) {
      for (const int n : {1, 10, 50, 160}) {
        for (double x = 0.0; x <= 3.0; x += 0.25) {
          const auto w = dunkl::weights(family, n, x);
          CHECK(std::fabs(total(w) + w.tail_mass - 1.0) <= 1e-12);
          CHECK(w.tail_mass <= 1e-13);
          for (const double v : w.weights) CHECK(v >= 0.0);
        }
      }
    }
  }
}

TEST_CASE("weight errors") {
  const DunklContext ctx(0.5);
  const auto unit = AppellFamily::from_coefficients(ctx, {1.0});
  CHECK_THROWS_AS((void)dunkl::weights(unit, 0, 1.0), dunkl::DomainError);
  CHECK_THROWS_AS((void)dunkl::weights(unit, 10, -1.0), dunkl::DomainError);

  try {
    (void)dunkl::weights(unit, 10, 1.0, {1e-13, 5, false});
    FAIL("expected a truncation failure");
  } catch (const dunkl::TruncationError& e) {
    CHECK(e.partial().weights.size() == 5);
    CHECK(e.partial().tail_mass > 1e-13);
    CHECK(std::string(e.what()).find("truncation failure") != std::string::npos);
  }

  const auto signed_family = AppellFamily::from_coefficients(ctx, {1.0, -0.5});
  CHECK_THROWS_AS((void)dunkl::weights(signed_family, 10, 1.0), dunkl::PositivityError);
  // the override admits the family, but a genuinely negative weight is still fatal
  CHECK_THROWS_WITH_AS((void)dunkl::weights(signed_family, 10, 0.0, {1e-13, 0, true}),
                       doctest::Contains("negative operator weight"), dunkl::PositivityError);
  // c_1 / c_0 = -0.05: negative weights only where y / i < 0.05, far in the tail
  const auto mild = AppellFamily::from_coefficients(ctx, {1.0, -0.05});
  const auto w = dunkl::weights(mild, 10, 1.0, {1e-13, 0, true});
  for (const double v : w.weights) CHECK(v >= 0.0);
}

TEST_CASE("concurrent weight generation") {
  const auto family = AppellFamily::gould_hopper(DunklContext(0.8), 0.5, 1, 64);
  const auto serial = dunkl::weights(family, 40, 1.5);
  std::vector<std::thread> pool;
  std::vector<dunkl::WeightSequence> out(6);
  for (int t = 0; t < 6; ++t) pool.emplace_back([&, t] { out[t] = dunkl::weights(family, 40, 1.5); });
  for (auto& th : pool) th.join();
  for (const auto& w : out) CHECK(w.weights == serial.weights);
}

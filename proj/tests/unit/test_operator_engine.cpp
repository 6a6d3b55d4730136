#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "dunkl_approx/errors.hpp"
#include "dunkl_approx/operator_engine.hpp"
#include "oracles.hpp"

using dunkl::AppellFamily;
using dunkl::DunklContext;
using dunkl::OperatorSpec;

namespace {

OperatorSpec unit_spec(double mu, int n) {
  return {AppellFamily::from_coefficients(DunklContext(mu), {1.0}), n};
}

OperatorSpec gh_spec(double mu, double a, int d, int n) {
  return {AppellFamily::gould_hopper(DunklContext(mu), a, d, 64), n};
}

// e_mu(-y) / e_mu(y) from long double brute-force partial sums.
double ratio_oracle(double mu, double y) {
  return static_cast<double>(oracle::dunkl_exp(mu, -y, 400) / oracle::dunkl_exp(mu, y, 400));
}

}  // namespace

TEST_CASE("apply reproduces constants and Q = 1 first moments") {
  for (const double mu : {0.0, 0.5, 1.3}) {
    for (const int n : {1, 10, 40}) {
      const auto spec = unit_spec(mu, n);
      for (const double x : {0.0, 0.3, 1.0, 2.5}) {
        CHECK(std::fabs(dunkl::apply(spec, [](double) { return 1.0; }, x) - 1.0) <= spec.tol);
        CHECK(std::fabs(dunkl::apply(spec, [](double t) { return t; }, x) - x) <= 2.0 * spec.tol);
      }
    }
  }
  const auto gh = gh_spec(0.7, 0.5, 1, 10);
  CHECK(std::fabs(dunkl::apply(gh, [](double) { return 1.0; }, 1.2) - 1.0) <= gh.tol);
}

TEST_CASE("classical Szasz second moment") {
  const auto spec = unit_spec(0.0, 20);
  CHECK(std::fabs(dunkl::apply(spec, [](double t) { return t * t; }, 1.0) - 1.05) <= 1e-10);
}

TEST_CASE("apply against brute-force weights") {
  const auto c = oracle::gould_hopper(0.5, 1, 64);
  const auto spec = gh_spec(0.5, 0.5, 1, 10);
  for (const double x : {0.0, 0.7, 1.9}) {
    const long double ref = oracle::apply(c, 0.5, 10, x, 120, [](long double t) { return std::sin(t); });
    CHECK(std::fabs(dunkl::apply(spec, [](double t) { return std::sin(t); }, x) - static_cast<double>(ref)) <=
          1e-12);
  }
}

TEST_CASE("apply names the node where f is not finite") {
  const auto spec = unit_spec(0.0, 10);
  CHECK_THROWS_WITH_AS((void)dunkl::apply(spec, [](double t) { return 1.0 / (t - 0.1); }, 1.0),
                       doctest::Contains("node 0.1"), dunkl::RangeError);
}

TEST_CASE("node ordering") {
  for (const double mu : {0.0, 0.3}) {
    const DunklContext ctx(mu);
    for (std::size_t i = 0; i < 200; ++i) CHECK(dunkl::node(ctx, i + 1, 7) > dunkl::node(ctx, i, 7));
  }
  // mu = 1/2 merges each odd node with the next even one
  const DunklContext half(0.5);
  for (std::size_t i = 1; i < 200; i += 2) CHECK(dunkl::node(half, i, 7) == dunkl::node(half, i + 1, 7));
  // beyond 1/2 only the even and odd subsequences stay increasing
  const DunklContext big(2.0);
  CHECK(dunkl::node(big, 1, 7) > dunkl::node(big, 2, 7));
  for (std::size_t i = 0; i < 200; ++i) CHECK(dunkl::node(big, i + 2, 7) > dunkl::node(big, i, 7));
}

TEST_CASE("q_functionals") {
  SUBCASE("Q = 1") {
    const auto q = dunkl::q_functionals(AppellFamily::from_coefficients(DunklContext(0.5), {1.0}));
    CHECK(q.q1 == 1.0);
    CHECK(q.q_m1 == 1.0);
    for (const double v : {q.dq1, q.dq_m1, q.d2q1, q.lq1, q.lq_m1, q.d_lq1, q.l_dq1, q.llq1}) CHECK(v == 0.0);
  }

  SUBCASE("Gould-Hopper e^{0.5 t^2} at mu = 0") {
    const auto q = dunkl::q_functionals(AppellFamily::gould_hopper(DunklContext(0.0), 0.5, 1, 64));
    const double e = std::exp(0.5);
    CHECK(q.q1 == doctest::Approx(e).epsilon(1e-14));
    CHECK(q.q_m1 == doctest::Approx(e).epsilon(1e-14));
    CHECK(q.dq1 == doctest::Approx(e).epsilon(1e-14));
    CHECK(q.dq_m1 == doctest::Approx(-e).epsilon(1e-14));
    // Q'' = (1 + t^2) Q
    CHECK(q.d2q1 == doctest::Approx(2.0 * e).epsilon(1e-14));
    CHECK(q.lq1 == doctest::Approx(q.dq1).epsilon(1e-15));
  }

  SUBCASE("Gould-Hopper at mu = 0.5, high-precision values") {
    const auto q = dunkl::q_functionals(AppellFamily::gould_hopper(DunklContext(0.5), 0.5, 1, 64));
    CHECK(q.lq1 == doctest::Approx(1.6487212707001281468).epsilon(1e-14));
    CHECK(q.llq1 == doctest::Approx(4.9461638121003844405).epsilon(1e-14));
  }

  SUBCASE("Lambda Q at 1 matches the pointwise operator") {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const DunklContext ctx(0.8);
    for (int k = 0; k < 10; ++k) {
      std::vector<double> c(9);
      for (auto& v : c) v = unit(rng);
      c[0] += 0.1;
      const auto q = dunkl::q_functionals(AppellFamily::from_coefficients(ctx, c));
      const double expect = q.dq1 + 0.8 * (q.q1 - q.q_m1);
      CHECK(std::fabs(q.lq1 - expect) <= 1e-12);
      const double pointwise =
          oracle::dunkl_pointwise([&](double t) { return static_cast<double>(oracle::poly_eval(c, t)); }, 0.8, 1.0);
      CHECK(std::fabs(q.lq1 - pointwise) <= 1e-7);
    }
  }
}

TEST_CASE("closed-form moments: spot values") {
  CHECK(dunkl::moments_closed(gh_spec(1.0, 0.3, 2, 10), 0.7).m0 == 1.0);
  CHECK(dunkl::moments_closed(unit_spec(0.5, 4), 1.0).m1 == doctest::Approx(1.0).epsilon(1e-15));

  // high-precision reference values
  const auto gh = gh_spec(0.5, 0.5, 1, 10);
  const auto m = dunkl::moments_closed(gh, 1.0);
  CHECK(m.m1 == doctest::Approx(1.1).epsilon(1e-14));
  CHECK(m.m2 == doctest::Approx(1.3326378004021409122).epsilon(1e-14));
  const auto c = dunkl::central_moments(gh, 1.0);
  CHECK(c.omega1 == doctest::Approx(0.1).epsilon(1e-14));
  CHECK(c.omega2 == doctest::Approx(0.13263780040214091215).epsilon(1e-13));
  CHECK(c.source == dunkl::MomentSource::closed_form);

  const auto m0 = dunkl::moments_closed(gh, 0.0);
  CHECK(m0.m1 == doctest::Approx(0.1).epsilon(1e-14));
  CHECK(m0.m2 == doctest::Approx(0.03).epsilon(1e-14));
  CHECK(dunkl::central_moments(gh, 0.0).omega2 == doctest::Approx(0.03).epsilon(1e-14));

  const auto u = unit_spec(0.5, 10);
  CHECK(dunkl::moments_closed(u, 1.0).m2 == doctest::Approx(1.1026378004021409122).epsilon(1e-14));
  CHECK(dunkl::central_moments(u, 1.0).omega2 == doctest::Approx(0.10263780040214091215).epsilon(1e-13));
}

TEST_CASE("closed form vs series summation") {
  const std::vector<std::pair<double, int>> gh_params{{0.0, 1}, {0.5, 1}, {0.3, 2}};
  for (const auto& [a, d] : gh_params) {
    for (const double mu : {0.0, 0.5, 1.0}) {
      for (const int n : {1, 10, 50}) {
        const auto spec = gh_spec(mu, a, d, n);
        for (const double x : {0.0, 0.5, 2.0}) {
          const auto closed = dunkl::moments_closed(spec, x);
          const auto summed = dunkl::moments_summed(spec, x);
          CHECK(std::fabs(closed.m0 - summed.m0) <= 1e-8);
          CHECK(std::fabs(closed.m1 - summed.m1) <= 1e-8);
          CHECK(std::fabs(closed.m2 - summed.m2) <= 1e-8);
          const auto cc = dunkl::central_moments(spec, x);
          const auto cs = dunkl::central_moments_summed(spec, x);
          CHECK(cs.source == dunkl::MomentSource::series_summed);
          CHECK(std::fabs(cc.omega1 - cs.omega1) <= 1e-8);
          CHECK(std::fabs(cc.omega2 - cs.omega2) <= 1e-8);
          CHECK(cc.omega2 >= 0.0);
        }
      }
    }
  }
}

TEST_CASE("Q = 1 central moments") {
  for (const double mu : {0.0, 0.5}) {
    for (const int n : {1, 10}) {
      const auto spec = unit_spec(mu, n);
      for (const double x : {0.0, 0.5, 2.0}) {
        const auto c = dunkl::central_moments(spec, x);
        CHECK(std::fabs(c.omega1) <= 1e-13);
        const double expect = (x / n) * (1.0 + 2.0 * mu * ratio_oracle(mu, n * x));
        CHECK(std::fabs(c.omega2 - expect) <= 1e-10 * std::max(expect, 1e-300));
        CHECK(dunkl::omega2_leading_term(spec, x) == doctest::Approx(n * c.omega2).epsilon(1e-14));
      }
    }
  }
  CHECK(dunkl::central_moments(unit_spec(0.0, 7), 1.3).omega2 == doctest::Approx(1.3 / 7).epsilon(1e-15));
  CHECK(dunkl::central_moments(unit_spec(0.0, 7), 0.0).omega2 == 0.0);
  CHECK(dunkl::central_moments(unit_spec(0.9, 7), 0.0).omega2 == 0.0);
}

TEST_CASE("x = 0 reduces to the Q-functional tail") {
  for (const double mu : {0.0, 0.6}) {
    const auto spec = gh_spec(mu, 0.4, 1, 5);
    const auto q = dunkl::q_functionals(spec.family);
    const double expect = (q.lq1 + q.llq1 + 2.0 * mu * q.lq_m1) / (q.q1 * 25.0);
    CHECK(dunkl::central_moments(spec, 0.0).omega2 == doctest::Approx(expect).epsilon(1e-14));
    CHECK(dunkl::central_moments_summed(spec, 0.0).omega2 == doctest::Approx(expect).epsilon(1e-12));
  }
}

TEST_CASE("reflection ratio at large nx") {
  // for mu > 0 the ratio decays only like (2nx)^(-mu-1); mpmath, 50 digits
  const auto c = dunkl::central_moments(unit_spec(0.5, 160), 2.0);
  CHECK(c.omega2 == doctest::Approx(0.012509780925690313499).epsilon(1e-13));
  // at mu = 0 it is e^(-2nx), flushed to zero
  CHECK(dunkl::central_moments(unit_spec(0.0, 160), 2.0).omega2 == doctest::Approx(2.0 / 160).epsilon(1e-15));
}

TEST_CASE("argument validation") {
  CHECK_THROWS_AS((void)dunkl::moments_closed(unit_spec(0.5, 10), -0.1), dunkl::DomainError);
  CHECK_THROWS_AS((void)dunkl::central_moments(unit_spec(0.5, 0), 1.0), dunkl::DomainError);
}

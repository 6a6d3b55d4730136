#include "dunkl_approx/appell_family.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace dunkl {

namespace {

constexpr double kNegativeWeightLimit = -1e-12;

struct Compensated {
  double sum = 0.0;
  double carry = 0.0;
  void add(double v) {
    const double t = sum + v;
    carry += std::fabs(sum) >= std::fabs(v) ? (sum - t) + v : (v - t) + sum;
    sum = t;
  }
  [[nodiscard]] double value() const { return sum + carry; }
};

}  // namespace

AppellFamily::AppellFamily(PowerSeries generator)
    : generator_(std::move(generator)),
      positivity_(Positivity::proven_by_coefficients),
      q_at_one_(generator_.eval(1.0)) {
  const auto c = generator_.coeffs();
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (c[k] < 0.0) positivity_ = Positivity::unverified;
    if (c[k] != 0.0) support_.push_back(k);
  }
}

AppellFamily AppellFamily::from_coefficients(const DunklContext& ctx, std::vector<double> coeffs) {
  if (!ctx.operator_admissible()) {
    throw DomainError("Appell family requires mu >= 0, got mu = " + std::to_string(ctx.mu()));
  }
  if (coeffs.empty()) throw DomainError("not an Appell generator: no coefficients");
  if (coeffs.front() == 0.0) throw DomainError("not an Appell generator: c_0 = 0");
  AppellFamily family(PowerSeries(ctx, std::move(coeffs)));
  if (!(family.q_at_one_ > 0.0)) {
    throw DomainError("normalization undefined: Q(1) = " + std::to_string(family.q_at_one_) +
                      " is not positive");
  }
  return family;
}

AppellFamily AppellFamily::gould_hopper(const DunklContext& ctx, double gh_a, int d,
                                        std::size_t degree_cap) {
  if (!std::isfinite(gh_a) || gh_a < 0.0) {
    throw DomainError("Gould-Hopper parameter a must be >= 0, got " + std::to_string(gh_a));
  }
  if (d < 1) throw DomainError("Gould-Hopper order d must be >= 1");
  if (degree_cap < 1) throw DomainError("Gould-Hopper degree cap must be >= 1");
  const auto stride = static_cast<std::size_t>(d) + 1;
  std::vector<double> c(degree_cap + 1, 0.0);
  double term = 1.0;
  for (std::size_t k = 0; k * stride <= degree_cap; ++k) {
    if (k > 0) term *= gh_a / static_cast<double>(k);
    c[k * stride] = term;
  }
  return from_coefficients(ctx, std::move(c));
}

double AppellFamily::normalized_coefficient(std::size_t k) const {
  return generator_[k] * context().gamma(k);
}

std::vector<double> AppellFamily::polynomial(std::size_t i) const {
  const DunklContext& ctx = context();
  const double gi = ctx.gamma(i);
  std::vector<double> out(i + 1, 0.0);
  for (std::size_t j = 0; j <= i; ++j) {
    const double c = generator_[i - j];
    if (c != 0.0) out[j] = gi * c / ctx.gamma(j);
  }
  return out;
}

WeightSequence weights(const AppellFamily& family, int n, double x, const WeightPolicy& policy) {
  if (n < 1) throw DomainError("operator index n must be >= 1");
  if (!std::isfinite(x) || x < 0.0) throw DomainError("operator argument x must be >= 0");
  if (!(policy.tol > 0.0)) throw DomainError("weight tolerance must be positive");
  if (family.positivity() != Positivity::proven_by_coefficients && !policy.allow_unverified) {
    throw PositivityError(
        "generator has negative coefficients; positivity of the operator is unverified");
  }

  const DunklContext& ctx = family.context();
  const PowerSeries& q = family.generator();
  const auto& support = family.support();
  const double y = static_cast<double>(n) * x;
  const double mode = std::ceil(y);
  const std::size_t cap =
      policy.cap > 0 ? policy.cap
                     : static_cast<std::size_t>(10.0 * mode) + 200 + q.degree();

  WeightSequence out;
  out.n = n;
  out.x = x;
  out.weights.reserve(std::min<std::size_t>(cap, static_cast<std::size_t>(mode) + 64));

  // u_j = y^j / gamma(j), pre-scaled by 1 / (Q(1) e_mu(y)).  Once the
  // series has converged the scale is replaced by 1 / (Q(1) sum_j u_j): the
  // same terms evaluate e_mu(y), so rounding in e_mu and drift in the
  // recurrence cancel out of the weights.
  const double q1 = family.q_at_one();
  std::vector<double> u;
  u.reserve(out.weights.capacity());
  u.push_back(1.0 / (q1 * dunkl_exp(ctx, y).value));

  Compensated mass;
  Compensated u_sum;
  double u_tail = 0.0;
  bool converged = false;
  int negligible = 0;
  for (std::size_t i = 0; i < cap; ++i) {
    if (i > 0) u.push_back(u.back() * y / ctx.step(i));
    u_sum.add(u.back());
    double w = 0.0;
    for (const std::size_t k : support) {
      if (k > i) break;
      w += q[k] * u[i - k];
    }
    if (w < 0.0) {
      if (w < kNegativeWeightLimit) {
        throw PositivityError("negative operator weight " + std::to_string(w) + " at index " +
                              std::to_string(i) + " (inadmissible family)");
      }
      w = 0.0;
    }
    out.weights.push_back(w);
    mass.add(w);

    if (static_cast<double>(i) > mode) {
      // step(j) >= j for mu >= 0, so the remaining u_j are dominated by a
      // geometric series of ratio y / (i + 1) < 1.
      const double r = y / static_cast<double>(i + 1);
      u_tail = u.back() * r / (1.0 - r);
      if (mass.value() >= (1.0 - policy.tol) * q1 * (u_sum.value() + u_tail)) {
        converged = true;
        break;
      }
      negligible = (i > mode + static_cast<double>(q.degree()) && w < 1e-20 * mass.value())
                       ? negligible + 1
                       : 0;
      if (negligible >= 3) {
        converged = true;
        break;
      }
    }
  }
  if (converged) {
    const double scale = 1.0 / (q1 * (u_sum.value() + u_tail));
    for (double& w : out.weights) w *= scale;
  }

  Compensated total;
  for (const double w : out.weights) total.add(w);
  out.tail_mass = 1.0 - total.value();
  // A converged sequence has no truncation left, only rounding in the sum,
  // which can exceed a tolerance set near machine epsilon.
  if (!converged && out.tail_mass > policy.tol) {
    const std::string what = "truncation failure at n = " + std::to_string(n) +
                             ", x = " + std::to_string(x) + ": tail mass " +
                             std::to_string(out.tail_mass) + " exceeds tol after " +
                             std::to_string(out.weights.size()) + " weights (cap " +
                             std::to_string(cap) + ")";
    throw TruncationError(what, std::move(out));
  }
  return out;
}

}  // namespace dunkl

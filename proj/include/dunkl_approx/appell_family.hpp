#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "dunkl_approx/dunkl_core.hpp"
#include "dunkl_approx/errors.hpp"
#include "dunkl_approx/power_series.hpp"

namespace dunkl {

enum class Positivity {
  proven_by_coefficients,  // every coefficient of Q is >= 0
  unverified,
};

/**
 * Dunkl-Appell polynomial set {q_i} generated by
 *   Q(t) e_mu(x t) = sum_i q_i(x) t^i / gamma_mu(i).
 *
 * Q is stored as a finite series in plain coefficients c_k, so the
 * normalized coefficients are a_k = c_k gamma_mu(k). The stored Q is the
 * generator used everywhere, including Q(1) in the operator normalization;
 * truncating an entire generator (Gould-Hopper) therefore defines an exact
 * family of its own rather than an approximation with a mismatched
 * normalization.
 */
class AppellFamily {
 public:
  /// Throws DomainError for mu < 0, an empty list, c_0 == 0 ("not an Appell
  /// generator") or Q(1) <= 0 ("normalization undefined").
  [[nodiscard]] static AppellFamily from_coefficients(const DunklContext& ctx,
                                                      std::vector<double> coeffs);

  /// Q(t) = exp(gh_a t^(d+1)) truncated at degree_cap. Requires gh_a >= 0,
  /// d >= 1 and degree_cap >= 1.
  [[nodiscard]] static AppellFamily gould_hopper(const DunklContext& ctx, double gh_a, int d,
                                                 std::size_t degree_cap);

  [[nodiscard]] const DunklContext& context() const noexcept { return generator_.context(); }
  [[nodiscard]] const PowerSeries& generator() const noexcept { return generator_; }
  [[nodiscard]] Positivity positivity() const noexcept { return positivity_; }
  [[nodiscard]] double q_at_one() const noexcept { return q_at_one_; }

  /// Indices k with c_k != 0, ascending. Gould-Hopper generators are
  /// lacunary (multiples of d+1 only), which the weight convolution exploits.
  [[nodiscard]] const std::vector<std::size_t>& support() const noexcept { return support_; }

  /// a_k = c_k gamma_mu(k).
  [[nodiscard]] double normalized_coefficient(std::size_t k) const;

  /// Coefficients of q_i in powers of x:
  ///   [x^j] q_i = gamma_mu(i) / (gamma_mu(j) gamma_mu(i-j)) a_{i-j}
  ///             = gamma_mu(i) c_{i-j} / gamma_mu(j).
  /// Coefficients of Q past its stored degree are zero. Throws RangeError
  /// once gamma_mu(i) overflows.
  [[nodiscard]] std::vector<double> polynomial(std::size_t i) const;

 private:
  explicit AppellFamily(PowerSeries generator);

  PowerSeries generator_;
  Positivity positivity_;
  double q_at_one_;
  std::vector<std::size_t> support_;
};

/// Truncated weights of the operator at (n, x):
///   w_i = q_i(n x) / (gamma_mu(i) Q(1) e_mu(n x)).
struct WeightSequence {
  std::vector<double> weights;
  double tail_mass = 0.0;  // 1 - sum(weights)
  int n = 1;
  double x = 0.0;
};

struct WeightPolicy {
  double tol = 1e-13;
  std::size_t cap = 0;  // 0 selects 10 * ceil(n x) + 200 + deg Q
  bool allow_unverified = false;
};

/// Raised when the cap is hit before the emitted mass reaches 1 - tol.
/// Carries the partial sequence.
class TruncationError : public Error {
 public:
  TruncationError(const std::string& what, WeightSequence partial)
      : Error(what), partial_(std::move(partial)) {}
  [[nodiscard]] const WeightSequence& partial() const noexcept { return partial_; }

 private:
  WeightSequence partial_;
};

/**
 * Operator weights by convolution of Q's coefficients with
 * u_j = (n x)^j / gamma_mu(j), the latter built with the ratio recurrence and
 * pre-scaled by 1 / (Q(1) e_mu(n x)).
 *
 * Emission stops once the index has passed ceil(n x) and the cumulative mass
 * is at least 1 - tol, once the terms have dropped below rounding, or at the
 * cap. On convergence the weights are renormalized by the compensated sum of
 * the same u_j (plus a geometric bound on the rest), which evaluates
 * e_mu(n x) consistently with the terms actually used.
 *
 * Weights in [-1e-12, 0) are clamped to zero; anything more negative raises
 * PositivityError. Families whose positivity is unverified are rejected
 * unless policy.allow_unverified. Throws RangeError when e_mu(n x)
 * overflows (n x beyond about 700).
 */
[[nodiscard]] WeightSequence weights(const AppellFamily& family, int n, double x,
                                     const WeightPolicy& policy = {});

}  // namespace dunkl

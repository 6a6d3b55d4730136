#pragma once

#include <cstddef>
#include <memory>
#include <mutex>
#include <vector>

namespace dunkl {

/// Parity indicator: 0 for even indices, 1 for odd ones.
[[nodiscard]] constexpr int theta(std::size_t i) noexcept { return static_cast<int>(i & 1U); }

/**
 * Dunkl parameter mu together with a memoized table of the generalized
 * factorials gamma_mu(i).
 *
 * The table is built with the recursion
 *   gamma_mu(0) = 1,  gamma_mu(i+1) = (i + 1 + 2 mu theta(i+1)) gamma_mu(i)
 * and is shared between copies of the context, so copying is cheap and all
 * series built from one context see the same cache. Extension is guarded by
 * a mutex; reads after warm() are lock-free in effect (the lock is held
 * only for the duration of a vector lookup).
 *
 * Construction accepts mu > -1/2. Contexts with mu < 0 are usable for the
 * scalar primitives and series calculus but are rejected by the operator
 * modules, which require mu >= 0.
 */
class DunklContext {
 public:
  explicit DunklContext(double mu);

  [[nodiscard]] double mu() const noexcept { return mu_; }

  /// True when mu >= 0, the range on which the operators are positive.
  [[nodiscard]] bool operator_admissible() const noexcept { return mu_ >= 0.0; }

  /// i + 2 mu theta(i): the factor gamma_mu(i) / gamma_mu(i-1) for i >= 1,
  /// and the eigenvalue of the Dunkl operator on t^i.
  [[nodiscard]] double step(std::size_t i) const noexcept {
    return static_cast<double>(i) + 2.0 * mu_ * theta(i);
  }

  /// gamma_mu(i). Throws RangeError once the value overflows a double
  /// (around i = 170 for moderate mu).
  [[nodiscard]] double gamma(std::size_t i) const;

  /// Precomputes gamma_mu(0..i).
  void warm(std::size_t i) const;

  /// Number of cached entries.
  [[nodiscard]] std::size_t cached() const;

  friend bool operator==(const DunklContext& a, const DunklContext& b) noexcept {
    return a.mu_ == b.mu_;
  }

 private:
  struct Cache {
    std::mutex lock;
    std::vector<double> values{1.0};
  };

  void extend_locked(std::size_t i) const;

  double mu_;
  std::shared_ptr<Cache> cache_;
};

/// Result of summing the Dunkl exponential series.
struct ExpEvaluation {
  double value = 0.0;
  std::size_t terms_used = 0;
  double tail_bound = 0.0;  // estimated absolute truncation error
};

/**
 * Dunkl exponential e_mu(x) = sum_i x^i / gamma_mu(i).
 *
 * For x >= 0 the series is summed directly with the ratio recurrence
 * term_{i+1} = term_i * x / (i + 1 + 2 mu theta(i+1)). Summation stops once
 * three consecutive terms past index |x| fall below tol * |partial sum|.
 *
 * For x < 0 and mu >= 0 the alternating series loses all relative accuracy
 * to cancellation once |x| exceeds a few units, so the value is evaluated
 * through the positive-term representation
 *   e_mu(x) = exp(x) * 1F1(mu; 2 mu + 1; -2x),
 * whose hypergeometric factor has only nonnegative terms when x < 0. At
 * mu = 0 the factor is identically one. For -1/2 < mu < 0 the direct series
 * is used on both sides.
 *
 * Throws DomainError for non-finite x or tol <= 0, RangeError on overflow.
 */
[[nodiscard]] ExpEvaluation dunkl_exp(const DunklContext& ctx, double x, double tol = 1e-16);

/// e_mu(-y) / e_mu(y) for y >= 0. Equals 1 at y = 0 and lies in (0, 1] for
/// mu >= 0. Values below 1e-300 are flushed to zero.
[[nodiscard]] double dunkl_exp_neg_ratio(const DunklContext& ctx, double y, double tol = 1e-16);

}  // namespace dunkl

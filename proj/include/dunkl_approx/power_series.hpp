#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "dunkl_approx/dunkl_core.hpp"

namespace dunkl {

/**
 * Truncated power series sum_i c_i t^i in the plain monomial basis, tied to
 * a Dunkl context.
 *
 * Values are immutable; every operation returns a fresh series. The Dunkl
 * operator acts on coefficients as c_i <- (i + 1 + 2 mu theta(i+1)) c_{i+1},
 * so the removable singularity at t = 0 never appears.
 */
class PowerSeries {
 public:
  /// Throws DomainError when coeffs is empty or holds a non-finite value.
  PowerSeries(DunklContext ctx, std::vector<double> coeffs);

  /// Coefficients of e_mu(x t) up to t^degree: c_i = x^i / gamma_mu(i).
  [[nodiscard]] static PowerSeries dunkl_exponential(const DunklContext& ctx, double x,
                                                     std::size_t degree);

  [[nodiscard]] const DunklContext& context() const noexcept { return ctx_; }
  [[nodiscard]] std::span<const double> coeffs() const noexcept { return coeffs_; }
  [[nodiscard]] std::size_t size() const noexcept { return coeffs_.size(); }
  [[nodiscard]] std::size_t degree() const noexcept { return coeffs_.size() - 1; }
  [[nodiscard]] double operator[](std::size_t i) const noexcept {
    return i < coeffs_.size() ? coeffs_[i] : 0.0;
  }

  /// Horner evaluation. Throws RangeError on a non-finite result.
  [[nodiscard]] double eval(double t) const;
  [[nodiscard]] double operator()(double t) const { return eval(t); }

  /// Ordinary derivative; a constant maps to [0].
  [[nodiscard]] PowerSeries derivative() const;

  /// Dunkl operator Lambda_mu; reduces to derivative() at mu = 0.
  [[nodiscard]] PowerSeries dunkl_derivative() const;

  /// t -> -t, i.e. c_i <- (-1)^i c_i.
  [[nodiscard]] PowerSeries reflect() const;

  /// Cauchy product; the result has size() = a.size() + b.size() - 1.
  /// Throws DomainError if the contexts differ.
  friend PowerSeries operator*(const PowerSeries& a, const PowerSeries& b);
  friend PowerSeries operator+(const PowerSeries& a, const PowerSeries& b);
  friend PowerSeries operator-(const PowerSeries& a, const PowerSeries& b);

 private:
  DunklContext ctx_;
  std::vector<double> coeffs_;
};

[[nodiscard]] inline PowerSeries multiply(const PowerSeries& a, const PowerSeries& b) {
  return a * b;
}

}  // namespace dunkl

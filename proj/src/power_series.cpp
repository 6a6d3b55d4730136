#include "dunkl_approx/power_series.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "dunkl_approx/errors.hpp"

namespace dunkl {

namespace {

void require_same_context(const PowerSeries& a, const PowerSeries& b, const char* op) {
  if (!(a.context() == b.context())) {
    throw DomainError(std::string("power series ") + op + ": mismatched Dunkl parameters");
  }
}

}  // namespace

PowerSeries::PowerSeries(DunklContext ctx, std::vector<double> coeffs)
    : ctx_(std::move(ctx)), coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw DomainError("power series needs at least one coefficient");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (!std::isfinite(coeffs_[i])) {
      throw DomainError("power series coefficient " + std::to_string(i) + " is not finite");
    }
  }
}

PowerSeries PowerSeries::dunkl_exponential(const DunklContext& ctx, double x, std::size_t degree) {
  std::vector<double> c(degree + 1);
  c[0] = 1.0;
  for (std::size_t i = 1; i <= degree; ++i) c[i] = c[i - 1] * x / ctx.step(i);
  return {ctx, std::move(c)};
}

double PowerSeries::eval(double t) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
  if (!std::isfinite(acc)) throw RangeError("power series evaluation overflowed");
  return acc;
}

PowerSeries PowerSeries::derivative() const {
  if (coeffs_.size() == 1) return {ctx_, {0.0}};
  std::vector<double> c(coeffs_.size() - 1);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = static_cast<double>(i + 1) * coeffs_[i + 1];
  return {ctx_, std::move(c)};
}

PowerSeries PowerSeries::dunkl_derivative() const {
  if (coeffs_.size() == 1) return {ctx_, {0.0}};
  std::vector<double> c(coeffs_.size() - 1);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = ctx_.step(i + 1) * coeffs_[i + 1];
  return {ctx_, std::move(c)};
}

PowerSeries PowerSeries::reflect() const {
  std::vector<double> c = coeffs_;
  for (std::size_t i = 1; i < c.size(); i += 2) c[i] = -c[i];
  return {ctx_, std::move(c)};
}

PowerSeries operator*(const PowerSeries& a, const PowerSeries& b) {
  require_same_context(a, b, "product");
  std::vector<double> c(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a.coeffs_[i] == 0.0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return {a.ctx_, std::move(c)};
}

PowerSeries operator+(const PowerSeries& a, const PowerSeries& b) {
  require_same_context(a, b, "sum");
  std::vector<double> c(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a[i] + b[i];
  return {a.ctx_, std::move(c)};
}

PowerSeries operator-(const PowerSeries& a, const PowerSeries& b) {
  require_same_context(a, b, "difference");
  std::vector<double> c(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a[i] - b[i];
  return {a.ctx_, std::move(c)};
}

}  // namespace dunkl

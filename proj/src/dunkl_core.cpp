#include "dunkl_approx/dunkl_core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dunkl_approx/errors.hpp"

namespace dunkl {

namespace {

constexpr int kSmallRun = 3;
constexpr double kRescale = 1e250;

struct SeriesSum {
  double sum = 0.0;
  double log_scale = 0.0;  // true sum = sum * exp(log_scale)
  std::size_t terms = 0;
  double tail = 0.0;
};

// Sums sum_k term_k with term_0 = 1 and term_{k+1} = term_k * ratio(k),
// stopping after kSmallRun consecutive terms below tol * |sum| once k has
// passed `mode` (the index where terms stop growing). ratio_bound(k) must
// bound |ratio(j)| for all j >= k; it feeds the geometric tail estimate.
template <typename Ratio, typename RatioBound>
SeriesSum sum_ratio_series(double mode, double tol, Ratio ratio, RatioBound ratio_bound) {
  SeriesSum out;
  double term = 1.0;
  out.sum = 1.0;
  out.terms = 1;
  int small = 0;
  for (std::size_t k = 0;; ++k) {
    term *= ratio(k);
    if (term == 0.0) break;
    out.sum += term;
    ++out.terms;
    if (!std::isfinite(out.sum)) throw RangeError("dunkl_exp: series overflow");
    if (std::fabs(out.sum) > kRescale) {
      out.sum /= kRescale;
      term /= kRescale;
      out.log_scale += std::log(kRescale);
    }
    if (static_cast<double>(k + 1) > mode && std::fabs(term) < tol * std::fabs(out.sum)) {
      if (++small >= kSmallRun) {
        const double r = ratio_bound(k + 1);
        out.tail = r < 1.0 ? std::fabs(term) * r / (1.0 - r) : std::fabs(term);
        break;
      }
    } else {
      small = 0;
    }
  }
  return out;
}

}  // namespace

DunklContext::DunklContext(double mu) : mu_(mu), cache_(std::make_shared<Cache>()) {
  if (!std::isfinite(mu) || mu <= -0.5) {
    throw DomainError("Dunkl parameter mu must satisfy mu > -1/2, got " + std::to_string(mu));
  }
}

void DunklContext::extend_locked(std::size_t i) const {
  auto& values = cache_->values;
  values.reserve(i + 1);
  while (values.size() <= i) {
    const std::size_t k = values.size();
    const double next = step(k) * values.back();
    if (!std::isfinite(next)) {
      throw RangeError("gamma_mu(" + std::to_string(k) + ") exceeds the double range");
    }
    values.push_back(next);
  }
}

double DunklContext::gamma(std::size_t i) const {
  std::lock_guard guard(cache_->lock);
  if (i >= cache_->values.size()) extend_locked(i);
  return cache_->values[i];
}

void DunklContext::warm(std::size_t i) const {
  std::lock_guard guard(cache_->lock);
  extend_locked(i);
}

std::size_t DunklContext::cached() const {
  std::lock_guard guard(cache_->lock);
  return cache_->values.size();
}

ExpEvaluation dunkl_exp(const DunklContext& ctx, double x, double tol) {
  if (!std::isfinite(x)) throw DomainError("dunkl_exp: argument must be finite");
  if (!(tol > 0.0)) throw DomainError("dunkl_exp: tolerance must be positive");
  if (x == 0.0) return {1.0, 1, 0.0};

  const double mu = ctx.mu();
  if (x > 0.0 || mu < 0.0) {
    const double ax = std::fabs(x);
    auto ratio = [&](std::size_t k) { return x / ctx.step(k + 1); };
    const double shift = 1.0 + std::min(0.0, 2.0 * mu);
    auto bound = [&](std::size_t k) { return ax / (static_cast<double>(k) + shift); };
    const SeriesSum s = sum_ratio_series(ax, tol, ratio, bound);
    const double scale = std::exp(s.log_scale);
    const ExpEvaluation out{s.sum * scale, s.terms, s.tail * scale};
    if (!std::isfinite(out.value)) throw RangeError("dunkl_exp: value overflows");
    return out;
  }

  // x < 0, mu >= 0: exp(x) * 1F1(mu; 2mu+1; z) with z = -2x > 0.
  if (mu == 0.0) return {std::exp(x), 1, 0.0};
  const double z = -2.0 * x;
  const double b = 2.0 * mu + 1.0;
  auto ratio = [&](std::size_t k) {
    const double kk = static_cast<double>(k);
    return (mu + kk) / (b + kk) * z / (kk + 1.0);
  };
  auto bound = [&](std::size_t k) { return z / static_cast<double>(k + 1); };
  const SeriesSum s = sum_ratio_series(z, tol, ratio, bound);
  const double scale = std::exp(x + s.log_scale);
  const ExpEvaluation out{s.sum * scale, s.terms, s.tail * scale};
  if (!std::isfinite(out.value)) throw RangeError("dunkl_exp: value overflows");
  return out;
}

double dunkl_exp_neg_ratio(const DunklContext& ctx, double y, double tol) {
  if (!(y >= 0.0)) throw DomainError("dunkl_exp_neg_ratio: argument must be nonnegative");
  if (y == 0.0) return 1.0;
  const double ratio = dunkl_exp(ctx, -y, tol).value / dunkl_exp(ctx, y, tol).value;
  return std::fabs(ratio) < 1e-300 ? 0.0 : ratio;
}

}  // namespace dunkl

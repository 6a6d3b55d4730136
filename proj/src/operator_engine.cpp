#include "dunkl_approx/operator_engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace dunkl {

namespace {

// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double v) noexcept {
    const double t = sum_ + v;
    if (std::fabs(sum_) >= std::fabs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  [[nodiscard]] double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

struct ClosedParts {
  QFunctionals q;
  double ratio = 0.0;  // e_mu(-nx) / e_mu(nx)
  double n = 1.0;
  double mu = 0.0;
};

ClosedParts closed_parts(const OperatorSpec& spec, double x) {
  if (spec.n < 1) throw DomainError("operator index n must be >= 1");
  if (!std::isfinite(x) || x < 0.0) throw DomainError("operator argument x must be >= 0");
  ClosedParts p;
  p.q = q_functionals(spec.family);
  p.n = static_cast<double>(spec.n);
  p.mu = spec.context().mu();
  p.ratio = dunkl_exp_neg_ratio(spec.context(), p.n * x);
  return p;
}

// Coefficient of (1 - r) / (Q(1) n^2) shared by m2 and Omega_2.
double odd_bracket(const ClosedParts& p) {
  const QFunctionals& q = p.q;
  return 2.0 * q.d2q1 - q.d_lq1 - q.l_dq1 + q.dq1 - 2.0 * p.mu * q.dq_m1;
}

double omega1_closed(const ClosedParts& p) {
  const QFunctionals& q = p.q;
  return ((1.0 - p.ratio) * q.dq1 + p.ratio * q.lq1) / (q.q1 * p.n);
}

// Terms of order 1/n^2 common to m2 and Omega_2.
double second_order_tail(const ClosedParts& p) {
  const QFunctionals& q = p.q;
  const double n2 = p.n * p.n;
  return q.lq1 * p.ratio / (q.q1 * n2) + odd_bracket(p) * (1.0 - p.ratio) / (q.q1 * n2) +
         (q.llq1 + 2.0 * p.mu * q.lq_m1) / (q.q1 * n2);
}

double omega2_closed(const ClosedParts& p, double x) {
  const QFunctionals& q = p.q;
  const double lead = 1.0 + 2.0 * p.ratio * (p.mu * q.q_m1 + q.dq1 - q.lq1) / q.q1;
  return lead * x / p.n + second_order_tail(p);
}

// Weights for summation. The truncated tail is <= tol in mass but sits at
// nodes beyond x, so f(t) = t would lose up to tol * node. Sum 1000x
// deeper, falling back to spec.tol when the cap forbids that.
WeightSequence summation_weights(const OperatorSpec& spec, double x) {
  WeightPolicy deep = spec.policy();
  deep.tol = std::max(spec.tol * 1e-3, std::numeric_limits<double>::min());
  try {
    return weights(spec.family, spec.n, x, deep);
  } catch (const TruncationError& e) {
    if (e.partial().tail_mass <= spec.tol) return e.partial();
    throw;
  }
}

}  // namespace

double apply(const OperatorSpec& spec, const WeightSequence& w, const RealFunction& f) {
  const DunklContext& ctx = spec.context();
  CompensatedSum acc;
  for (std::size_t i = 0; i < w.weights.size(); ++i) {
    if (w.weights[i] == 0.0) continue;
    const double t = node(ctx, i, w.n);
    const double v = f(t);
    if (!std::isfinite(v)) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "function value is not finite at node " << t << " (index " << i << ")";
      throw RangeError(msg.str());
    }
    acc.add(w.weights[i] * v);
  }
  return acc.value();
}

double apply(const OperatorSpec& spec, const RealFunction& f, double x) {
  return apply(spec, summation_weights(spec, x), f);
}

QFunctionals q_functionals(const AppellFamily& family) {
  const PowerSeries& q = family.generator();
  const PowerSeries dq = q.derivative();
  const PowerSeries lq = q.dunkl_derivative();

  QFunctionals out;
  out.q1 = q(1.0);
  out.q_m1 = q(-1.0);
  out.dq1 = dq(1.0);
  out.dq_m1 = dq(-1.0);
  out.d2q1 = dq.derivative()(1.0);
  out.lq1 = lq(1.0);
  out.lq_m1 = lq(-1.0);
  out.d_lq1 = lq.derivative()(1.0);
  out.l_dq1 = dq.dunkl_derivative()(1.0);
  out.llq1 = lq.dunkl_derivative()(1.0);
  return out;
}

RawMoments moments_closed(const OperatorSpec& spec, double x) {
  const ClosedParts p = closed_parts(spec, x);
  const QFunctionals& q = p.q;
  RawMoments m;
  m.m0 = 1.0;
  m.m1 = x + omega1_closed(p);
  m.m2 = x * x + (2.0 * q.dq1 + q.q1 + 2.0 * p.mu * q.q_m1 * p.ratio) / (q.q1 * p.n) * x +
         second_order_tail(p);
  return m;
}

RawMoments moments_summed(const OperatorSpec& spec, double x) {
  const WeightSequence w = summation_weights(spec, x);
  return {apply(spec, w, [](double) { return 1.0; }), apply(spec, w, [](double t) { return t; }),
          apply(spec, w, [](double t) { return t * t; })};
}

CentralMoments central_moments(const OperatorSpec& spec, double x) {
  const ClosedParts p = closed_parts(spec, x);
  CentralMoments c;
  c.omega1 = omega1_closed(p);
  const double printed = omega2_closed(p, x);

  const RawMoments m = moments_closed(spec, x);
  const double combined = m.m2 - 2.0 * x * m.m1 + x * x;
  constexpr double eps = std::numeric_limits<double>::epsilon();
  const double floor = 64.0 * eps * (std::fabs(m.m2) + 2.0 * x * std::fabs(m.m1) + x * x);
  if (std::fabs(printed - combined) > 1e-10 * std::fabs(printed) + floor) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "second central moment routes disagree at n = " << spec.n << ", x = " << x << ": "
        << printed << " vs " << combined;
    throw TranscriptionError(msg.str());
  }
  c.omega2 = printed < 0.0 && printed > -1e-12 ? 0.0 : printed;
  c.source = MomentSource::closed_form;
  return c;
}

CentralMoments central_moments_summed(const OperatorSpec& spec, double x) {
  const WeightSequence w = summation_weights(spec, x);
  CentralMoments c;
  c.omega1 = apply(spec, w, [x](double t) { return t - x; });
  c.omega2 = apply(spec, w, [x](double t) { return (t - x) * (t - x); });
  c.source = MomentSource::series_summed;
  return c;
}

double omega2_leading_term(const OperatorSpec& spec, double x) {
  const ClosedParts p = closed_parts(spec, x);
  const QFunctionals& q = p.q;
  return x * (1.0 + 2.0 * p.ratio * (p.mu * q.q_m1 + q.dq1 - q.lq1) / q.q1);
}

}  // namespace dunkl

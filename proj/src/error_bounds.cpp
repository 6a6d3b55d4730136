#include "dunkl_approx/error_bounds.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>

#include "dunkl_approx/errors.hpp"

namespace dunkl {

namespace {

// Samples f at k * step, k = 0..floor(window_end / step), where step is the
// largest value <= grid_step that divides `scale` evenly, so that every
// increment h = j * step up to `scale` lands on the grid.
struct Sampled {
  std::vector<double> values;
  double step = 0.0;
  std::size_t increments = 0;  // scale / step
};

Sampled sample(const RealFunction& f, double scale, double window_end, double grid_step,
               const char* what) {
  if (!(scale > 0.0)) throw DomainError(std::string(what) + ": scale must be positive");
  if (!(grid_step > 0.0) || grid_step > scale / 8.0) {
    throw DomainError(std::string(what) + ": grid step must be in (0, scale / 8]");
  }
  if (!(window_end > 0.0)) throw DomainError(std::string(what) + ": empty window");
  Sampled s;
  s.increments = static_cast<std::size_t>(std::ceil(scale / grid_step - 1e-9));
  s.step = scale / static_cast<double>(s.increments);
  const auto count = static_cast<std::size_t>(std::floor(window_end / s.step + 1e-9)) + 1;
  s.values.resize(count);
  for (std::size_t k = 0; k < count; ++k) {
    s.values[k] = f(static_cast<double>(k) * s.step);
    if (!std::isfinite(s.values[k])) {
      throw RangeError(std::string(what) + ": function is not finite on the window");
    }
  }
  return s;
}

double omega2_at(const OperatorSpec& spec, double x) {
  return central_moments(spec, x).omega2;
}

}  // namespace

ModulusEstimate modulus1(const RealFunction& f, double delta, double window_end, double grid_step) {
  const Sampled s = sample(f, delta, window_end, grid_step, "modulus1");
  const auto& v = s.values;
  double best = 0.0;
  for (std::size_t k = 0; k < v.size(); ++k) {
    const std::size_t last = std::min(v.size() - 1, k + s.increments);
    for (std::size_t j = k + 1; j <= last; ++j) best = std::max(best, std::fabs(v[j] - v[k]));
  }
  return {delta, best, window_end, s.step, ModulusKind::first};
}

ModulusEstimate modulus2(const RealFunction& f, double s_max, double window_end, double grid_step) {
  const Sampled s = sample(f, s_max, window_end, grid_step, "modulus2");
  const auto& v = s.values;
  double best = 0.0;
  for (std::size_t k = 0; k < v.size(); ++k) {
    for (std::size_t j = 1; j <= s.increments && k + 2 * j < v.size(); ++j) {
      best = std::max(best, std::fabs(v[k + 2 * j] - 2.0 * v[k + j] + v[k]));
    }
  }
  return {s_max, best, window_end, s.step, ModulusKind::second};
}

double theorem2_bound(const OperatorSpec& spec, double x, const ModulusProvider& w) {
  const double n = static_cast<double>(spec.n);
  const double lambda = std::sqrt(n * omega2_at(spec, x));
  return (1.0 + lambda) * w(1.0 / std::sqrt(n));
}

double theorem3_bound(const OperatorSpec& spec, double x, double M, double beta) {
  if (!(beta > 0.0 && beta <= 1.0)) throw DomainError("Hoelder exponent must lie in (0, 1]");
  if (!(M > 0.0)) throw DomainError("Hoelder constant must be positive");
  return M * std::pow(omega2_at(spec, x), beta / 2.0);
}

double theorem4_bound(const OperatorSpec& spec, double x, double interval_end,
                      const ModulusProvider& w2, double sup_norm) {
  if (!(interval_end > 0.0)) throw DomainError("interval end must be positive");
  if (x < 0.0 || x > interval_end) throw DomainError("theorem 4 requires 0 <= x <= interval end");
  if (!(sup_norm >= 0.0)) throw DomainError("sup norm must be nonnegative");
  const double omega2 = omega2_at(spec, x);
  const double s = std::sqrt(std::sqrt(omega2));
  const double s2 = s * s;
  const double w = w2(s > 0.0 ? s : kTheorem4ScaleFloor);
  return 0.75 * (2.0 + interval_end + s2) * w + 2.0 * s2 / interval_end * sup_norm;
}

std::string to_string(Theorem t) {
  switch (t) {
    case Theorem::T2: return "T2";
    case Theorem::T3: return "T3";
    case Theorem::T4: return "T4";
  }
  return "?";
}

Theorem parse_theorem(std::string_view text) {
  std::string up(text);
  std::transform(up.begin(), up.end(), up.begin(), [](unsigned char c) { return std::toupper(c); });
  if (up == "T2") return Theorem::T2;
  if (up == "T3") return Theorem::T3;
  if (up == "T4") return Theorem::T4;
  throw ConfigError("unknown theorem '" + std::string(text) + "' (expected T2, T3 or T4)");
}

BoundReport verify(const OperatorSpec& spec, const FunctionEntry& f, Theorem theorem,
                   std::span<const double> grid, const VerifyParams& params) {
  BoundReport report;
  report.min_margin = std::numeric_limits<double>::infinity();
  if (grid.empty()) {
    report.min_margin = 0.0;
    return report;
  }

  const double n = static_cast<double>(spec.n);
  const double grid_max = *std::max_element(grid.begin(), grid.end());
  const double window_end =
      params.window_end > 0.0 ? params.window_end : grid_max + 3.0 / std::sqrt(n) + 1.0;

  ModulusProvider modulus;
  HolderPair holder;
  double sup_norm = 0.0;
  switch (theorem) {
    case Theorem::T2:
      if (f.analytic_modulus) {
        modulus = f.analytic_modulus;
      } else {
        report.analytic_modulus = false;
        modulus = [&f, window_end, step = params.grid_step](double d) {
          return modulus1(f.evaluator, d, window_end, std::min(step, d / 8.0)).value;
        };
      }
      break;
    case Theorem::T3:
      if (params.holder) {
        holder = *params.holder;
      } else if (f.holder) {
        holder = *f.holder;
      } else {
        throw ConfigError("function '" + f.name + "' has no Hoelder metadata; theorem T3 needs M and beta");
      }
      break;
    case Theorem::T4:
      if (!f.bounded || !f.sup_norm) {
        throw ConfigError("function '" + f.name + "' is unbounded on [0, inf); theorem T4 needs a sup norm");
      }
      if (grid_max > params.interval_end) {
        throw ConfigError("theorem T4 grid exceeds the interval end " +
                          std::to_string(params.interval_end));
      }
      sup_norm = *f.sup_norm;
      if (f.analytic_modulus2) {
        modulus = f.analytic_modulus2;
      } else {
        report.analytic_modulus = false;
        modulus = [&f, window_end, step = params.grid_step](double s) {
          return modulus2(f.evaluator, s, window_end, std::min(step, s / 8.0)).value;
        };
      }
      break;
  }
  if (modulus && params.modulus_scale != 1.0) {
    modulus = [inner = modulus, scale = params.modulus_scale](double d) { return scale * inner(d); };
  }

  report.records.reserve(grid.size());
  for (const double x : grid) {
    BoundRecord r;
    r.x = x;
    r.n = spec.n;
    const CentralMoments c = central_moments(spec, x);
    r.omega1 = c.omega1;
    r.omega2 = c.omega2;
    r.kf = apply(spec, f.evaluator, x);
    r.f = f.evaluator(x);
    r.actual_error = std::fabs(r.kf - r.f);
    r.inputs.theorem = theorem;
    r.inputs.s = std::sqrt(std::sqrt(c.omega2));
    r.inputs.lambda_n = std::sqrt(n * c.omega2);
    switch (theorem) {
      case Theorem::T2:
        r.bound = theorem2_bound(spec, x, modulus);
        break;
      case Theorem::T3:
        r.inputs.M = holder.M;
        r.inputs.beta = holder.beta;
        r.bound = theorem3_bound(spec, x, holder.M, holder.beta);
        break;
      case Theorem::T4:
        r.inputs.interval_end = params.interval_end;
        r.inputs.sup_norm = sup_norm;
        r.flagged = c.omega2 == 0.0;
        r.bound = theorem4_bound(spec, x, params.interval_end, modulus, sup_norm);
        break;
    }
    r.margin = r.bound - r.actual_error;
    if (r.margin < -kBoundSlack) ++report.violations;
    report.min_margin = std::min(report.min_margin, r.margin);
    report.records.push_back(r);
  }
  return report;
}

}  // namespace dunkl

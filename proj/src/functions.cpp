#include "dunkl_approx/functions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dunkl_approx/errors.hpp"

namespace dunkl {

namespace {

// sup over x >= 0, 0 < h <= s of |g(x+2h) - 2g(x+h) + g(x)| for g = sin, cos:
// the second difference is -4 sin^2(h/2) g(x+h).
double trig_modulus2(double s) {
  const double h = std::min(s, std::numbers::pi);
  return 2.0 * (1.0 - std::cos(h));
}

// sup of |g(u) - g(v)| over |u - v| <= delta for g = sin, cos.
double trig_modulus(double delta) {
  return delta >= std::numbers::pi ? 2.0 : 2.0 * std::sin(delta / 2.0);
}

std::vector<FunctionEntry> build_registry() {
  std::vector<FunctionEntry> r;

  r.push_back({.name = "const1",
               .evaluator = [](double) { return 1.0; },
               .analytic_modulus = [](double) { return 0.0; },
               .analytic_modulus2 = [](double) { return 0.0; },
               .holder = std::nullopt,
               .sup_norm = 1.0,
               .bounded = true});

  r.push_back({.name = "id",
               .evaluator = [](double t) { return t; },
               .analytic_modulus = [](double d) { return d; },
               .analytic_modulus2 = [](double) { return 0.0; },
               .holder = HolderPair{1.0, 1.0},
               .sup_norm = std::nullopt,
               .bounded = false});

  // Not uniformly continuous on [0, inf): no first modulus.
  r.push_back({.name = "square",
               .evaluator = [](double t) { return t * t; },
               .analytic_modulus = nullptr,
               .analytic_modulus2 = [](double s) { return 2.0 * s * s; },
               .holder = std::nullopt,
               .sup_norm = std::nullopt,
               .bounded = false});

  r.push_back({.name = "sinx",
               .evaluator = [](double t) { return std::sin(t); },
               .analytic_modulus = trig_modulus,
               .analytic_modulus2 = trig_modulus2,
               .holder = HolderPair{1.0, 1.0},
               .sup_norm = 1.0,
               .bounded = true});

  r.push_back({.name = "cosx",
               .evaluator = [](double t) { return std::cos(t); },
               .analytic_modulus = trig_modulus,
               .analytic_modulus2 = trig_modulus2,
               .holder = HolderPair{1.0, 1.0},
               .sup_norm = 1.0,
               .bounded = true});

  // Concave with the steepest increments at 0: both moduli are attained there.
  r.push_back({.name = "sqrtx",
               .evaluator = [](double t) { return std::sqrt(t); },
               .analytic_modulus = [](double d) { return std::sqrt(d); },
               .analytic_modulus2 = [](double s) { return (2.0 - std::numbers::sqrt2) * std::sqrt(s); },
               .holder = HolderPair{1.0, 0.5},
               .sup_norm = std::nullopt,
               .bounded = false});

  // Convex and decreasing: both moduli are attained at 0.
  r.push_back({.name = "expnegx",
               .evaluator = [](double t) { return std::exp(-t); },
               .analytic_modulus = [](double d) { return -std::expm1(-d); },
               .analytic_modulus2 =
                   [](double s) {
                     const double v = -std::expm1(-s);
                     return v * v;
                   },
               .holder = HolderPair{1.0, 1.0},
               .sup_norm = 1.0,
               .bounded = true});
  return r;
}

}  // namespace

const std::vector<FunctionEntry>& function_registry() {
  static const std::vector<FunctionEntry> registry = build_registry();
  return registry;
}

const FunctionEntry& find_function(std::string_view name) {
  for (const auto& entry : function_registry()) {
    if (entry.name == name) return entry;
  }
  std::string known;
  for (const auto& entry : function_registry()) known += (known.empty() ? "" : ", ") + entry.name;
  throw ConfigError("unknown function '" + std::string(name) + "' (known: " + known + ")");
}

}  // namespace dunkl

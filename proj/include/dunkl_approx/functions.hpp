#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dunkl_approx/operator_engine.hpp"

namespace dunkl {

struct HolderPair {
  double M = 1.0;
  double beta = 1.0;
};

/// A test function with whatever analytic metadata is known for it on
/// [0, inf). Moduli are exact (suprema over the whole half-line), not grid
/// estimates.
struct FunctionEntry {
  std::string name;
  RealFunction evaluator;
  std::function<double(double)> analytic_modulus;   // delta -> w(f; delta)
  std::function<double(double)> analytic_modulus2;  // s -> w2(f; s)
  std::optional<HolderPair> holder;
  std::optional<double> sup_norm;  // sup |f| on [0, inf)
  bool bounded = false;
};

/// Built-in functions: const1, id, square, sinx, cosx, sqrtx, expnegx.
[[nodiscard]] const std::vector<FunctionEntry>& function_registry();

/// Throws ConfigError for unknown names.
[[nodiscard]] const FunctionEntry& find_function(std::string_view name);

}  // namespace dunkl

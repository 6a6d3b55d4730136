#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dunkl_approx/functions.hpp"
#include "dunkl_approx/operator_engine.hpp"

namespace dunkl {

enum class ModulusKind { first, second };

/// Grid estimate of a modulus of continuity on the window [0, window_end].
/// A grid supremum lower-bounds the true modulus.
struct ModulusEstimate {
  double delta = 0.0;
  double value = 0.0;
  double window_end = 0.0;
  double grid_step = 0.0;
  ModulusKind kind = ModulusKind::first;
};

/// max |f(x) - f(x + h)| over grid points x and increments
/// h in {step, 2 step, ..., delta}. Requires grid_step <= delta / 8.
[[nodiscard]] ModulusEstimate modulus1(const RealFunction& f, double delta, double window_end,
                                       double grid_step);

/// max |f(x + 2h) - 2 f(x + h) + f(x)| over grid points x with x + 2h in the
/// window and h in {step, 2 step, ..., s}. Requires grid_step <= s / 8.
[[nodiscard]] ModulusEstimate modulus2(const RealFunction& f, double s, double window_end,
                                       double grid_step);

using ModulusProvider = std::function<double(double)>;

/// (1 + lambda_n(x)) w(1 / sqrt(n)) with lambda_n(x) = sqrt(n Omega_2(x)).
[[nodiscard]] double theorem2_bound(const OperatorSpec& spec, double x, const ModulusProvider& w);

/// M Omega_2^(beta/2) for 0 < beta <= 1.
[[nodiscard]] double theorem3_bound(const OperatorSpec& spec, double x, double M, double beta);

/// Scale used by the second-modulus bound when Omega_2 vanishes.
inline constexpr double kTheorem4ScaleFloor = 1e-8;

/**
 * (3/4)(2 + a + s^2) w2(s) + (2 s^2 / a) sup_norm with s = Omega_2^(1/4)
 * and a = interval_end, for 0 <= x <= a. When Omega_2 = 0 the modulus is
 * taken at kTheorem4ScaleFloor and the s^2 terms vanish.
 */
[[nodiscard]] double theorem4_bound(const OperatorSpec& spec, double x, double interval_end,
                                    const ModulusProvider& w2, double sup_norm);

enum class Theorem { T2, T3, T4 };

[[nodiscard]] std::string to_string(Theorem t);
/// Accepts "T2", "T3", "T4" (case-insensitive). Throws ConfigError otherwise.
[[nodiscard]] Theorem parse_theorem(std::string_view text);

/// Inputs actually used for one bound evaluation.
struct BoundInputs {
  Theorem theorem = Theorem::T2;
  double M = 0.0;
  double beta = 0.0;
  double interval_end = 0.0;
  double sup_norm = 0.0;
  double s = 0.0;
  double lambda_n = 0.0;
};

struct BoundRecord {
  double x = 0.0;
  int n = 1;
  double kf = 0.0;
  double f = 0.0;
  double actual_error = 0.0;
  double omega1 = 0.0;
  double omega2 = 0.0;
  double bound = 0.0;
  double margin = 0.0;
  BoundInputs inputs;
  bool flagged = false;  // Theorem 4 evaluated with the floored scale
};

/// Violations are margins below -kBoundSlack.
inline constexpr double kBoundSlack = 1e-9;

struct BoundReport {
  std::vector<BoundRecord> records;
  double min_margin = 0.0;
  std::size_t violations = 0;
  // False when a modulus came from a grid estimate: the run is then a
  // consistency check, not a proof of the inequality.
  bool analytic_modulus = true;

  [[nodiscard]] bool passed() const noexcept { return violations == 0; }
};

struct VerifyParams {
  std::optional<HolderPair> holder;  // overrides the registry pair for T3
  double interval_end = 2.0;         // T4
  double grid_step = 1e-3;           // for grid-estimated moduli
  double window_end = 0.0;           // 0: max(grid) + 3 / sqrt(n) + 1
  // Multiplies the modulus fed to T2/T4. Values below 1 turn the run into a
  // negative control.
  double modulus_scale = 1.0;
};

/// Compares |K_n f - f| with the chosen bound at every grid point.
/// Throws ConfigError when f lacks the metadata the theorem needs.
[[nodiscard]] BoundReport verify(const OperatorSpec& spec, const FunctionEntry& f, Theorem theorem,
                                 std::span<const double> grid, const VerifyParams& params = {});

}  // namespace dunkl

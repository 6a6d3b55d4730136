#pragma once

#include <cstddef>
#include <functional>

#include "dunkl_approx/appell_family.hpp"

namespace dunkl {

using RealFunction = std::function<double(double)>;

/// One member K_n^mu of the operator sequence together with its
/// truncation policy.
struct OperatorSpec {
  AppellFamily family;
  int n = 1;
  double tol = 1e-13;
  std::size_t cap = 0;  // 0: automatic, see WeightPolicy
  bool allow_unverified = false;

  [[nodiscard]] WeightPolicy policy() const { return {tol, cap, allow_unverified}; }
  [[nodiscard]] const DunklContext& context() const noexcept { return family.context(); }
};

/// Evaluation node (i + 2 mu theta(i)) / n.
[[nodiscard]] inline double node(const DunklContext& ctx, std::size_t i, int n) noexcept {
  return ctx.step(i) / static_cast<double>(n);
}

/// K_n^mu(f; x) = sum_i w_i f(node_i) over the truncated weights.
/// Throws RangeError naming the node when f is not finite there.
[[nodiscard]] double apply(const OperatorSpec& spec, const RealFunction& f, double x);

/// Same as apply() but reuses precomputed weights for spec at w.x.
[[nodiscard]] double apply(const OperatorSpec& spec, const WeightSequence& w, const RealFunction& f);

/// Functionals of Q entering the closed-form moments. L is the Dunkl
/// operator, ' the ordinary derivative.
struct QFunctionals {
  double q1 = 0.0;     // Q(1)
  double q_m1 = 0.0;   // Q(-1)
  double dq1 = 0.0;    // Q'(1)
  double dq_m1 = 0.0;  // Q'(-1)
  double d2q1 = 0.0;   // Q''(1)
  double lq1 = 0.0;    // (L Q)(1)
  double lq_m1 = 0.0;  // (L Q)(-1)
  double d_lq1 = 0.0;  // (L Q)'(1)
  double l_dq1 = 0.0;  // (L Q')(1)
  double llq1 = 0.0;   // (L^2 Q)(1)
};

/// Computes every functional by composing series transforms of Q.
[[nodiscard]] QFunctionals q_functionals(const AppellFamily& family);

struct RawMoments {
  double m0 = 0.0;  // K(1; x)
  double m1 = 0.0;  // K(t; x)
  double m2 = 0.0;  // K(t^2; x)
};

/// Closed-form K(1), K(t), K(t^2) in terms of Q functionals and
/// e_mu(-nx) / e_mu(nx). m0 is exactly 1.
[[nodiscard]] RawMoments moments_closed(const OperatorSpec& spec, double x);

/// The same moments by summing the operator over its weights.
[[nodiscard]] RawMoments moments_summed(const OperatorSpec& spec, double x);

enum class MomentSource { closed_form, series_summed };

struct CentralMoments {
  double omega1 = 0.0;  // K(t - x; x)
  double omega2 = 0.0;  // K((t - x)^2; x), clamped at 0
  MomentSource source = MomentSource::closed_form;
};

/**
 * Closed-form central moments. Omega_2 is computed from its own printed
 * formula and again as m2 - 2 x m1 + x^2 from the raw moments; a relative
 * disagreement above 1e-10 (beyond the cancellation floor of the second
 * route) throws TranscriptionError.
 */
[[nodiscard]] CentralMoments central_moments(const OperatorSpec& spec, double x);

/// Central moments by summing (t - x) and (t - x)^2 against the weights.
[[nodiscard]] CentralMoments central_moments_summed(const OperatorSpec& spec, double x);

/// n * (leading x/n part of Omega_2):
///   x (1 + 2 r (mu Q(-1) + Q'(1) - (L Q)(1)) / Q(1)),  r = e_mu(-nx)/e_mu(nx).
/// For Q = 1 this equals n * K((t - x)^2; x) exactly.
[[nodiscard]] double omega2_leading_term(const OperatorSpec& spec, double x);

}  // namespace dunkl

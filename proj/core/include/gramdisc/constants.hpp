#pragma once

#include <cstddef>
#include <numbers>

namespace gramdisc {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

inline constexpr int kLambertMaxIterations = 50;

/// Section sums longer than this use compensated accumulation.
inline constexpr std::size_t kCompensatedSumThreshold = 100000;

/// Repulsion bound |Z'(g_n)| > 4 |Z(g_n)| for isolated bad Gram points; also
/// the viscosity below which a bad point is reported as corrupt.
inline constexpr double kRepulsionConstant = 4.0;

/// |Z(g_n)| below kUncertainScale * t^kUncertainExponent is flagged uncertain.
/// The exponent tracks the first omitted Riemann-Siegel remainder term.
inline constexpr double kUncertainScale = 10.0;
inline constexpr double kUncertainExponent = -1.75;

/*!
  Convention constant c in

      H_n(a) = c (-1)^n (S(a) / ln(g_n/2pi))^2,
      S(a)   = sum_k a_k sin(ln(k+1) g_n) ln(g_n/(2pi(k+1)^2)) / sqrt(k+1).

  c = 1 is forced by the quadratic-form identity H_n(a) = a^T Hess a with the
  rank-one entries. Since Z'_N(g_n; a) = (-1)^n S(a)/2, this is the same as
  4 (-1)^n (Z'/ln)^2; the factor 4 (not 2) reproduces H_90(1) = 0.00203615
  and H_126(1) = 2.22893 to within 0.6%.
*/
inline constexpr double kHessianFormConstant = 1.0;
inline constexpr double kHessianZPrimeFactor = 4.0 * kHessianFormConstant;

}  // namespace gramdisc

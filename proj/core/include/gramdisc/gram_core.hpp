#pragma once

#include "gramdisc/special_functions.hpp"

namespace gramdisc {

/// Solution of theta(t) = pi n. The abscissa is kept in extended precision;
/// `residual` is |theta(t) - pi n| evaluated in that precision.
struct GramPoint {
  long n = 0;
  long double t = 0.0L;
  double residual = 0.0;

  double abscissa() const noexcept { return static_cast<double>(t); }
};

/// Approximate zero of the core function cos(theta(t)) from the Lambert-W
/// closed form t_n = (8n - 11) pi / (4 W0((8n - 11)/(8e))).
struct CoreZero {
  long n = 0;
  double t = 0.0;
};

/// Smallest supported Gram index; theta only reaches -pi above its minimum.
inline constexpr long kMinGramIndex = -1;

/// Gram point g_n, n >= -1. Newton from the leading-order Lambert-W inverse,
/// with bisection whenever an iterate leaves the bracket.
/// Throws DomainError for n < -1, ConvergenceError on a solver failure.
GramPoint gram_point(long n, const ThetaSeries& theta_series = ThetaSeries{});

/// Core function Z0(t) = cos(theta(t)).
double z0(double t);

CoreZero core_zero(long n);

}  // namespace gramdisc

#include "gramdisc/gram_core.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "gramdisc/constants.hpp"
#include "gramdisc/errors.hpp"

namespace gramdisc {
namespace {

constexpr int kGramMaxIterations = 200;

// Leading-order inverse of theta(t) = pi n:
//   (t/2pi) ln(t/(2pi e)) = n + 1/8  =>  t = 2pi exp(1 + W0((8n + 1)/(8e))).
long double gram_initial_guess(long n) {
  const double w = lambert_w0((8.0 * static_cast<double>(n) + 1.0) / (8.0 * std::numbers::e));
  return static_cast<long double>(kTwoPi * std::exp(1.0 + w));
}

}  // namespace

GramPoint gram_point(long n, const ThetaSeries& theta_series) {
  if (n < kMinGramIndex) {
    throw DomainError("gram_point requires n >= -1", "n=" + std::to_string(n));
  }
  const long double target = std::numbers::pi_v<long double> * static_cast<long double>(n);
  auto f = [&](long double t) { return theta_series.value(t) - target; };

  long double lo = static_cast<long double>(kTwoPi);
  long double t = std::fmax(gram_initial_guess(n), lo);
  long double hi = 1.5L * t + 10.0L;
  while (f(hi) <= 0.0L) {
    lo = hi;
    hi *= 2.0L;
  }

  const long double eps = std::numeric_limits<long double>::epsilon();
  for (int iter = 0; iter < kGramMaxIterations; ++iter) {
    const long double value = f(t);
    if (value == 0.0L) return GramPoint{n, t, 0.0};
    if (value < 0.0L) {
      lo = t;
    } else {
      hi = t;
    }
    const long double slope = theta_series.prime(t, ThetaVariant::series);
    long double next = slope > 0.0L ? t - value / slope : 0.5L * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5L * (lo + hi);
    const long double step = std::fabs(next - t);
    t = next;
    if (step <= 4.0L * eps * t || hi - lo <= 4.0L * eps * t) {
      const double residual = static_cast<double>(std::fabs(f(t)));
      return GramPoint{n, t, residual};
    }
  }
  throw ConvergenceError("gram_point: iteration cap reached", "n=" + std::to_string(n));
}

double z0(double t) { return std::cos(reduce_angle(theta(static_cast<long double>(t)))); }

CoreZero core_zero(long n) {
  if (n < 2) {
    throw DomainError("core_zero requires n >= 2", "n=" + std::to_string(n));
  }
  const double m = 8.0 * static_cast<double>(n) - 11.0;
  const double w = lambert_w0(m / (8.0 * std::numbers::e));
  return CoreZero{n, m * kPi / (4.0 * w)};
}

}  // namespace gramdisc

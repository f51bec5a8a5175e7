#include "gramdisc/special_functions.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "gramdisc/constants.hpp"
#include "gramdisc/errors.hpp"

namespace gramdisc {
namespace {

constexpr long double kPiL = std::numbers::pi_v<long double>;
constexpr long double kTwoPiL = 2.0L * kPiL;

void check_domain(double t, const char* what) {
  // Closed at 2pi: the double nearest 2pi lies below the true value.
  if (!(t >= kTwoPi)) {
    throw DomainError(std::string(what) + " requires t >= 2pi", "t=" + std::to_string(t));
  }
}

// Even Taylor coefficients of Psi(1/2 + z), z^0 .. z^60.
constexpr std::array<double, 31> kPsiCoefficients = {
    0.382683432365089771728,     1.74896187231008179744,      2.11802520768549637318,
    -0.870721667051148073919,    -3.47331122434651670731,     -1.66269473089993244964,
    1.21673128891923213448,      1.3014304161007975773,       0.0305110218273616724211,
    -0.37558030515450952428,     -0.108578441656406597435,    0.0518329029995496233758,
    0.0299994806199022759204,    -2.27593967061256422602e-3,  -4.38264741658033830594e-3,
    -4.06423018372984699307e-4,  4.00609778542211392789e-4,   8.97105799138884129783e-5,
    -2.30256500272391071161e-5,  -9.38000660190679248472e-6,  6.32351494760910750425e-7,
    6.55102281923150166621e-7,   2.21052374555269725866e-8,   -3.32231617644562883503e-8,
    -3.73491098993365608176e-9,  1.24450670607977391952e-9,   2.47682053765021918425e-10,
    -3.28427281689162719446e-11, -1.13054068522984036779e-11, 4.56546397958869392759e-13,
    3.95984809452492151959e-13,
};

}  // namespace

ThetaSeries::ThetaSeries(int correction_order) : order_(correction_order) {
  if (correction_order < 0 || correction_order > 2) {
    throw DomainError("theta correction_order must be 0, 1 or 2",
                      "correction_order=" + std::to_string(correction_order));
  }
}

long double ThetaSeries::value(long double t) const {
  check_domain(static_cast<double>(t), "theta");
  long double result = 0.5L * t * std::log(t / kTwoPiL) - 0.5L * t - kPiL / 8.0L;
  if (order_ >= 1) result += 1.0L / (48.0L * t);
  if (order_ >= 2) result += 7.0L / (5760.0L * t * t * t);
  return result;
}

double ThetaSeries::value(double t) const {
  return static_cast<double>(value(static_cast<long double>(t)));
}

long double ThetaSeries::prime(long double t, ThetaVariant variant) const {
  check_domain(static_cast<double>(t), "theta_prime");
  long double result = 0.5L * std::log(t / kTwoPiL);
  if (variant == ThetaVariant::truncated) return result;
  const long double t2 = t * t;
  if (order_ >= 1) result -= 1.0L / (48.0L * t2);
  if (order_ >= 2) result -= 7.0L / (1920.0L * t2 * t2);
  return result;
}

double ThetaSeries::prime(double t, ThetaVariant variant) const {
  return static_cast<double>(prime(static_cast<long double>(t), variant));
}

double ThetaSeries::second(double t, ThetaVariant variant) const {
  check_domain(t, "theta_second");
  double result = 0.5 / t;
  if (variant == ThetaVariant::truncated) return result;
  const double t3 = t * t * t;
  if (order_ >= 1) result += 1.0 / (24.0 * t3);
  if (order_ >= 2) result += 7.0 / (480.0 * t3 * t * t);
  return result;
}

double theta(double t) { return ThetaSeries{}.value(t); }
long double theta(long double t) { return ThetaSeries{}.value(t); }
double theta_prime(double t, ThetaVariant variant) { return ThetaSeries{}.prime(t, variant); }
double theta_second(double t, ThetaVariant variant) { return ThetaSeries{}.second(t, variant); }

double lambert_w0(double x) {
  constexpr double inv_e = 1.0 / std::numbers::e;
  if (!(x >= -inv_e)) {
    throw DomainError("lambert_w0 requires x >= -1/e", "x=" + std::to_string(x));
  }
  if (x == 0.0) return 0.0;
  if (x == -inv_e) return -1.0;

  double w;
  if (x < -0.25) {
    // Branch-point series in p = sqrt(2(ex + 1)).
    const double p = std::sqrt(2.0 * (std::numbers::e * x + 1.0));
    w = -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p * p * p;
  } else if (x < 3.0) {
    w = std::log1p(x);
  } else {
    const double l1 = std::log(x);
    const double l2 = std::log(l1);
    w = l1 - l2 + l2 / l1;
  }

  for (int iter = 0; iter < kLambertMaxIterations; ++iter) {
    const double ew = std::exp(w);
    const double f = w * ew - x;
    if (f == 0.0) break;
    const double wp1 = w + 1.0;
    if (wp1 == 0.0) break;
    const double dw = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1));
    w -= dw;
    if (std::fabs(dw) <= 4.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::fabs(w))) break;
  }

  const double residual = std::fabs(w * std::exp(w) - x);
  if (residual > 1e-14 * std::fmax(1.0, std::fabs(x))) {
    throw ConvergenceError("lambert_w0 did not converge",
                           "x=" + std::to_string(x) + ",residual=" + std::to_string(residual));
  }
  return w;
}

double rs_psi(double p, int derivative) {
  if (derivative < 0) throw DomainError("rs_psi derivative order must be non-negative");
  const double z = p - 0.5;
  double result = 0.0;
  for (std::size_t i = 0; i < kPsiCoefficients.size(); ++i) {
    const int j = static_cast<int>(2 * i);
    if (j < derivative) continue;
    double falling = 1.0;
    for (int m = 0; m < derivative; ++m) falling *= static_cast<double>(j - m);
    result += kPsiCoefficients[i] * falling * std::pow(z, j - derivative);
  }
  return result;
}

double reduce_angle(long double x) {
  constexpr long double two_pi = 2.0L * std::numbers::pi_v<long double>;
  return static_cast<double>(x - two_pi * static_cast<long double>(static_cast<long long>(x / two_pi)));
}

}  // namespace gramdisc

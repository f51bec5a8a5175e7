#pragma once

namespace gramdisc {

/// Which derivative of theta to use.
///
/// `truncated` is the leading-order form 1/2 ln(t/2pi) (and 1/(2t) for the
/// second derivative) that all closed-form discriminant formulas are written
/// in. `series` is the exact derivative of the implemented asymptotic series
/// and is what root solvers should use.
enum class ThetaVariant { truncated, series };

/*!
  Riemann-Siegel theta function via its asymptotic expansion

      theta(t) = t/2 ln(t/2pi) - t/2 - pi/8 + 1/(48t) + 7/(5760t^3)

  `correction_order` selects how many of the 1/t corrections are kept
  (0: none, 1: the 1/(48t) term, 2: both). The expansion is only used on
  t > 2pi, where theta is increasing; smaller arguments throw DomainError.

  Evaluation is carried out in long double so that Gram points at heights
  near 10^6 can be resolved to 1e-10 in theta.
*/
class ThetaSeries {
 public:
  explicit ThetaSeries(int correction_order = 2);

  int correction_order() const noexcept { return order_; }

  double value(double t) const;
  long double value(long double t) const;
  double prime(double t, ThetaVariant variant = ThetaVariant::series) const;
  long double prime(long double t, ThetaVariant variant = ThetaVariant::series) const;
  double second(double t, ThetaVariant variant = ThetaVariant::series) const;

 private:
  int order_;
};

double theta(double t);
long double theta(long double t);
double theta_prime(double t, ThetaVariant variant = ThetaVariant::series);
double theta_second(double t, ThetaVariant variant = ThetaVariant::series);

/// x reduced modulo 2pi into (-2pi, 2pi) in extended precision, then
/// rounded to double. Used for every cos/sin of a theta-sized phase.
double reduce_angle(long double x);

/// Principal branch W0 of the Lambert function, x >= -1/e.
/// Halley iteration; the result satisfies |w e^w - x| <= 1e-14 max(1, |x|).
double lambert_w0(double x);

/// Psi(p) = cos(2pi(p^2 - p - 1/16)) / cos(2pi p) and its derivatives,
/// the kernel of the Riemann-Siegel remainder terms. Valid for p in [0, 1];
/// evaluated from its Taylor series about p = 1/2 so the removable
/// singularities at p = 1/4, 3/4 need no special handling.
double rs_psi(double p, int derivative = 0);

}  // namespace gramdisc

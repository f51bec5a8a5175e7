#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "gramdisc/special_functions.hpp"

namespace gramdisc {

/*!
  Coefficients a_1..a_N of a point in the parameter space Z_N.

  Two storage forms share one interface:
  - dense: one value per index;
  - sparse: a fill value for every index plus a map of overrides, so the
    split curves with ~2*10^5 coefficients never materialise a vector.

  Indices are 1-based to match the section sum.
*/
class ParameterVector {
 public:
  static ParameterVector dense(std::vector<double> coefficients);
  static ParameterVector constant(std::size_t size, double value);
  static ParameterVector zeros(std::size_t size) { return constant(size, 0.0); }
  static ParameterVector sparse(std::size_t size, double fill, std::map<std::size_t, double> overrides);
  /// Single nonzero coefficient a_k = value.
  static ParameterVector unit(std::size_t size, std::size_t k, double value = 1.0);

  std::size_t size() const noexcept { return size_; }
  bool is_dense() const noexcept { return dense_; }
  double fill() const noexcept { return fill_; }
  const std::map<std::size_t, double>& overrides() const noexcept { return overrides_; }
  const std::vector<double>& values() const noexcept { return values_; }

  /// a_k for 1 <= k <= size().
  double operator[](std::size_t k) const;
  std::vector<double> to_dense() const;
  bool is_zero() const;

  ParameterVector scaled(double factor) const;
  /// Same coefficients, extended (with 0) or truncated to `new_size`.
  ParameterVector resized(std::size_t new_size) const;

  /// Compact description used in exported records, e.g. "const:1",
  /// "sparse:0|1=0.5,3=0.2" or "dense:N=5".
  std::string describe() const;

 private:
  ParameterVector() = default;
  void validate() const;

  std::size_t size_ = 0;
  bool dense_ = false;
  double fill_ = 0.0;
  std::map<std::size_t, double> overrides_;
  std::vector<double> values_;
};

/// Componentwise (1-u) a + u b. Sizes must agree.
ParameterVector lerp(const ParameterVector& a, const ParameterVector& b, double u);

/// Dot product sum_k a_k v[k-1] over k = 1..min(a.size(), v.size()).
double dot(const ParameterVector& a, const std::vector<double>& v);

/// Immutable tables ln(k+1), 1/sqrt(k+1) for k = 1..N. Shareable across threads.
class SectionContext {
 public:
  explicit SectionContext(std::size_t terms);

  std::size_t size() const noexcept { return logs_.size(); }
  /// ln(k+1), 1-based.
  double log(std::size_t k) const { return logs_[k - 1]; }
  /// 1/sqrt(k+1), 1-based.
  double inv_sqrt(std::size_t k) const { return inv_sqrts_[k - 1]; }
  const std::vector<double>& logs() const noexcept { return logs_; }
  const std::vector<double>& inv_sqrts() const noexcept { return inv_sqrts_; }

  /// N(t) = floor(t/2), the Spira section length.
  static std::size_t spira_terms(double t);
  /// floor(sqrt(t/2pi)), the approximate-functional-equation length.
  static std::size_t afe_terms(double t);

 private:
  std::vector<double> logs_;
  std::vector<double> inv_sqrts_;
};

/// Z_N(t; a) and its first two t-derivatives from one pass over the terms.
struct SectionValue {
  double value = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
};

/*!
  Evaluates

      Z_N(t; a) = cos theta(t) + sum_{k=1}^{N} a_k/sqrt(k+1) cos(theta(t) - ln(k+1) t)

  with N = a.size() (which must not exceed ctx.size()). Derivatives use the
  chosen theta variant. Throws DomainError for t < 2pi and LengthMismatch
  when the context is too short.
*/
SectionValue evaluate_section(double t, const ParameterVector& a, const SectionContext& ctx,
                              ThetaVariant variant = ThetaVariant::series,
                              const ThetaSeries& theta_series = ThetaSeries{});

double z_section(double t, const ParameterVector& a, const SectionContext& ctx);
double z_section_dt(double t, const ParameterVector& a, const SectionContext& ctx,
                    ThetaVariant variant = ThetaVariant::series);
double z_section_dtt(double t, const ParameterVector& a, const SectionContext& ctx,
                     ThetaVariant variant = ThetaVariant::series);

/// Approximate-functional-equation main sum
///   2 sum_{m=1}^{floor(sqrt(t/2pi))} cos(theta(t) - t ln m)/sqrt(m)
/// without any remainder term.
double z_afe(double t);
/// Exact t-derivative of z_afe (series theta').
double z_prime_afe(double t);

/// Hardy Z(t) via the Riemann-Siegel formula: z_afe plus the C0, C1, C2
/// remainder terms. Error is O(t^{-7/4}).
double hardy_z(double t);
/// Exact t-derivative of hardy_z.
double hardy_z_prime(double t);

/*!
  One row of the A_k / B_k term table at a Gram point g_n:

      cos_val = (-1)^n cos(ln(k+1) g_n)
      sin_val = (-1)^n sin(ln(k+1) g_n)
      A       = cos_val / sqrt(k+1)
      B       = ln(g_n / (2pi (k+1)^2)) sin_val / sqrt(k+1)

  This is the convention of the published table at n = 730119. Under it the
  approximate functional equation reads z_afe(g_n) = 2((-1)^n + sum A_k)
  and z_prime_afe(g_n) ~= sum B_k, both summed over k = 1..floor(sqrt(g_n/2pi)) - 1.
*/
struct TermRow {
  std::size_t k = 0;
  double cos_val = 0.0;
  double sin_val = 0.0;
  double a = 0.0;
  double b = 0.0;
};

std::vector<TermRow> term_table(long n, std::size_t k_max);

}  // namespace gramdisc

#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <memory>
#include <vector>

#include "gramdisc/section_engine.hpp"
#include "gramdisc/special_functions.hpp"

namespace gramdisc {

/// Step control for following g_n(a) along a parameter path.
struct ContinuationOptions {
  /// Uniform steps used to cover [0, 1] in extend().
  int initial_steps = 16;
  /// A step whose Newton solve needs more updates than this is bisected.
  int max_newton_per_step = 8;
  /// Hard cap on Newton updates over a whole path (NoConvergence).
  int total_newton_cap = 100000;
  /// Steps shorter than this abort the path (ExtremumLost / WindowEscape).
  double min_step = 0x1p-20;
  /// Newton stops once |Z'_N| <= newton_tolerance * ln(g_n / 2pi).
  double newton_tolerance = 1e-10;
  ThetaSeries theta{};
};

/// g_n(a): the extremum of Z_N(t; a) continued from g_n at a = 0.
struct ExtendedGramPoint {
  long n;
  ParameterVector a;
  double t;
  int steps;
  int newton_iters;
  bool converged;
  /// Sign of Z_N'' at the extremum; always (-1)^{n+1}.
  int second_deriv_sign;
};

/// Delta_n(a) = Z_{N(g_n)}(g_n(a); a).
struct DiscriminantRecord {
  long n;
  ParameterVector a;
  double delta;
  /// (-1)^n delta; positive when the corrected Gram law holds at a.
  double signed_delta;
  ExtendedGramPoint point;
};

/// s -> a(s) for s in [0, 1].
using ParameterPath = std::function<ParameterVector(double)>;

/*!
  Everything attached to one Gram index n: g_n, the tracking window
  (g_{n-1}, g_{n+1}), the section context with N(g_n) = floor(g_n/2) terms,
  and the closed-form derivatives of Delta_n at a = 0.

  Closed forms use the truncated theta' = 1/2 ln(t/2pi) and the phase
  reduction theta(g_n) = pi n; continuation uses the series theta'.

  Instances are immutable and safe to share between threads.
*/
class GramDiscriminant {
 public:
  explicit GramDiscriminant(long n, ContinuationOptions options = {});

  long index() const noexcept { return n_; }
  double gram_abscissa() const noexcept { return g_; }
  /// N(g_n) = floor(g_n / 2).
  std::size_t dimension() const noexcept { return ctx_->size(); }
  double window_lo() const noexcept { return window_lo_; }
  double window_hi() const noexcept { return window_hi_; }
  /// ln(g_n / 2pi).
  double log_height() const noexcept { return log_height_; }
  const SectionContext& context() const noexcept { return *ctx_; }
  const ContinuationOptions& options() const noexcept { return options_; }

  /// Continues g_n along the straight segment s a, s in [0, 1].
  ExtendedGramPoint extend(const ParameterVector& a) const;
  DiscriminantRecord evaluate(const ParameterVector& a) const;

  struct PathPoint {
    double s;
    double t;
    int steps;
    int newton_iters;
    /// dt/ds over the last accepted step; seeds the next predictor.
    double slope;
  };

  /// Continues the extremum from (s_from, t_from) to s_to along `path`,
  /// starting with `initial_steps` uniform steps and bisecting on failure.
  /// A finite `slope` enables the secant predictor from the first step.
  /// Throws ExtremumLost, WindowEscape or NoConvergence.
  PathPoint follow(const ParameterPath& path, double s_from, double t_from, double s_to,
                   int initial_steps, double slope = std::numeric_limits<double>::quiet_NaN()) const;

  /// dDelta_n/da_k(0) = (-1)^n cos(ln(k+1) g_n)/sqrt(k+1), k = 1..N.
  std::vector<double> gradient() const;
  /// dg_n/da_k(0) = 2 sin(ln(k+1) g_n) ln(g_n/(2pi(k+1)^2)) / (sqrt(k+1) ln^2(g_n/2pi)).
  std::vector<double> gram_point_gradient() const;
  /// Rank-one factor u_k with Hess_{k1 k2}(0) = (-1)^n u_{k1} u_{k2}.
  std::vector<double> hessian_factor() const;
  double hessian_entry(std::size_t k1, std::size_t k2) const;
  /// a^T Hess(0) a = c (-1)^n (S(a)/ln(g_n/2pi))^2.
  double hessian_form(const ParameterVector& a) const;
  /// Z_N(g_n; a) + H_n(a)/2.
  double second_order_approx(const ParameterVector& a) const;
  /// 1/4 (-1)^n ln^2(g_n/2pi) a . grad g_n(0).
  double z_prime_via_gradient(const ParameterVector& a) const;

 private:
  double sign() const noexcept { return n_ % 2 == 0 ? 1.0 : -1.0; }
  void check_size(const ParameterVector& a) const;

  long n_;
  ContinuationOptions options_;
  double g_;
  double window_lo_;
  double window_hi_;
  double log_height_;
  std::shared_ptr<const SectionContext> ctx_;
  std::vector<double> sin_g_;
  std::vector<double> cos_g_;
  std::vector<double> ell_;
};

ExtendedGramPoint extend_gram_point(long n, const ParameterVector& a, const ContinuationOptions& options = {});
DiscriminantRecord discriminant(long n, const ParameterVector& a, const ContinuationOptions& options = {});
std::vector<double> discriminant_gradient(long n);
std::vector<double> gram_point_gradient(long n);
double hessian_entry(long n, std::size_t k1, std::size_t k2);
double hessian_form(long n, const ParameterVector& a);
double second_order_approx(long n, const ParameterVector& a);
double z_prime_via_gradient(long n, const ParameterVector& a);

}  // namespace gramdisc

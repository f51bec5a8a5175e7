#include "gramdisc/discriminant.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "gramdisc/constants.hpp"
#include "gramdisc/errors.hpp"
#include "gramdisc/gram_core.hpp"

namespace gramdisc {
namespace {

constexpr double kUlpScale = std::numeric_limits<double>::epsilon();

enum class StepFailure { none, newton, extremum_type, window };

struct NewtonResult {
  double t = 0.0;
  int iterations = 0;
  StepFailure failure = StepFailure::none;
};

}  // namespace

GramDiscriminant::GramDiscriminant(long n, ContinuationOptions options)
    : n_(n), options_(std::move(options)) {
  const GramPoint gp = gram_point(n, options_.theta);
  g_ = gp.abscissa();
  window_lo_ = n > kMinGramIndex ? gram_point(n - 1, options_.theta).abscissa() : kTwoPi;
  window_hi_ = gram_point(n + 1, options_.theta).abscissa();
  log_height_ = std::log(g_ / kTwoPi);
  ctx_ = std::make_shared<const SectionContext>(SectionContext::spira_terms(g_));

  const std::size_t terms = ctx_->size();
  sin_g_.resize(terms);
  cos_g_.resize(terms);
  ell_.resize(terms);
  for (std::size_t k = 1; k <= terms; ++k) {
    const double m = static_cast<double>(k + 1);
    const double x = ctx_->log(k) * g_;
    sin_g_[k - 1] = std::sin(x);
    cos_g_[k - 1] = std::cos(x);
    ell_[k - 1] = std::log(g_ / (kTwoPi * m * m));
  }
}

void GramDiscriminant::check_size(const ParameterVector& a) const {
  if (a.size() > dimension()) {
    throw LengthMismatch("parameter vector longer than N(g_n)",
                         "N=" + std::to_string(a.size()) + ",N(g_n)=" + std::to_string(dimension()));
  }
}

GramDiscriminant::PathPoint GramDiscriminant::follow(const ParameterPath& path, double s_from, double t_from,
                                                     double s_to, int initial_steps, double slope) const {
  const double expected_sign = n_ % 2 == 0 ? -1.0 : 1.0;
  const double tolerance = options_.newton_tolerance * log_height_;

  auto newton = [&](const ParameterVector& a, double t) {
    NewtonResult r;
    for (int i = 0;; ++i) {
      if (!(t > window_lo_ && t < window_hi_)) {
        r.failure = StepFailure::window;
        r.iterations = i;
        return r;
      }
      const SectionValue ev = evaluate_section(t, a, *ctx_, ThetaVariant::series, options_.theta);
      if (!(ev.d2 * expected_sign > 0.0)) {
        r.failure = StepFailure::extremum_type;
        r.iterations = i;
        return r;
      }
      const double step = ev.d1 / ev.d2;
      // A Newton step below a few ulps of t is the resolution limit of a binary64 abscissa.
      if (std::fabs(ev.d1) <= tolerance || std::fabs(step) <= 4.0 * kUlpScale * std::fabs(t)) {
        r.t = t;
        r.iterations = i;
        return r;
      }
      if (i >= options_.max_newton_per_step) {
        r.failure = StepFailure::newton;
        r.iterations = i;
        return r;
      }
      t -= step;
    }
  };

  PathPoint out{s_from, t_from, 0, 0, slope};
  if (s_to <= s_from) return out;

  const double base_step = (s_to - s_from) / std::max(1, initial_steps);
  double h = base_step;
  double s = s_from;
  double t = t_from;
  bool have_slope = std::isfinite(slope);
  StepFailure last_failure = StepFailure::none;

  while (s < s_to) {
    const double remaining = s_to - s;
    const bool last = h >= remaining * (1.0 - 1e-12);
    const double s_new = last ? s_to : s + h;
    const double predicted = have_slope ? t + slope * (s_new - s) : t;

    const NewtonResult r = newton(path(s_new), predicted);
    out.newton_iters += r.iterations;
    if (out.newton_iters > options_.total_newton_cap) {
      throw NoConvergence("continuation exceeded the Newton iteration cap", s, t);
    }
    if (r.failure == StepFailure::none) {
      slope = (r.t - t) / (s_new - s);
      have_slope = true;
      s = s_new;
      t = r.t;
      ++out.steps;
      h = std::min(2.0 * h, base_step);
      continue;
    }
    last_failure = r.failure;
    h *= 0.5;
    if (h < options_.min_step) {
      if (last_failure == StepFailure::window) {
        throw WindowEscape("extremum left the window (g_{n-1}, g_{n+1})", s, t);
      }
      throw ExtremumLost(last_failure == StepFailure::extremum_type
                             ? "second derivative changed sign along the path"
                             : "Newton failed to converge below the minimum step",
                         s, t);
    }
  }
  out.s = s;
  out.t = t;
  out.slope = slope;
  return out;
}

ExtendedGramPoint GramDiscriminant::extend(const ParameterVector& a) const {
  check_size(a);
  const int type_sign = n_ % 2 == 0 ? -1 : 1;
  if (a.is_zero()) {
    return ExtendedGramPoint{n_, a, g_, 0, 0, true, type_sign};
  }
  const PathPoint end = follow([&a](double s) { return a.scaled(s); }, 0.0, g_, 1.0, options_.initial_steps);
  return ExtendedGramPoint{n_, a, end.t, end.steps, end.newton_iters, true, type_sign};
}

DiscriminantRecord GramDiscriminant::evaluate(const ParameterVector& a) const {
  ExtendedGramPoint point = extend(a);
  const double delta = evaluate_section(point.t, a, *ctx_, ThetaVariant::series, options_.theta).value;
  return DiscriminantRecord{n_, a, delta, sign() * delta, std::move(point)};
}

std::vector<double> GramDiscriminant::gradient() const {
  std::vector<double> out(dimension());
  for (std::size_t k = 1; k <= out.size(); ++k) {
    out[k - 1] = sign() * cos_g_[k - 1] * ctx_->inv_sqrt(k);
  }
  return out;
}

std::vector<double> GramDiscriminant::gram_point_gradient() const {
  std::vector<double> out(dimension());
  const double scale = 2.0 / (log_height_ * log_height_);
  for (std::size_t k = 1; k <= out.size(); ++k) {
    out[k - 1] = scale * sin_g_[k - 1] * ell_[k - 1] * ctx_->inv_sqrt(k);
  }
  return out;
}

std::vector<double> GramDiscriminant::hessian_factor() const {
  std::vector<double> out(dimension());
  for (std::size_t k = 1; k <= out.size(); ++k) {
    out[k - 1] = sin_g_[k - 1] * ell_[k - 1] * ctx_->inv_sqrt(k) / log_height_;
  }
  return out;
}

double GramDiscriminant::hessian_entry(std::size_t k1, std::size_t k2) const {
  if (k1 < 1 || k2 < 1 || k1 > dimension() || k2 > dimension()) {
    throw LengthMismatch("hessian_entry index out of range",
                         "k1=" + std::to_string(k1) + ",k2=" + std::to_string(k2));
  }
  const auto u = [this](std::size_t k) {
    return sin_g_[k - 1] * ell_[k - 1] * ctx_->inv_sqrt(k) / log_height_;
  };
  return sign() * u(k1) * u(k2);
}

double GramDiscriminant::hessian_form(const ParameterVector& a) const {
  check_size(a);
  const double projected = dot(a, hessian_factor());
  return kHessianFormConstant * sign() * projected * projected;
}

double GramDiscriminant::second_order_approx(const ParameterVector& a) const {
  check_size(a);
  const double first_order = evaluate_section(g_, a, *ctx_, ThetaVariant::series, options_.theta).value;
  return first_order + 0.5 * hessian_form(a);
}

double GramDiscriminant::z_prime_via_gradient(const ParameterVector& a) const {
  check_size(a);
  return 0.25 * sign() * log_height_ * log_height_ * dot(a, gram_point_gradient());
}

ExtendedGramPoint extend_gram_point(long n, const ParameterVector& a, const ContinuationOptions& options) {
  return GramDiscriminant(n, options).extend(a);
}

DiscriminantRecord discriminant(long n, const ParameterVector& a, const ContinuationOptions& options) {
  return GramDiscriminant(n, options).evaluate(a);
}

std::vector<double> discriminant_gradient(long n) { return GramDiscriminant(n).gradient(); }

std::vector<double> gram_point_gradient(long n) { return GramDiscriminant(n).gram_point_gradient(); }

double hessian_entry(long n, std::size_t k1, std::size_t k2) { return GramDiscriminant(n).hessian_entry(k1, k2); }

double hessian_form(long n, const ParameterVector& a) { return GramDiscriminant(n).hessian_form(a); }

double second_order_approx(long n, const ParameterVector& a) { return GramDiscriminant(n).second_order_approx(a); }

double z_prime_via_gradient(long n, const ParameterVector& a) { return GramDiscriminant(n).z_prime_via_gradient(a); }

}  // namespace gramdisc

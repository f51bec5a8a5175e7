#include "gramdisc/section_engine.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "gramdisc/constants.hpp"
#include "gramdisc/errors.hpp"
#include "gramdisc/gram_core.hpp"
#include "gramdisc/summation.hpp"

namespace gramdisc {

// ---------------------------------------------------------------------------
// ParameterVector

ParameterVector ParameterVector::dense(std::vector<double> coefficients) {
  ParameterVector v;
  v.size_ = coefficients.size();
  v.dense_ = true;
  v.values_ = std::move(coefficients);
  v.validate();
  return v;
}

ParameterVector ParameterVector::constant(std::size_t size, double value) {
  return sparse(size, value, {});
}

ParameterVector ParameterVector::sparse(std::size_t size, double fill,
                                        std::map<std::size_t, double> overrides) {
  ParameterVector v;
  v.size_ = size;
  v.dense_ = false;
  v.fill_ = fill;
  v.overrides_ = std::move(overrides);
  v.validate();
  return v;
}

ParameterVector ParameterVector::unit(std::size_t size, std::size_t k, double value) {
  return sparse(size, 0.0, {{k, value}});
}

void ParameterVector::validate() const {
  if (size_ == 0) throw DomainError("ParameterVector must have at least one coefficient");
  if (dense_) {
    for (double x : values_) {
      if (!std::isfinite(x)) throw DomainError("ParameterVector coefficients must be finite");
    }
    return;
  }
  if (!std::isfinite(fill_)) throw DomainError("ParameterVector fill must be finite");
  for (const auto& [k, x] : overrides_) {
    if (k < 1 || k > size_) {
      throw LengthMismatch("ParameterVector override index out of range",
                           "k=" + std::to_string(k) + ",N=" + std::to_string(size_));
    }
    if (!std::isfinite(x)) throw DomainError("ParameterVector coefficients must be finite");
  }
}

double ParameterVector::operator[](std::size_t k) const {
  if (k < 1 || k > size_) {
    throw LengthMismatch("ParameterVector index out of range",
                         "k=" + std::to_string(k) + ",N=" + std::to_string(size_));
  }
  if (dense_) return values_[k - 1];
  const auto it = overrides_.find(k);
  return it == overrides_.end() ? fill_ : it->second;
}

std::vector<double> ParameterVector::to_dense() const {
  if (dense_) return values_;
  std::vector<double> out(size_, fill_);
  for (const auto& [k, x] : overrides_) out[k - 1] = x;
  return out;
}

bool ParameterVector::is_zero() const {
  if (dense_) return std::all_of(values_.begin(), values_.end(), [](double x) { return x == 0.0; });
  return fill_ == 0.0 &&
         std::all_of(overrides_.begin(), overrides_.end(), [](const auto& kv) { return kv.second == 0.0; });
}

ParameterVector ParameterVector::scaled(double factor) const {
  if (dense_) {
    std::vector<double> out = values_;
    for (double& x : out) x *= factor;
    return dense(std::move(out));
  }
  std::map<std::size_t, double> out = overrides_;
  for (auto& kv : out) kv.second *= factor;
  return sparse(size_, fill_ * factor, std::move(out));
}

ParameterVector ParameterVector::resized(std::size_t new_size) const {
  if (dense_) {
    std::vector<double> out = values_;
    out.resize(new_size, 0.0);
    return dense(std::move(out));
  }
  if (new_size <= size_ || fill_ == 0.0) {
    std::map<std::size_t, double> out(overrides_.begin(), overrides_.upper_bound(new_size));
    return sparse(new_size, fill_, std::move(out));
  }
  std::vector<double> out = to_dense();
  out.resize(new_size, 0.0);
  return dense(std::move(out));
}

std::string ParameterVector::describe() const {
  char buf[64];
  if (dense_) return "dense:N=" + std::to_string(size_);
  std::snprintf(buf, sizeof buf, "%.15g", fill_);
  if (overrides_.empty()) return std::string("const:") + buf;
  std::string out = std::string("sparse:") + buf + "|";
  bool first = true;
  for (const auto& [k, x] : overrides_) {
    std::snprintf(buf, sizeof buf, "%zu=%.15g", k, x);
    if (!first) out += ",";
    out += buf;
    first = false;
  }
  return out;
}

ParameterVector lerp(const ParameterVector& a, const ParameterVector& b, double u) {
  if (a.size() != b.size()) {
    throw LengthMismatch("lerp requires equal sizes",
                         "a=" + std::to_string(a.size()) + ",b=" + std::to_string(b.size()));
  }
  if (a.is_dense() || b.is_dense()) {
    std::vector<double> x = a.to_dense();
    const std::vector<double> y = b.to_dense();
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = (1.0 - u) * x[i] + u * y[i];
    return ParameterVector::dense(std::move(x));
  }
  std::map<std::size_t, double> overrides;
  for (const auto& kv : a.overrides()) overrides[kv.first] = 0.0;
  for (const auto& kv : b.overrides()) overrides[kv.first] = 0.0;
  for (auto& [k, x] : overrides) x = (1.0 - u) * a[k] + u * b[k];
  return ParameterVector::sparse(a.size(), (1.0 - u) * a.fill() + u * b.fill(), std::move(overrides));
}

double dot(const ParameterVector& a, const std::vector<double>& v) {
  const std::size_t n = std::min(a.size(), v.size());
  CompensatedSum acc;
  if (a.is_dense()) {
    for (std::size_t k = 1; k <= n; ++k) acc += a.values()[k - 1] * v[k - 1];
    return acc.value();
  }
  if (a.fill() != 0.0) {
    CompensatedSum all;
    for (std::size_t k = 1; k <= n; ++k) all += v[k - 1];
    acc += a.fill() * all.value();
  }
  for (const auto& [k, x] : a.overrides()) {
    if (k <= n) acc += (x - a.fill()) * v[k - 1];
  }
  return acc.value();
}

// ---------------------------------------------------------------------------
// SectionContext

SectionContext::SectionContext(std::size_t terms) : logs_(terms), inv_sqrts_(terms) {
  for (std::size_t k = 1; k <= terms; ++k) {
    const double m = static_cast<double>(k + 1);
    logs_[k - 1] = std::log(m);
    inv_sqrts_[k - 1] = 1.0 / std::sqrt(m);
  }
}

std::size_t SectionContext::spira_terms(double t) {
  if (!(t >= kTwoPi)) throw DomainError("spira_terms requires t >= 2pi", "t=" + std::to_string(t));
  return static_cast<std::size_t>(std::floor(t / 2.0));
}

std::size_t SectionContext::afe_terms(double t) {
  if (!(t >= kTwoPi)) throw DomainError("afe_terms requires t >= 2pi", "t=" + std::to_string(t));
  return static_cast<std::size_t>(std::floor(std::sqrt(t / kTwoPi)));
}

// ---------------------------------------------------------------------------
// Section sums

namespace {

// theta - L t, reduced modulo 2pi in extended precision before rounding to
// double. At t ~ 10^5 both operands are ~10^6 and a binary64 difference
// would carry ~10^-10 absolute noise into every term.
inline double reduced_phase(long double th, double log_k, double t) {
  return reduce_angle(th - static_cast<long double>(log_k) * static_cast<long double>(t));
}

struct TermSums {
  double value = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
};

// Sums of w_k cos(phi_k), -w_k sin(phi_k)(theta' - L_k) and
// -w_k (cos(phi_k)(theta' - L_k)^2 + sin(phi_k) theta'') over k in [1, n],
// each term weighted by coef(k).
template <typename Acc, typename Coef>
TermSums sum_terms(double t, long double th, double tp, double tpp, const SectionContext& ctx,
                   std::size_t n, Coef&& coef) {
  Acc v, d1, d2;
  const double* logs = ctx.logs().data();
  const double* ws = ctx.inv_sqrts().data();
  for (std::size_t i = 0; i < n; ++i) {
    const double c_k = coef(i);
    if (c_k == 0.0) continue;
    const double phase = reduced_phase(th, logs[i], t);
    const double c = std::cos(phase);
    const double s = std::sin(phase);
    const double dd = tp - logs[i];
    const double w = c_k * ws[i];
    v += w * c;
    d1 += -w * s * dd;
    d2 += -w * (c * dd * dd + s * tpp);
  }
  return {v.value(), d1.value(), d2.value()};
}

template <typename Coef>
TermSums sum_terms_auto(double t, long double th, double tp, double tpp, const SectionContext& ctx,
                        std::size_t n, Coef&& coef) {
  if (n > kCompensatedSumThreshold) {
    return sum_terms<CompensatedSum>(t, th, tp, tpp, ctx, n, coef);
  }
  return sum_terms<PlainSum>(t, th, tp, tpp, ctx, n, coef);
}

}  // namespace

SectionValue evaluate_section(double t, const ParameterVector& a, const SectionContext& ctx,
                              ThetaVariant variant, const ThetaSeries& theta_series) {
  const std::size_t n = a.size();
  if (n > ctx.size()) {
    throw LengthMismatch("parameter vector longer than section context",
                         "N=" + std::to_string(n) + ",ctx=" + std::to_string(ctx.size()));
  }
  const long double th = theta_series.value(static_cast<long double>(t));
  const double tp = theta_series.prime(t, variant);
  const double tpp = theta_series.second(t, variant);
  const double c0 = std::cos(reduce_angle(th));
  const double s0 = std::sin(reduce_angle(th));

  SectionValue out{c0, -s0 * tp, -c0 * tp * tp - s0 * tpp};

  TermSums sums;
  if (a.is_dense()) {
    const double* values = a.values().data();
    sums = sum_terms_auto(t, th, tp, tpp, ctx, n, [values](std::size_t i) { return values[i]; });
  } else {
    const double fill = a.fill();
    if (fill != 0.0) {
      const TermSums full = sum_terms_auto(t, th, tp, tpp, ctx, n, [](std::size_t) { return 1.0; });
      sums.value = fill * full.value;
      sums.d1 = fill * full.d1;
      sums.d2 = fill * full.d2;
    }
    for (const auto& [k, x] : a.overrides()) {
      const double delta = x - fill;
      if (delta == 0.0) continue;
      const double phase = reduced_phase(th, ctx.log(k), t);
      const double c = std::cos(phase);
      const double s = std::sin(phase);
      const double dd = tp - ctx.log(k);
      const double w = delta * ctx.inv_sqrt(k);
      sums.value += w * c;
      sums.d1 += -w * s * dd;
      sums.d2 += -w * (c * dd * dd + s * tpp);
    }
  }
  out.value += sums.value;
  out.d1 += sums.d1;
  out.d2 += sums.d2;
  return out;
}

double z_section(double t, const ParameterVector& a, const SectionContext& ctx) {
  return evaluate_section(t, a, ctx).value;
}

double z_section_dt(double t, const ParameterVector& a, const SectionContext& ctx, ThetaVariant variant) {
  return evaluate_section(t, a, ctx, variant).d1;
}

double z_section_dtt(double t, const ParameterVector& a, const SectionContext& ctx, ThetaVariant variant) {
  return evaluate_section(t, a, ctx, variant).d2;
}

// ---------------------------------------------------------------------------
// Approximate functional equation and Riemann-Siegel remainder

double z_afe(double t) {
  const std::size_t terms = SectionContext::afe_terms(t);
  const long double th = theta(static_cast<long double>(t));
  PlainSum acc;
  for (std::size_t m = 1; m <= terms; ++m) {
    const double lm = std::log(static_cast<double>(m));
    acc += std::cos(reduced_phase(th, lm, t)) / std::sqrt(static_cast<double>(m));
  }
  return 2.0 * acc.value();
}

double z_prime_afe(double t) {
  const std::size_t terms = SectionContext::afe_terms(t);
  const long double th = theta(static_cast<long double>(t));
  const double tp = theta_prime(t);
  PlainSum acc;
  for (std::size_t m = 1; m <= terms; ++m) {
    const double lm = std::log(static_cast<double>(m));
    acc += std::sin(reduced_phase(th, lm, t)) * (tp - lm) / std::sqrt(static_cast<double>(m));
  }
  return -2.0 * acc.value();
}

namespace {

struct Remainder {
  double value = 0.0;
  double derivative = 0.0;
};

// (-1)^{N-1} u^{-1/2} (C0 + C1/u + C2/u^2) with u = sqrt(t/2pi), p = frac(u),
// and its exact t-derivative (du/dt = 1/(4 pi u)).
Remainder rs_remainder(double t) {
  constexpr double pi2 = kPi * kPi;
  const double u = std::sqrt(t / kTwoPi);
  const double whole = std::floor(u);
  const double p = u - whole;
  const double sign = (static_cast<long long>(whole) - 1) % 2 == 0 ? 1.0 : -1.0;

  const double psi0 = rs_psi(p, 0);
  const double psi1 = rs_psi(p, 1);
  const double psi2 = rs_psi(p, 2);
  const double psi3 = rs_psi(p, 3);
  const double psi4 = rs_psi(p, 4);
  const double psi6 = rs_psi(p, 6);
  const double psi7 = rs_psi(p, 7);

  const double c0 = psi0;
  const double c1 = -psi3 / (96.0 * pi2);
  const double c2 = psi2 / (64.0 * pi2) + psi6 / (18432.0 * pi2 * pi2);
  const double dc0 = psi1;
  const double dc1 = -psi4 / (96.0 * pi2);
  const double dc2 = psi3 / (64.0 * pi2) + psi7 / (18432.0 * pi2 * pi2);

  const double inv_u = 1.0 / u;
  const double root = 1.0 / std::sqrt(u);
  const double bracket = c0 + c1 * inv_u + c2 * inv_u * inv_u;
  const double dbracket_du =
      dc0 + dc1 * inv_u - c1 * inv_u * inv_u + dc2 * inv_u * inv_u - 2.0 * c2 * inv_u * inv_u * inv_u;
  const double du_dt = 1.0 / (4.0 * kPi * u);

  Remainder r;
  r.value = sign * root * bracket;
  r.derivative = sign * du_dt * (-0.5 * root * inv_u * bracket + root * dbracket_du);
  return r;
}

}  // namespace

double hardy_z(double t) { return z_afe(t) + rs_remainder(t).value; }

double hardy_z_prime(double t) { return z_prime_afe(t) + rs_remainder(t).derivative; }

// ---------------------------------------------------------------------------
// Term table

std::vector<TermRow> term_table(long n, std::size_t k_max) {
  if (k_max < 1) throw DomainError("term_table requires k_max >= 1");
  const double g = gram_point(n).abscissa();
  const double sign = n % 2 == 0 ? 1.0 : -1.0;
  std::vector<TermRow> rows;
  rows.reserve(k_max);
  for (std::size_t k = 1; k <= k_max; ++k) {
    const double m = static_cast<double>(k + 1);
    const double x = std::log(m) * g;
    const double w = 1.0 / std::sqrt(m);
    TermRow row;
    row.k = k;
    row.cos_val = sign * std::cos(x);
    row.sin_val = sign * std::sin(x);
    row.a = row.cos_val * w;
    row.b = std::log(g / (kTwoPi * m * m)) * row.sin_val * w;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace gramdisc

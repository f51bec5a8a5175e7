// Acceptance run: one PASS/FAIL line per criterion, with measured values and
// wall time. Criteria 1-10 gate the exit status; 11 is reported only.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "gramdisc/gramdisc.hpp"
#include "oracles.hpp"

using namespace gramdisc;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  double time_limit;
  bool gating;
  std::function<Outcome()> body;
};

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

double sign_of(long n) { return n % 2 == 0 ? 1.0 : -1.0; }

ParameterVector ones(const GramDiscriminant& d) { return ParameterVector::constant(d.dimension(), 1.0); }

Outcome gram_solver() {
  double worst = 0.0;
  for (long n : {-1L, 0L, 1L, 126L, 1000L, 1000000L}) {
    const GramPoint g = gram_point(n);
    const oracle::Real resid = boost::multiprecision::abs(oracle::theta(oracle::Real(g.t)) - oracle::pi() * n);
    worst = std::max({worst, g.residual, static_cast<double>(resid)});
  }
  const double g0 = gram_point(0).abscissa();
  const double g0_oracle = static_cast<double>(oracle::gram_bisect(0));
  const bool pass = worst <= 1e-10 && std::fabs(g0 - 17.8455995) <= 1e-6 && std::fabs(g0 - g0_oracle) <= 1e-6;
  return {pass, fmt("max residual %.3g, g_0 = %.10f (bisection %.10f)", worst, g0, g0_oracle)};
}

Outcome classical_prefix() {
  std::vector<long> bad;
  for (const auto& r : classify_range(0, 150)) {
    if (!r.good) bad.push_back(r.n);
  }
  std::string listed;
  for (long n : bad) listed += (listed.empty() ? "" : ",") + std::to_string(n);
  return {bad == std::vector<long>{126, 134}, "bad set {" + listed + "}"};
}

Outcome hessian_checkpoints() {
  const GramDiscriminant d90(90);
  const GramDiscriminant d126(126);
  const double h90 = d90.hessian_form(ones(d90));
  const double h126 = d126.hessian_form(ones(d126));

  // Convention constant from the quadratic form over the rank-one entries.
  const auto quadratic = [](const GramDiscriminant& d) {
    const std::vector<double> u = d.hessian_factor();
    double s = 0.0;
    for (double v : u) s += v;
    return sign_of(d.index()) * s * s;
  };
  const double identity_gap = std::max(oracle::relative_error(h90, quadratic(d90)),
                                       oracle::relative_error(h126, quadratic(d126)));

  // Which Z'-normalised factor reproduces the printed values.
  std::string matched;
  for (double factor : {2.0, 4.0}) {
    const auto form = [factor](const GramDiscriminant& d) {
      const double zp = z_section_dt(d.gram_abscissa(), ones(d), d.context(), ThetaVariant::truncated);
      return factor * sign_of(d.index()) * std::pow(zp / d.log_height(), 2);
    };
    if (oracle::relative_error(form(d90), 0.00203615) <= 0.01 && oracle::relative_error(form(d126), 2.22893) <= 0.01) {
      matched += (matched.empty() ? "" : ",") + fmt("%g", factor);
    }
  }
  const double e90 = oracle::relative_error(h90, 0.00203615);
  const double e126 = oracle::relative_error(h126, 2.22893);
  const bool pass = e90 <= 0.01 && e126 <= 0.01 && identity_gap <= 1e-10 && !matched.empty();
  return {pass, fmt("H_90 = %.8g (%+.2f%%), H_126 = %.6g (%+.2f%%), identity gap %.2g, factor matched: %s", h90,
                    100.0 * (h90 / 0.00203615 - 1.0), h126, 100.0 * (h126 / 2.22893 - 1.0), identity_gap,
                    matched.empty() ? "none" : matched.c_str())};
}

Outcome finite_differences() {
  double grad_err = 0.0;
  double gram_err = 0.0;
  for (long n : {50L, 90L, 126L}) {
    const GramDiscriminant d(n);
    const std::vector<double> grad = d.gradient();
    const std::vector<double> ggrad = d.gram_point_gradient();
    for (std::size_t k : {1u, 2u, 7u}) {
      const auto delta = [&](double x) { return d.evaluate(ParameterVector::unit(d.dimension(), k, x)).delta; };
      const auto point = [&](double x) { return d.extend(ParameterVector::unit(d.dimension(), k, x)).t; };
      grad_err = std::max(grad_err, oracle::relative_error(grad[k - 1], oracle::central_difference(delta, 0.0, 1e-5)));
      gram_err =
          std::max(gram_err, oracle::relative_error(ggrad[k - 1], oracle::richardson_difference(point, 0.0, 1e-4)));
    }
  }
  double hess_err = 0.0;
  const GramDiscriminant d(90);
  const std::size_t dim = d.dimension();
  const double centre = d.evaluate(ParameterVector::zeros(dim)).delta;
  for (auto [k1, k2] : std::vector<std::pair<std::size_t, std::size_t>>{{1, 1}, {1, 2}, {3, 5}}) {
    const auto delta = [&](double x1, double x2) {
      if (k1 == k2) return d.evaluate(ParameterVector::unit(dim, k1, x1)).delta;
      return d.evaluate(ParameterVector::sparse(dim, 0.0, {{k1, x1}, {k2, x2}})).delta;
    };
    const auto second = [&](double h) {
      if (k1 == k2) return (delta(h, 0) - 2.0 * centre + delta(-h, 0)) / (h * h);
      return (delta(h, h) - delta(h, -h) - delta(-h, h) + delta(-h, -h)) / (4.0 * h * h);
    };
    const double h = 2e-3;
    const double fd = (4.0 * second(h / 2.0) - second(h)) / 3.0;
    hess_err = std::max(hess_err, oracle::relative_error(d.hessian_entry(k1, k2), fd));
  }
  const bool pass = grad_err <= 1e-5 && hess_err <= 1e-4 && gram_err <= 1e-4;
  return {pass, fmt("gradient %.2g, hessian %.2g, g_n gradient %.2g (max relative)", grad_err, hess_err, gram_err)};
}

Outcome gradient_identity() {
  oracle::Sampler rng(41);
  double worst = 0.0;
  for (long n : {90L, 126L}) {
    const GramDiscriminant d(n);
    for (int trial = 0; trial < 20; ++trial) {
      std::map<std::size_t, double> entries;
      const int count = 1 + trial % 8;
      for (int i = 0; i < count; ++i) {
        entries[static_cast<std::size_t>(rng.integer(1, static_cast<long>(d.dimension())))] = rng.uniform(-1.0, 1.0);
      }
      const auto a = ParameterVector::sparse(d.dimension(), 0.0, entries);
      const double direct = z_section_dt(d.gram_abscissa(), a, d.context(), ThetaVariant::truncated);
      worst = std::max(worst, oracle::relative_error(d.z_prime_via_gradient(a), direct));
    }
  }
  return {worst <= 1e-8, fmt("max relative gap %.2g over 40 sparse vectors", worst)};
}

Outcome repulsion() {
  const RepulsionReport report = repulsion_scan(0, 20000);
  double min_isolated = INFINITY;
  long at = 0;
  for (const auto& row : report.rows) {
    if (row.isolated && row.viscosity < min_isolated) {
      min_isolated = row.viscosity;
      at = row.n;
    }
  }
  const bool pass = report.violations == 0 && report.isolated_count > 0 && min_isolated > 4.0;
  return {pass, fmt("%zu bad, %zu isolated, %zu violations, min isolated viscosity %.5g at n = %ld",
                    report.bad_count, report.isolated_count, report.violations, min_isolated, at)};
}

Outcome viscosity_checkpoint() {
  const GramClassRecord r = classify(730119);
  return {!r.good && std::fabs(r.viscosity - 4.4602) <= 0.05, fmt("mu(g_730119) = %.7g", r.viscosity)};
}

Outcome curve_dichotomy() {
  const GramDiscriminant d(730119);
  const CurveTrace linear = trace_discriminant(d, CurveSpec::linear(64));
  const CurveTrace split =
      trace_discriminant(d, CurveSpec::split({1, 2, 4, 6, 12}, {{0.0, 0.0}, {1.0, 0.41}, {1.0, 1.0}}, 64));
  const bool complete = !linear.failed_at && !split.failed_at;
  const bool pass = complete && linear.min_signed < 0.0 && split.min_signed > 0.0;
  std::string detail = fmt("linear min %.6g (%zu samples, %zu violation intervals), split min %.6g (%zu samples)",
                           linear.min_signed, linear.samples.size(), sign_violations(linear).size(),
                           split.min_signed, split.samples.size());
  if (!complete) detail += "; continuation failed: " + linear.failure + split.failure;
  return {pass, detail};
}

Outcome table_reproduction() {
  const double cos_row[] = {-0.14, 0.25, 0.96, -0.53, 0.99, -0.20, 0.41, 0.88, 0.77, -0.99, 0.03, 0.21, 0.94, 0.95, -0.85};
  const double sin_row[] = {0.99, 0.97, 0.28, 0.85, -0.11, 0.98, -0.91, -0.48, 0.64, -0.11, -1.0, 0.98, 0.33, 0.30, -0.53};
  const double a_row[] = {-0.099, 0.14, 0.48, -0.24, 0.41, -0.074, 0.14, 0.29, 0.24, -0.30, 0.0082, 0.058, 0.25, 0.25, -0.21};
  const double b_row[] = {6.86, 5.02, 1.16, 3.02, -0.345, 2.70, -2.27, -1.09, 1.34, -0.210, -1.79, 1.64, 0.521, 0.449, -0.748};
  const auto table = term_table(730119, 15);
  double worst = 0.0;
  for (std::size_t i = 0; i < 15; ++i) {
    worst = std::max({worst, std::fabs(table[i].cos_val - cos_row[i]), std::fabs(table[i].sin_val - sin_row[i]),
                      std::fabs(table[i].a - a_row[i]), std::fabs(table[i].b - b_row[i])});
  }
  const auto shift = suggest_shift_indices(730119, 15, 5);
  std::string listed;
  for (auto k : shift) listed += (listed.empty() ? "" : ",") + std::to_string(k);
  const bool pass = worst <= 0.005 && shift == std::set<std::size_t>{1, 2, 4, 6, 12};
  return {pass, fmt("max table deviation %.4f, shift indices {%s}", worst, listed.c_str())};
}

Outcome trivial_anchors() {
  oracle::Sampler rng(10);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const long n = rng.integer(-1, 10000);
    const DiscriminantRecord rec = discriminant(n, ParameterVector::zeros(GramDiscriminant(n).dimension()));
    worst = std::max(worst, std::fabs(rec.delta - sign_of(n)));
  }
  double worst_ratio = 0.0;
  for (double t : {1e2, 1e3, 1e4, 1e5}) {
    const SectionContext ctx(SectionContext::spira_terms(t));
    const double gap = std::fabs(z_afe(t) - z_section(t, ParameterVector::constant(ctx.size(), 1.0), ctx));
    worst_ratio = std::max(worst_ratio, gap / (5.0 * std::pow(t, -0.25)));
  }
  return {worst <= 1e-12 && worst_ratio <= 1.0,
          fmt("max |Delta_n(0) - (-1)^n| = %.2g, max AFE/Spira gap / bound = %.3f", worst, worst_ratio)};
}

Outcome corrupt_checkpoint() {
  const double mu = classify(9807962).viscosity;
  const auto found = blocks(9807962, 9807962);
  const bool block_ok = found.size() == 1 && found[0].members() == std::vector<long>{9807960, 9807961, 9807962, 9807963};
  const bool pass = block_ok && std::fabs(mu - 0.0750883) <= 0.01;
  return {pass, fmt("mu(g_9807962) = %.6g (target 0.0750883 +- 0.01, exact-Z reference %.4g), block %s", mu,
                    oracle::kViscosity9807962, block_ok ? "{9807960..9807963}" : "mismatch")};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "gram solver", 1.0, true, gram_solver},
      {2, "classical-law prefix", 5.0, true, classical_prefix},
      {3, "hessian checkpoints", 10.0, true, hessian_checkpoints},
      {4, "closed forms vs finite differences", 30.0, true, finite_differences},
      {5, "gradient identity for Z'", 10.0, true, gradient_identity},
      {6, "repulsion property", 300.0, true, repulsion},
      {7, "viscosity checkpoint", 5.0, true, viscosity_checkpoint},
      {8, "curve dichotomy at 730119", 900.0, true, curve_dichotomy},
      {9, "term table and shift indices", 5.0, true, table_reproduction},
      {10, "trivial anchors", 120.0, true, trivial_anchors},
      {11, "corrupt checkpoint (optional)", 600.0, false, corrupt_checkpoint},
  };

  int gating_failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = c.body();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = elapsed <= c.time_limit;
    const bool pass = outcome.pass && in_time;
    if (!pass && c.gating) ++gating_failures;
    std::printf("[%s] %2d %s: %s; %.2f s (limit %.0f s)%s\n", pass ? "PASS" : "FAIL", c.id, c.name,
                outcome.detail.c_str(), elapsed, c.time_limit, in_time ? "" : " OVER TIME");
    std::fflush(stdout);
  }
  std::printf("%d gating criteria failed\n", gating_failures);
  return gating_failures == 0 ? 0 : 1;
}

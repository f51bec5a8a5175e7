#include <doctest.h>

#include <cmath>
#include <vector>

#include "gramdisc/constants.hpp"
#include "gramdisc/errors.hpp"
#include "gramdisc/gram_core.hpp"
#include "gramdisc/section_engine.hpp"
#include "gramdisc/summation.hpp"
#include "oracles.hpp"

using namespace gramdisc;

namespace {

ParameterVector random_dense(oracle::Sampler& rng, std::size_t n, double scale) {
  std::vector<double> v(n);
  for (double& x : v) x = rng.uniform(-scale, scale);
  return ParameterVector::dense(std::move(v));
}

}  // namespace

TEST_CASE("ParameterVector storage forms") {
  const auto d = ParameterVector::dense({1.0, 2.0, 3.0});
  CHECK(d.is_dense());
  CHECK(d[2] == 2.0);
  CHECK(d.describe() == "dense:N=3");

  const auto c = ParameterVector::constant(5, 0.5);
  CHECK(c[5] == 0.5);
  CHECK(c.describe() == "const:0.5");

  const auto s = ParameterVector::sparse(6, 0.41, {{1, 1.0}, {4, 1.0}});
  CHECK(s[1] == 1.0);
  CHECK(s[2] == 0.41);
  CHECK(s.describe() == "sparse:0.41|1=1,4=1");
  CHECK(s.to_dense() == std::vector<double>{1.0, 0.41, 0.41, 1.0, 0.41, 0.41});

  CHECK(ParameterVector::zeros(4).is_zero());
  CHECK_FALSE(ParameterVector::unit(4, 2).is_zero());
  CHECK(ParameterVector::unit(4, 2, 3.0)[2] == 3.0);

  CHECK(s.scaled(2.0)[2] == doctest::Approx(0.82));
  CHECK(s.resized(8)[8] == 0.0);
  CHECK(s.resized(8)[7] == 0.0);
  CHECK(s.resized(8)[6] == 0.41);
  CHECK(s.resized(3).size() == 3);
  CHECK(ParameterVector::zeros(3).resized(10).size() == 10);
}

TEST_CASE("ParameterVector validation") {
  CHECK_THROWS_AS(ParameterVector::dense({}), DomainError);
  CHECK_THROWS_AS(ParameterVector::dense({1.0, std::nan("")}), DomainError);
  CHECK_THROWS_AS(ParameterVector::constant(3, INFINITY), DomainError);
  CHECK_THROWS_AS(ParameterVector::sparse(3, 0.0, {{4, 1.0}}), LengthMismatch);
  CHECK_THROWS_AS(ParameterVector::sparse(3, 0.0, {{0, 1.0}}), LengthMismatch);
  CHECK_THROWS_AS(ParameterVector::constant(3, 1.0)[4], LengthMismatch);
}

TEST_CASE("lerp and dot") {
  const auto a = ParameterVector::sparse(4, 0.0, {{2, 1.0}});
  const auto b = ParameterVector::constant(4, 1.0);
  const auto m = lerp(a, b, 0.25);
  CHECK(m[1] == doctest::Approx(0.25));
  CHECK(m[2] == doctest::Approx(1.0));
  CHECK(lerp(ParameterVector::dense({0, 0, 0, 0}), b, 0.5)[3] == doctest::Approx(0.5));
  CHECK_THROWS_AS(lerp(a, ParameterVector::constant(5, 1.0), 0.5), LengthMismatch);

  const std::vector<double> v{1.0, 2.0, 3.0, 4.0};
  CHECK(dot(a, v) == doctest::Approx(2.0));
  CHECK(dot(b, v) == doctest::Approx(10.0));
  CHECK(dot(ParameterVector::sparse(4, 2.0, {{3, -1.0}}), v) == doctest::Approx(2 + 4 - 3 + 8));
}

TEST_CASE("compensated summation recovers cancelled low-order parts") {
  CompensatedSum s;
  for (double x : {1e16, 1.0, -1e16, 1.0}) s += x;
  CHECK(s.value() == 2.0);
  PlainSum p;
  for (double x : {1e16, 1.0, -1e16, 1.0}) p += x;
  CHECK(p.value() != 2.0);
}

TEST_CASE("SectionContext tables") {
  const SectionContext ctx(10);
  CHECK(ctx.size() == 10);
  CHECK(ctx.log(1) == std::log(2.0));
  CHECK(ctx.inv_sqrt(3) == 1.0 / std::sqrt(4.0));
  CHECK(SectionContext::spira_terms(221.1) == 110);
  CHECK(SectionContext::afe_terms(1000.0) == 12);
  CHECK_THROWS_AS(SectionContext::spira_terms(3.0), DomainError);
}

TEST_CASE("empty parameter vector reduces to z0") {
  const SectionContext ctx(500);
  for (double t : {20.0, 333.0, 999.5}) {
    CHECK(z_section(t, ParameterVector::zeros(ctx.size()), ctx) == z0(t));
    CHECK(z_section(t, ParameterVector::dense(std::vector<double>(7, 0.0)), ctx) == z0(t));
  }
}

TEST_CASE("Z_N is affine in the coefficients") {
  oracle::Sampler rng(11);
  const SectionContext ctx(60);
  for (int trial = 0; trial < 10; ++trial) {
    const double t = rng.uniform(30.0, 300.0);
    const auto a = random_dense(rng, 60, 1.0);
    const auto b = random_dense(rng, 60, 1.0);
    const double alpha = rng.uniform(-2.0, 2.0);
    const double beta = rng.uniform(-2.0, 2.0);
    std::vector<double> combo(60);
    for (std::size_t k = 1; k <= 60; ++k) combo[k - 1] = alpha * a[k] + beta * b[k];
    const double lhs = z_section(t, ParameterVector::dense(combo), ctx);
    const double rhs = alpha * z_section(t, a, ctx) + beta * z_section(t, b, ctx) + (1.0 - alpha - beta) * z0(t);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12).scale(1.0));
  }
}

TEST_CASE("section derivatives agree with finite differences") {
  oracle::Sampler rng(5);
  const SectionContext ctx(250);
  for (int trial = 0; trial < 6; ++trial) {
    const double t = trial == 0 ? 500.0 : rng.uniform(100.0, 500.0);
    const auto a = random_dense(rng, 250, 0.2);
    const auto f = [&](double x) { return z_section(x, a, ctx); };
    const auto fp = [&](double x) { return z_section_dt(x, a, ctx); };
    CHECK(oracle::relative_error(z_section_dt(t, a, ctx), oracle::richardson_difference(f, t, 1e-3)) <= 1e-6);
    CHECK(oracle::relative_error(z_section_dtt(t, a, ctx), oracle::richardson_difference(fp, t, 1e-3)) <= 1e-4);
  }
}

TEST_CASE("sparse and dense forms evaluate identically") {
  const SectionContext ctx(300);
  const auto sparse = ParameterVector::sparse(300, 0.41, {{1, 1.0}, {2, 1.0}, {4, 1.0}, {6, 1.0}, {12, 1.0}});
  const auto dense = ParameterVector::dense(sparse.to_dense());
  for (double t : {150.0, 610.3}) {
    const SectionValue s = evaluate_section(t, sparse, ctx);
    const SectionValue d = evaluate_section(t, dense, ctx);
    CHECK(s.value == doctest::Approx(d.value).epsilon(1e-12).scale(1.0));
    CHECK(s.d1 == doctest::Approx(d.d1).epsilon(1e-12).scale(10.0));
    CHECK(s.d2 == doctest::Approx(d.d2).epsilon(1e-12).scale(100.0));
  }
}

TEST_CASE("section at a Gram point with zero coefficients") {
  for (long n : {0L, 90L, 126L, 1001L}) {
    const double g = gram_point(n).abscissa();
    const SectionContext ctx(SectionContext::spira_terms(g));
    const auto zero = ParameterVector::zeros(ctx.size());
    const double ln = std::log(g / kTwoPi);
    CHECK(std::fabs(z_section_dt(g, zero, ctx, ThetaVariant::truncated)) <= 1e-10);
    const double expected = (n % 2 == 0 ? -1.0 : 1.0) * 0.25 * ln * ln;
    CHECK(z_section_dtt(g, zero, ctx, ThetaVariant::truncated) == doctest::Approx(expected).epsilon(1e-10));
  }
}

TEST_CASE("full section at g_90 has the sign of (-1)^90") {
  const double g = gram_point(90).abscissa();
  const SectionContext ctx(SectionContext::spira_terms(g));
  CHECK(z_section(g, ParameterVector::constant(ctx.size(), 1.0), ctx) > 0.0);
}

TEST_CASE("section rejects a parameter vector longer than its context") {
  const SectionContext ctx(5);
  CHECK_THROWS_AS(z_section(50.0, ParameterVector::constant(6, 1.0), ctx), LengthMismatch);
  CHECK_THROWS_AS(z_section(5.0, ParameterVector::constant(2, 1.0), ctx), DomainError);
}

TEST_CASE("main sum and Spira section stay within 5 t^(-1/4)") {
  for (double e = 2.0; e <= 5.0001; e += 0.25) {
    const double t = std::pow(10.0, e);
    const SectionContext ctx(SectionContext::spira_terms(t));
    const double spira = z_section(t, ParameterVector::constant(ctx.size(), 1.0), ctx);
    CHECK(std::fabs(z_afe(t) - spira) <= 5.0 * std::pow(t, -0.25));
  }
}

TEST_CASE("main sum derivative agrees with a finite difference") {
  const auto f = [](double x) { return z_afe(x); };
  for (double t : {1e4, 2345.6}) {
    CHECK(oracle::relative_error(z_prime_afe(t), oracle::richardson_difference(f, t, 1e-4)) <= 1e-6);
  }
  const auto h = [](double x) { return hardy_z(x); };
  for (double t : {1e4, 777.7}) {
    CHECK(oracle::relative_error(hardy_z_prime(t), oracle::richardson_difference(h, t, 1e-4)) <= 1e-6);
  }
}

TEST_CASE("hardy_z against mpmath siegelz") {
  for (const auto& ref : oracle::kSiegelZ) {
    CAPTURE(ref.t);
    CHECK(std::fabs(hardy_z(ref.t) - ref.z) <= 1e-5);
    CHECK(std::fabs(hardy_z_prime(ref.t) - ref.z_prime) <= 5e-5 * std::max(1.0, std::fabs(ref.z_prime)));
    // The bare main sum is only good to O(t^-1/4).
    CHECK(std::fabs(z_afe(ref.t) - ref.z) <= 2.0 * std::pow(ref.t, -0.25));
  }
}

TEST_CASE("viscosity at g_730119") {
  const double g = gram_point(730119).abscissa();
  const double mu = std::fabs(hardy_z_prime(g) / hardy_z(g));
  CHECK(mu == doctest::Approx(oracle::kViscosity730119).epsilon(1e-5));
  CHECK(std::fabs(mu - 4.4602) <= 0.05);
  const double mu_main = std::fabs(z_prime_afe(g) / z_afe(g));
  CHECK(std::fabs(mu_main - 4.4602) <= 0.05);
}

TEST_CASE("term table at n = 730119") {
  const auto rows = term_table(730119, 15);
  REQUIRE(rows.size() == 15);
  const double cos_row[] = {-0.14, 0.25, 0.96, -0.53, 0.99, -0.20, 0.41, 0.88, 0.77, -0.99, 0.03, 0.21, 0.94, 0.95, -0.85};
  const double sin_row[] = {0.99, 0.97, 0.28, 0.85, -0.11, 0.98, -0.91, -0.48, 0.64, -0.11, -1.0, 0.98, 0.33, 0.30, -0.53};
  const double a_row[] = {-0.099, 0.14, 0.48, -0.24, 0.41, -0.074, 0.14, 0.29, 0.24, -0.30, 0.0082, 0.058, 0.25, 0.25, -0.21};
  const double b_row[] = {6.86, 5.02, 1.16, 3.02, -0.345, 2.70, -2.27, -1.09, 1.34, -0.210, -1.79, 1.64, 0.521, 0.449, -0.748};
  for (std::size_t i = 0; i < 15; ++i) {
    CAPTURE(i + 1);
    CHECK(rows[i].k == i + 1);
    CHECK(std::fabs(rows[i].cos_val - cos_row[i]) <= 0.005 + 1e-12);
    CHECK(std::fabs(rows[i].sin_val - sin_row[i]) <= 0.005 + 1e-12);
    CHECK(std::fabs(rows[i].a - a_row[i]) <= 0.005 + 1e-12);
    CHECK(std::fabs(rows[i].b - b_row[i]) <= 0.005 + 1e-12);
  }
  CHECK(rows[0].b == doctest::Approx(6.86).epsilon(0.05 / 6.86));
  CHECK(std::fabs(rows[2].sin_val - 0.28) <= 0.01);
}

TEST_CASE("main sum at a Gram point from the A_k column") {
  for (long n : {126L, 5000L, 730119L}) {
    const double g = gram_point(n).abscissa();
    const std::size_t horizon = SectionContext::afe_terms(g);
    const auto rows = term_table(n, horizon - 1);
    double sum = n % 2 == 0 ? 1.0 : -1.0;
    for (const auto& r : rows) sum += r.a;
    CHECK(z_afe(g) == doctest::Approx(2.0 * sum).epsilon(1e-9).scale(1.0));
    double b_sum = 0.0;
    for (const auto& r : rows) b_sum += r.b;
    // B_k carries the truncated theta'; the series tail enters every term once.
    const double tail = std::fabs(theta_prime(g) - theta_prime(g, ThetaVariant::truncated));
    double weight = 0.0;
    for (std::size_t m = 2; m <= horizon; ++m) weight += 2.0 / std::sqrt(static_cast<double>(m));
    CHECK(std::fabs(z_prime_afe(g) - b_sum) <= tail * weight + 1e-9 * std::fabs(b_sum));
  }
}

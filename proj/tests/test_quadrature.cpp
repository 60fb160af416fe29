#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "bisl/errors.hpp"
#include "bisl/quadrature.hpp"
#include "support/oracle.hpp"

using namespace bisl;
namespace tst = bisl::testing;

namespace {
constexpr double two_pi = 2.0 * std::numbers::pi;

std::vector<double> sample(std::size_t n, const std::function<double(double)>& f) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = f(two_pi * double(i) / double(n));
  return v;
}
} // namespace

TEST_CASE("trapezoid rule on periodic samples") {
  CHECK(trapezoid_integrate(sample(16, [](double) { return 1.0; })) ==
        doctest::Approx(two_pi).epsilon(1e-15));
  CHECK(std::abs(trapezoid_integrate(sample(16, [](double t) { return std::cos(t); }))) <
        1e-15);
  const double oracle = tst::adaptive_integrate(
      [](double t) { return std::exp(std::sin(t)); }, 0.0, two_pi);
  CHECK(oracle == doctest::Approx(7.9549265210128452).epsilon(1e-9));
  CHECK(std::abs(trapezoid_integrate(sample(32, [](double t) {
          return std::exp(std::sin(t));
        })) - oracle) < 1e-12);
}

TEST_CASE("log product rule reference values") {
  const std::size_t n = 32;
  const std::vector<double> zero(n, 0.0);
  SUBCASE("constant integrand vanishes") {
    CHECK(std::abs(log_product_integrate(sample(n, [](double) { return 1.0; }),
                                         zero, 0)) < 1e-14);
  }
  SUBCASE("single harmonic") {
    for (std::size_t i : {std::size_t(0), std::size_t(5)}) {
      const double s = two_pi * double(i) / double(n);
      const auto a = sample(n, [&](double t) { return std::cos(t - s); });
      const double got = log_product_integrate(a, zero, i);
      CHECK(got == doctest::Approx(-two_pi).epsilon(1e-13));
      CHECK(got == doctest::Approx(tst::log_factor_integral(
                       [&](double t) { return std::cos(t - s); }, s))
                       .epsilon(1e-11));
    }
  }
  SUBCASE("second harmonic") {
    const auto a = sample(n, [](double t) { return std::cos(2.0 * t); });
    CHECK(log_product_integrate(a, zero, 0) ==
          doctest::Approx(-std::numbers::pi).epsilon(1e-13));
  }
  SUBCASE("B part rides on the trapezoid rule") {
    const auto b = sample(n, [](double t) { return 2.0 + std::sin(t); });
    CHECK(log_product_integrate(zero, b, 3) ==
          doctest::Approx(2.0 * two_pi).epsilon(1e-13));
  }
}

TEST_CASE("log rule is exact for trigonometric polynomials below n/2") {
  const std::size_t n = 16;
  const std::vector<double> zero(n, 0.0);
  for (int m = 1; m <= 7; ++m) {
    const auto a = sample(n, [&](double t) { return std::cos(m * t); });
    CHECK(log_product_integrate(a, zero, 0) ==
          doctest::Approx(-two_pi / m).epsilon(1e-13));
  }
}

TEST_CASE("spectral convergence of the log rule") {
  // analytic with a pole close enough to the real axis that 32 modes do
  // not already resolve it to roundoff
  auto a_fn = [](double t) { return 1.0 / (1.2 - std::cos(t)); };
  const double exact = tst::log_factor_integral(a_fn, 0.0);
  const double e32 =
      std::abs(log_product_integrate(sample(32, a_fn), std::vector<double>(32, 0.0), 0) - exact);
  const double e64 =
      std::abs(log_product_integrate(sample(64, a_fn), std::vector<double>(64, 0.0), 0) - exact);
  CHECK(e32 > 1e-10);
  CHECK(e64 < e32 / 100.0);
}

TEST_CASE("translation invariance") {
  const std::size_t n = 32;
  auto a_fn = [](double t) { return std::exp(std::cos(t)) + 0.3 * std::sin(t); };
  auto b_fn = [](double t) { return std::cos(2.0 * t); };
  const double ref =
      log_product_integrate(sample(n, a_fn), sample(n, b_fn), 0);
  for (std::size_t shift : {std::size_t(3), std::size_t(11)}) {
    std::vector<double> a(n), b(n);
    for (std::size_t j = 0; j < n; ++j) {
      const double t = two_pi * double((j + n - shift) % n) / double(n);
      a[j] = a_fn(t);
      b[j] = b_fn(t);
    }
    CHECK(std::abs(log_product_integrate(a, b, shift) - ref) < 1e-13);
  }
}

TEST_CASE("off-node weights") {
  const std::size_t n = 64;
  const double s = 0.37; // not a grid node
  const auto w = log_weights_at(n, s);
  double acc = 0.0, acc1 = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double tj = two_pi * double(j) / double(n);
    acc += w[j];
    acc1 += w[j] * std::cos(tj - s);
  }
  CHECK(std::abs(acc) < 1e-13);
  CHECK(acc1 == doctest::Approx(-two_pi).epsilon(1e-13));
}

TEST_CASE("trigonometric interpolation") {
  const std::size_t n = 64;
  auto f = [](double t) { return std::exp(std::sin(t)) - 0.5 * std::cos(3.0 * t); };
  const auto v = sample(n, f);
  for (double t : {0.0, 0.1, 1.7, 4.0, 6.2}) {
    CHECK(trig_interp(v, t) == doctest::Approx(f(t)).epsilon(1e-12));
  }
  CHECK(trig_interp(v, two_pi * 5.0 / double(n)) ==
        doctest::Approx(v[5]).epsilon(1e-14));
}

TEST_CASE("rule validation") {
  CHECK_THROWS_AS((void)log_weights_at(7, 0.0), ConfigError);
  std::vector<double> a(8, 1.0), b(7, 0.0);
  CHECK_THROWS_AS((void)log_product_integrate(a, b, 0), ConfigError);
}

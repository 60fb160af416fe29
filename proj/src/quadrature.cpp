#include "bisl/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "bisl/errors.hpp"

namespace bisl {

namespace {
constexpr double two_pi = 2.0 * std::numbers::pi;

void require_even(std::size_t n) {
  if (n < 2 || n % 2 != 0)
    throw ConfigError("log-quadrature rule needs an even node count");
}
} // namespace

double trapezoid_integrate(std::span<const double> samples) {
  double sum = 0.0;
  for (double v : samples) sum += v;
  return sum * two_pi / double(samples.size());
}

std::vector<double> log_weights_at(std::size_t n, double t) {
  require_even(n);
  const std::size_t half = n / 2;
  std::vector<double> w(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double d = t - two_pi * double(j) / double(n);
    double sum = 0.0;
    for (std::size_t m = 1; m < half; ++m)
      sum += std::cos(double(m) * d) / double(m);
    w[j] = -2.0 * two_pi / double(n) * sum -
           two_pi / double(n * n) * std::cos(double(half) * d);
  }
  return w;
}

std::vector<double> log_weights_diff(std::size_t n) {
  require_even(n);
  const std::size_t half = n / 2;
  std::vector<double> w(n);
  for (std::size_t d = 0; d < n; ++d) {
    const double u = two_pi * double(d) / double(n);
    double sum = 0.0;
    for (std::size_t m = 1; m < half; ++m)
      sum += std::cos(double(m) * u) / double(m);
    w[d] = -2.0 * two_pi / double(n) * sum -
           two_pi / double(n * n) * std::cos(double(half) * u);
  }
  return w;
}

double log_product_integrate(std::span<const double> a_samples,
                             std::span<const double> b_samples,
                             std::size_t i) {
  const std::size_t n = a_samples.size();
  if (b_samples.size() != n || i >= n)
    throw ConfigError("log_product_integrate: size mismatch");
  const auto w = log_weights_diff(n);
  double sum = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t d = (i >= j) ? (i - j) : (j - i);
    sum += w[d] * a_samples[j];
  }
  double sb = 0.0;
  for (double v : b_samples) sb += v;
  return sum + sb * two_pi / double(n);
}

double trig_interp(std::span<const double> samples, double t) {
  const std::size_t n = samples.size();
  require_even(n);
  const std::size_t half = n / 2;
  // Dirichlet-kernel form of the interpolant through the n periodic samples
  double sum = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double u = t - two_pi * double(j) / double(n);
    double k = 1.0 + std::cos(double(half) * u);
    for (std::size_t m = 1; m < half; ++m) k += 2.0 * std::cos(double(m) * u);
    sum += samples[j] * k;
  }
  return sum / double(n);
}

} // namespace bisl

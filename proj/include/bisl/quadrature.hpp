#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace bisl {

// (2pi/N) * sum of samples on the uniform periodic grid t_i = 2pi i/N.
double trapezoid_integrate(std::span<const double> samples);

// Weights R_j(t) of the trigonometric product rule
//   int_0^2pi f(s) ln(4 sin^2((t-s)/2)) ds  ~=  sum_j R_j(t) f(t_j),
// exact for trigonometric polynomials of degree < N/2. N must be even.
std::vector<double> log_weights_at(std::size_t n, double t);

// R_{|i-j|}: weights between grid nodes depend only on the index distance.
// Entry d of the result is the weight for |i-j| = d.
std::vector<double> log_weights_diff(std::size_t n);

// int A(s) ln(4 sin^2((t_i-s)/2)) + B(s) ds with A, B sampled on the grid
// and collocation at node i.
double log_product_integrate(std::span<const double> a_samples,
                             std::span<const double> b_samples, std::size_t i);

// Trigonometric interpolation of periodic samples at an arbitrary point.
double trig_interp(std::span<const double> samples, double t);

} // namespace bisl

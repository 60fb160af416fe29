#pragma once

#include <array>

#include "bisl/geometry.hpp"

namespace bisl {

// Normalization of the fundamental solution: kappa0 sets the length scale
// inside the logarithm, kappa1 the additive constant.
struct KernelParams {
  double kappa0 = 1.0;
  double kappa1 = 0.0;
};

struct Mat2 {
  double a11 = 0.0, a12 = 0.0, a21 = 0.0, a22 = 0.0;
  Vec2 apply(Vec2 v) const {
    return {a11 * v.x + a12 * v.y, a21 * v.x + a22 * v.y};
  }
};

// G0(x) = (1/8pi) [ |x|^2 ln(|x|/kappa0) + kappa1 ].
// Finite and continuous at x = 0 (value kappa1/8pi); `at_origin` flags that
// case because the derivatives below are singular there.
double G0(Vec2 x, const KernelParams& kp, bool* at_origin = nullptr);

// G_j(x) = -dG0/dx_j = -(x_j/8pi) [2 ln(|x|/kappa0) + 1], j = 1, 2.
double Gj(Vec2 x, int j, const KernelParams& kp);
// G_k for k = 0, 1, 2 in one call.
double Gk(Vec2 x, int k, const KernelParams& kp);

Vec2 grad_G0(Vec2 x, const KernelParams& kp);
Vec2 grad_Gk(Vec2 x, int k, const KernelParams& kp);
Mat2 hess_G0(Vec2 x, const KernelParams& kp);

// omega_j = Laplacian of G_j:
//   omega_0 = (1/2pi)[ln(|x|/kappa0) + 1], omega_j = -x_j/(2pi |x|^2).
double omega(Vec2 x, int j, const KernelParams& kp);
Vec2 grad_omega(Vec2 x, int j, const KernelParams& kp);
Mat2 hess_omega0(Vec2 x);

// Affine basis X(x) = (1, x1, x2) and its normal derivative (0, n1, n2).
std::array<double, 3> affine_basis(Vec2 x);
std::array<double, 3> affine_basis_normal(Vec2 n);

// Position, inward normal and parametric speed of one boundary point.
struct PointData {
  Vec2 x;
  Vec2 n;
  double speed = 1.0;
};

// The four trace kernels of the single-layer operator between boundary
// points x (target) and y (source):
//   d0 = G0(x-y)                     d1 = d/dn(y) G0(x-y)
//   n0 = d/dn(x) G0(x-y)             n1 = d/dn(x) d/dn(y) G0(x-y)
struct TraceKernels {
  double d0, d1, n0, n1;
};
TraceKernels trace_kernels(const PointData& target, const PointData& source,
                           const KernelParams& kp);

// Same-curve kernels in log-split form,
//   K(t,s) = A(t,s) * ln(4 sin^2((t-s)/2)) + B(t,s),
// with A, B smooth and 2pi-biperiodic. `dt` is the parameter difference
// t - s; diagonal limits are used when |sin(dt/2)| underflows.
struct SplitKernels {
  double a_d0, b_d0, a_d1, b_d1, a_n0, b_n0, a_n1, b_n1;
};
SplitKernels split_kernels(const PointData& target, const PointData& source,
                           double dt, const KernelParams& kp);
SplitKernels split_kernels_diagonal(const PointData& p, const KernelParams& kp);

// Laplacian-level kernels for field evaluation off the boundary:
//   lap0  = omega_0(x-y)             lap1  = d/dn(y) omega_0(x-y)
//   glap0 = grad omega_0(x-y)        glap1 = d/dn(y) of that gradient
struct LaplacianKernels {
  double lap0, lap1;
  Vec2 glap0, glap1;
};
LaplacianKernels laplacian_kernels(Vec2 x, const PointData& source,
                                   const KernelParams& kp);

// Gradient-level kernels: grad_x of G0(x-y) and of d/dn(y) G0(x-y).
struct GradientKernels {
  Vec2 g0, g1;
};
GradientKernels gradient_kernels(Vec2 x, const PointData& source,
                                 const KernelParams& kp);

// Closed forms for an origin-centered circle of radius R:
//   nu_0(R)     = (R^2/4) [2 ln(R/kappa0) + 1]
//   nu_j(R)     = -R^2/4                                      (j = 1, 2)
//   lambda_0(R) = -(R^2/4pi)[ln(R/k0) + ln^2(R/k0)] + (kappa1 - R^2)/8pi
//   lambda_j(R) = -(1/4pi)[ln(R/kappa0) + 1]                  (j = 1, 2)
struct CircleForms {
  std::array<double, 3> nu;
  std::array<double, 3> lambda;
};
CircleForms circle_closed_forms(double radius, const KernelParams& kp);

} // namespace bisl

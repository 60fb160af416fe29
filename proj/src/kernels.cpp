#include "bisl/kernels.hpp"

#include <cmath>
#include <numbers>

#include "bisl/errors.hpp"

namespace bisl {

namespace {
constexpr double pi = std::numbers::pi;
constexpr double inv_8pi = 1.0 / (8.0 * pi);
constexpr double inv_2pi = 1.0 / (2.0 * pi);

void require_offcenter(Vec2 x, const char* what) {
  if (x.x == 0.0 && x.y == 0.0)
    throw SingularEvalError(std::string(what) + " is singular at the origin");
}
} // namespace

double G0(Vec2 x, const KernelParams& kp, bool* at_origin) {
  const double r2 = x.norm2();
  if (at_origin) *at_origin = (r2 == 0.0);
  if (r2 == 0.0) return inv_8pi * kp.kappa1;
  return inv_8pi * (r2 * (0.5 * std::log(r2) - std::log(kp.kappa0)) + kp.kappa1);
}

double Gj(Vec2 x, int j, const KernelParams& kp) {
  require_offcenter(x, "G_j");
  const double xj = (j == 1) ? x.x : x.y;
  return -xj * inv_8pi * (std::log(x.norm2() / (kp.kappa0 * kp.kappa0)) + 1.0);
}

double Gk(Vec2 x, int k, const KernelParams& kp) {
  return k == 0 ? G0(x, kp) : Gj(x, k, kp);
}

Vec2 grad_G0(Vec2 x, const KernelParams& kp) {
  require_offcenter(x, "grad G0");
  const double bracket =
      std::log(x.norm2() / (kp.kappa0 * kp.kappa0)) + 1.0; // 2 ln(r/k0) + 1
  return x * (inv_8pi * bracket);
}

Mat2 hess_G0(Vec2 x, const KernelParams& kp) {
  require_offcenter(x, "hess G0");
  const double r2 = x.norm2();
  const double bracket = std::log(r2 / (kp.kappa0 * kp.kappa0)) + 1.0;
  Mat2 h;
  h.a11 = inv_8pi * (bracket + 2.0 * x.x * x.x / r2);
  h.a22 = inv_8pi * (bracket + 2.0 * x.y * x.y / r2);
  h.a12 = h.a21 = inv_8pi * (2.0 * x.x * x.y / r2);
  return h;
}

Vec2 grad_Gk(Vec2 x, int k, const KernelParams& kp) {
  if (k == 0) return grad_G0(x, kp);
  require_offcenter(x, "grad G_j");
  const double r2 = x.norm2();
  const double bracket = std::log(r2 / (kp.kappa0 * kp.kappa0)) + 1.0;
  const double xj = (k == 1) ? x.x : x.y;
  Vec2 ej = (k == 1) ? Vec2{1.0, 0.0} : Vec2{0.0, 1.0};
  return -inv_8pi * (bracket * ej + (2.0 * xj / r2) * x);
}

double omega(Vec2 x, int j, const KernelParams& kp) {
  require_offcenter(x, "omega");
  if (j == 0)
    return inv_2pi * (0.5 * std::log(x.norm2() / (kp.kappa0 * kp.kappa0)) + 1.0);
  const double xj = (j == 1) ? x.x : x.y;
  return -inv_2pi * xj / x.norm2();
}

Vec2 grad_omega(Vec2 x, int j, const KernelParams&) {
  require_offcenter(x, "grad omega");
  const double r2 = x.norm2();
  if (j == 0) return x * (inv_2pi / r2);
  const double xj = (j == 1) ? x.x : x.y;
  Vec2 ej = (j == 1) ? Vec2{1.0, 0.0} : Vec2{0.0, 1.0};
  return -inv_2pi * ((1.0 / r2) * ej - (2.0 * xj / (r2 * r2)) * x);
}

Mat2 hess_omega0(Vec2 x) {
  require_offcenter(x, "hess omega0");
  const double r2 = x.norm2();
  Mat2 h;
  h.a11 = inv_2pi * (1.0 / r2 - 2.0 * x.x * x.x / (r2 * r2));
  h.a22 = inv_2pi * (1.0 / r2 - 2.0 * x.y * x.y / (r2 * r2));
  h.a12 = h.a21 = inv_2pi * (-2.0 * x.x * x.y / (r2 * r2));
  return h;
}

std::array<double, 3> affine_basis(Vec2 x) { return {1.0, x.x, x.y}; }

std::array<double, 3> affine_basis_normal(Vec2 n) { return {0.0, n.x, n.y}; }

TraceKernels trace_kernels(const PointData& target, const PointData& source,
                           const KernelParams& kp) {
  const Vec2 z = target.x - source.x;
  require_offcenter(z, "trace kernel (coincident points)");
  const double r2 = z.norm2();
  const double bracket = std::log(r2 / (kp.kappa0 * kp.kappa0)) + 1.0;
  const Vec2 g = z * (inv_8pi * bracket); // grad G0 at z
  TraceKernels k{};
  k.d0 = G0(z, kp);
  k.d1 = -dot(source.n, g);
  k.n0 = dot(target.n, g);
  k.n1 = -inv_8pi * (bracket * dot(target.n, source.n) +
                     2.0 * dot(z, target.n) * dot(z, source.n) / r2);
  return k;
}

SplitKernels split_kernels(const PointData& target, const PointData& source,
                           double dt, const KernelParams& kp) {
  const double sn = 2.0 * std::sin(0.5 * dt);
  if (std::abs(sn) < 1e-14) return split_kernels_diagonal(target, kp);
  const Vec2 z = target.x - source.x;
  const double r2 = z.norm2();
  const double lw = std::log(r2 / (sn * sn)); // ln w, w = r^2 / 4 sin^2
  const double lk = std::log(kp.kappa0);
  const double c = lw - 2.0 * lk + 1.0;
  const double zn_t = dot(z, target.n);
  const double zn_s = dot(z, source.n);
  SplitKernels s{};
  s.a_d0 = r2 * (0.5 * inv_8pi);
  s.b_d0 = inv_8pi * (r2 * (0.5 * lw - lk) + kp.kappa1);
  s.a_d1 = -zn_s * inv_8pi;
  s.b_d1 = -zn_s * inv_8pi * c;
  s.a_n0 = zn_t * inv_8pi;
  s.b_n0 = zn_t * inv_8pi * c;
  const double nn = dot(target.n, source.n);
  s.a_n1 = -nn * inv_8pi;
  s.b_n1 = -inv_8pi * (nn * c + 2.0 * zn_t * zn_s / r2);
  return s;
}

SplitKernels split_kernels_diagonal(const PointData& p,
                                    const KernelParams& kp) {
  SplitKernels s{};
  s.b_d0 = inv_8pi * kp.kappa1;
  s.a_n1 = -inv_8pi;
  // the cross term (z.n_t)(z.n_s)/r^2 vanishes at the diagonal
  s.b_n1 = -inv_8pi * (2.0 * std::log(p.speed / kp.kappa0) + 1.0);
  return s;
}

LaplacianKernels laplacian_kernels(Vec2 x, const PointData& source,
                                   const KernelParams& kp) {
  const Vec2 z = x - source.x;
  require_offcenter(z, "laplacian kernel (coincident points)");
  const double r2 = z.norm2();
  LaplacianKernels k{};
  k.lap0 = omega(z, 0, kp);
  k.lap1 = -dot(source.n, z) * inv_2pi / r2;
  k.glap0 = z * (inv_2pi / r2);
  k.glap1 = -1.0 * hess_omega0(z).apply(source.n);
  return k;
}

GradientKernels gradient_kernels(Vec2 x, const PointData& source,
                                 const KernelParams& kp) {
  const Vec2 z = x - source.x;
  require_offcenter(z, "gradient kernel (coincident points)");
  GradientKernels k{};
  k.g0 = grad_G0(z, kp);
  k.g1 = -1.0 * hess_G0(z, kp).apply(source.n);
  return k;
}

CircleForms circle_closed_forms(double radius, const KernelParams& kp) {
  if (!(radius > 0.0)) throw ConfigError("circle radius must be positive");
  const double lr = std::log(radius / kp.kappa0);
  const double r2 = radius * radius;
  CircleForms f{};
  f.nu[0] = 0.25 * r2 * (2.0 * lr + 1.0);
  f.nu[1] = f.nu[2] = -0.25 * r2;
  f.lambda[0] = -r2 / (4.0 * pi) * (lr + lr * lr) + inv_8pi * (kp.kappa1 - r2);
  f.lambda[1] = f.lambda[2] = -(lr + 1.0) / (4.0 * pi);
  return f;
}

} // namespace bisl

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "bisl/errors.hpp"
#include "bisl/kernels.hpp"

using namespace bisl;

namespace {
constexpr double pi = std::numbers::pi;
}

TEST_CASE("G0 reference values") {
  const KernelParams kp{1.0, 0.0};
  CHECK(G0({1.0, 0.0}, kp) == doctest::Approx(0.0).epsilon(1e-16));
  CHECK(G0({0.0, 2.0}, kp) ==
        doctest::Approx(std::log(2.0) / (2.0 * pi)).epsilon(1e-15));
  const KernelParams kp3{1.0, 3.0};
  CHECK(G0({1.0, 0.0}, kp3) == doctest::Approx(3.0 / (8.0 * pi)).epsilon(1e-15));
  bool at_origin = false;
  CHECK(G0({0.0, 0.0}, kp3, &at_origin) ==
        doctest::Approx(3.0 / (8.0 * pi)).epsilon(1e-15));
  CHECK(at_origin);
  G0({1.0, 1.0}, kp3, &at_origin);
  CHECK_FALSE(at_origin);
}

TEST_CASE("G_j reference values") {
  const KernelParams kp{1.0, 0.0};
  CHECK(Gj({1.0, 0.0}, 1, kp) == doctest::Approx(-1.0 / (8.0 * pi)).epsilon(1e-15));
  CHECK(Gj({0.0, 1.0}, 1, kp) == doctest::Approx(0.0).epsilon(1e-16));
  const KernelParams kpa{1.3, 0.7};
  CHECK(std::abs(Gj({kpa.kappa0 / std::sqrt(std::numbers::e), 0.0}, 1, kpa)) <
        1e-16);
  CHECK_THROWS_AS((void)Gj({0.0, 0.0}, 1, kp), SingularEvalError);
}

TEST_CASE("omega reference values and Laplacian consistency") {
  const KernelParams kp{1.0, 0.0};
  CHECK(std::abs(omega({1.0 / std::numbers::e, 0.0}, 0, kp)) < 1e-16);
  CHECK(omega({2.0, 0.0}, 1, kp) == doctest::Approx(-1.0 / (4.0 * pi)).epsilon(1e-15));
  // finite-difference Laplacian of G0 against omega_0
  const Vec2 x{1.3, 0.7};
  const double h = 1e-4;
  const double lap = (G0({x.x + h, x.y}, kp) + G0({x.x - h, x.y}, kp) +
                      G0({x.x, x.y + h}, kp) + G0({x.x, x.y - h}, kp) -
                      4.0 * G0(x, kp)) /
                     (h * h);
  CHECK(lap == doctest::Approx(omega(x, 0, kp)).epsilon(1e-6));
  CHECK_THROWS_AS((void)omega({0.0, 0.0}, 0, kp), SingularEvalError);
}

TEST_CASE("gradients against central differences") {
  const KernelParams kp{0.8, -1.5};
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> uni(-2.0, 2.0);
  double worst = 0.0;
  int done = 0;
  while (done < 100) {
    const Vec2 x{uni(rng), uni(rng)};
    if (x.norm() < 0.2) continue;
    ++done;
    const double h = 1e-5 * x.norm();
    const Vec2 fd{(G0({x.x + h, x.y}, kp) - G0({x.x - h, x.y}, kp)) / (2 * h),
                  (G0({x.x, x.y + h}, kp) - G0({x.x, x.y - h}, kp)) / (2 * h)};
    const Vec2 g{-Gj(x, 1, kp), -Gj(x, 2, kp)};
    worst = std::max(worst, (fd - g).norm() / std::max(1e-12, g.norm()));
    // grad_Gk and grad_G0 agree with the component definitions
    CHECK((grad_G0(x, kp) + Vec2{Gj(x, 1, kp), Gj(x, 2, kp)}).norm() < 1e-16);
  }
  CHECK(worst < 1e-6);
}

TEST_CASE("Laplacians of G_k against omega_k") {
  const KernelParams kp{1.7, 0.3};
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> uni(-2.0, 2.0);
  double worst = 0.0;
  int done = 0;
  while (done < 60) {
    const Vec2 x{uni(rng), uni(rng)};
    if (x.norm() < 0.3) continue;
    ++done;
    const double h = 1e-4 * x.norm();
    for (int k = 0; k < 3; ++k) {
      auto f = [&](Vec2 y) { return Gk(y, k, kp); };
      const double lap =
          (f({x.x + h, x.y}) + f({x.x - h, x.y}) + f({x.x, x.y + h}) +
           f({x.x, x.y - h}) - 4.0 * f(x)) /
          (h * h);
      const double om = omega(x, k, kp);
      worst = std::max(worst, std::abs(lap - om) / std::max(1.0, std::abs(om)));
    }
  }
  CHECK(worst < 1e-5);
}

TEST_CASE("hessians against finite differences") {
  const KernelParams kp{1.2, 0.0};
  const Vec2 x{0.9, -1.4};
  const double h = 1e-5;
  auto fd_hess = [&](auto&& f) {
    Mat2 m;
    m.a11 = (f(Vec2{x.x + h, x.y}) - 2 * f(x) + f(Vec2{x.x - h, x.y})) / (h * h);
    m.a22 = (f(Vec2{x.x, x.y + h}) - 2 * f(x) + f(Vec2{x.x, x.y - h})) / (h * h);
    m.a12 = m.a21 = (f(Vec2{x.x + h, x.y + h}) - f(Vec2{x.x + h, x.y - h}) -
                     f(Vec2{x.x - h, x.y + h}) + f(Vec2{x.x - h, x.y - h})) /
                    (4 * h * h);
    return m;
  };
  const Mat2 hg = hess_G0(x, kp);
  const Mat2 hg_fd = fd_hess([&](Vec2 y) { return G0(y, kp); });
  CHECK(hg.a11 == doctest::Approx(hg_fd.a11).epsilon(1e-5));
  CHECK(hg.a12 == doctest::Approx(hg_fd.a12).epsilon(1e-5));
  CHECK(hg.a22 == doctest::Approx(hg_fd.a22).epsilon(1e-5));
  const Mat2 ho = hess_omega0(x);
  const Mat2 ho_fd = fd_hess([&](Vec2 y) { return omega(y, 0, kp); });
  CHECK(ho.a11 == doctest::Approx(ho_fd.a11).epsilon(1e-5));
  CHECK(ho.a12 == doctest::Approx(ho_fd.a12).epsilon(1e-5));
  CHECK(ho.a22 == doctest::Approx(ho_fd.a22).epsilon(1e-5));
}

TEST_CASE("trace kernels") {
  const KernelParams kp{1.0, 0.0};
  const ParamCurve circle = ParamCurve::circle(1.0);
  auto at = [&](double t) {
    return PointData{circle.point(t), circle.inward_normal(t), circle.speed(t)};
  };
  SUBCASE("antipodal value on the unit circle") {
    const TraceKernels k = trace_kernels(at(0.0), at(pi), kp);
    CHECK(k.d0 == doctest::Approx(4.0 * std::log(2.0) / (8.0 * pi)).epsilon(1e-14));
  }
  SUBCASE("d0 is symmetric in its arguments") {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> uni(0.0, 2.0 * pi);
    for (int i = 0; i < 20; ++i) {
      const PointData a = at(uni(rng)), b = at(uni(rng));
      if ((a.x - b.x).norm() < 1e-6) continue;
      CHECK(std::abs(trace_kernels(a, b, kp).d0 - trace_kernels(b, a, kp).d0) <
            1e-15);
      // the second-order kernel is symmetric as well
      CHECK(std::abs(trace_kernels(a, b, kp).n1 - trace_kernels(b, a, kp).n1) <
            1e-15);
    }
  }
  SUBCASE("coincident points are rejected") {
    CHECK_THROWS_AS((void)trace_kernels(at(1.0), at(1.0), kp), SingularEvalError);
  }
}

TEST_CASE("split form reproduces the direct kernels") {
  const KernelParams kp{0.7, 1.1};
  const ParamCurve circle = ParamCurve::circle(1.0);
  auto at = [&](double t) {
    return PointData{circle.point(t), circle.inward_normal(t), circle.speed(t)};
  };
  double worst = 0.0;
  for (double dt = 1e-3; dt <= pi; dt *= 1.6) {
    const double t = 0.9;
    const PointData a = at(t), b = at(t - dt);
    const TraceKernels direct = trace_kernels(a, b, kp);
    const SplitKernels s = split_kernels(a, b, dt, kp);
    const double le = std::log(4.0 * std::sin(0.5 * dt) * std::sin(0.5 * dt));
    worst = std::max(worst, std::abs(s.a_d0 * le + s.b_d0 - direct.d0));
    worst = std::max(worst, std::abs(s.a_d1 * le + s.b_d1 - direct.d1));
    worst = std::max(worst, std::abs(s.a_n0 * le + s.b_n0 - direct.n0));
    worst = std::max(worst, std::abs(s.a_n1 * le + s.b_n1 - direct.n1));
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("diagonal limits of the split form") {
  const KernelParams kp{0.9, 2.0};
  // limit-from-offset check on curves with non-unit, varying speed
  for (const ParamCurve& curve :
       {ParamCurve::ellipse(2.0, 1.0), ParamCurve::kite()}) {
    for (double t : {0.3, 1.9, 4.4}) {
      const PointData p{curve.point(t), curve.inward_normal(t), curve.speed(t)};
      const SplitKernels diag = split_kernels_diagonal(p, kp);
      CHECK(diag.b_d0 == doctest::Approx(kp.kappa1 / (8.0 * pi)).epsilon(1e-15));
      // Richardson extrapolation from offsets h and h/2
      const double h = 1e-4;
      auto off = [&](double hh) {
        const PointData q{curve.point(t - hh), curve.inward_normal(t - hh),
                          curve.speed(t - hh)};
        return split_kernels(p, q, hh, kp);
      };
      const SplitKernels s1 = off(h), s2 = off(0.5 * h);
      auto extrap = [](double v1, double v2) { return 2.0 * v2 - v1; };
      CHECK(std::abs(extrap(s1.a_n1, s2.a_n1) - diag.a_n1) < 1e-8);
      CHECK(std::abs(extrap(s1.b_n1, s2.b_n1) - diag.b_n1) < 1e-8);
      CHECK(std::abs(extrap(s1.b_d1, s2.b_d1) - diag.b_d1) < 1e-8);
      CHECK(std::abs(extrap(s1.b_n0, s2.b_n0) - diag.b_n0) < 1e-8);
      CHECK(std::abs(extrap(s1.a_d0, s2.a_d0) - diag.a_d0) < 1e-8);
      CHECK(std::abs(extrap(s1.b_d0, s2.b_d0) - diag.b_d0) < 1e-8);
    }
  }
}

TEST_CASE("circle closed forms") {
  SUBCASE("unit circle, kappa = (1, 0)") {
    const CircleForms f = circle_closed_forms(1.0, {1.0, 0.0});
    CHECK(f.lambda[0] == doctest::Approx(-1.0 / (8.0 * pi)).epsilon(1e-15));
    CHECK(f.lambda[1] == doctest::Approx(-1.0 / (4.0 * pi)).epsilon(1e-15));
    CHECK(f.lambda[2] == doctest::Approx(-1.0 / (4.0 * pi)).epsilon(1e-15));
    CHECK(f.nu[0] == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(f.nu[1] == doctest::Approx(-0.25).epsilon(1e-15));
  }
  SUBCASE("lambda_1 vanishes at R = kappa0/e") {
    const CircleForms f = circle_closed_forms(1.0 / std::numbers::e, {1.0, 0.0});
    CHECK(std::abs(f.lambda[1]) < 1e-16);
    CHECK(std::abs(f.lambda[2]) < 1e-16);
    CHECK(f.lambda[0] ==
          doctest::Approx(-std::exp(-2.0) / (8.0 * pi)).epsilon(1e-13));
  }
  SUBCASE("nu_1 does not depend on kappa0") {
    for (double r : {0.4, 1.0, 3.7}) {
      const double a = circle_closed_forms(r, {1.0, 0.0}).nu[1];
      const double b = circle_closed_forms(r, {5.0, 2.0}).nu[1];
      CHECK(a == doctest::Approx(-r * r / 4.0).epsilon(1e-15));
      CHECK(a == doctest::Approx(b).epsilon(1e-15));
    }
  }
  SUBCASE("smooth in R: numeric derivative matches the analytic one") {
    const KernelParams kp{1.4, 0.6};
    for (double r : {0.5, 1.0, 2.3}) {
      const double h = 1e-6 * r;
      const CircleForms fp = circle_closed_forms(r + h, kp);
      const CircleForms fm = circle_closed_forms(r - h, kp);
      const double lr = std::log(r / kp.kappa0);
      const double d_nu0 = r * (lr + 1.0);
      const double d_lam0 = -r / (2.0 * pi) * (lr + 1.0) * (lr + 1.0);
      const double d_nuj = -0.5 * r;
      const double d_lamj = -1.0 / (4.0 * pi * r);
      CHECK((fp.nu[0] - fm.nu[0]) / (2 * h) == doctest::Approx(d_nu0).epsilon(1e-8));
      CHECK((fp.lambda[0] - fm.lambda[0]) / (2 * h) ==
            doctest::Approx(d_lam0).epsilon(1e-8));
      CHECK((fp.nu[1] - fm.nu[1]) / (2 * h) == doctest::Approx(d_nuj).epsilon(1e-8));
      CHECK((fp.lambda[1] - fm.lambda[1]) / (2 * h) ==
            doctest::Approx(d_lamj).epsilon(1e-8));
    }
  }
}

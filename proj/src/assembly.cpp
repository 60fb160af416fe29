#include "bisl/assembly.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "bisl/errors.hpp"
#include "bisl/quadrature.hpp"

namespace bisl {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

PointData node_data(const CurveSample& cs, std::size_t i) {
  return {cs.x[i], cs.normal[i], cs.speed[i]};
}

} // namespace

Eigen::MatrixXd DiscreteOperatorV::full() const {
  const Eigen::Index m = d0.rows();
  Eigen::MatrixXd f(2 * m, 2 * m);
  f.topLeftCorner(m, m) = d0;
  f.topRightCorner(m, m) = d1;
  f.bottomLeftCorner(m, m) = n0;
  f.bottomRightCorner(m, m) = n1;
  return f;
}

DiscreteOperatorV assemble_V(const MultiSample& ms, const KernelParams& kp) {
  const std::size_t m = ms.total;
  DiscreteOperatorV v;
  v.nodes = m;
  v.d0.setZero(m, m);
  v.d1.setZero(m, m);
  v.n0.setZero(m, m);
  v.n1.setZero(m, m);

  for (std::size_t ct = 0; ct < ms.curves.size(); ++ct) {
    const CurveSample& tgt = ms.curves[ct];
    for (std::size_t cs = 0; cs < ms.curves.size(); ++cs) {
      const CurveSample& src = ms.curves[cs];
      const double h = two_pi / double(src.n);
      if (ct == cs) {
        const auto logw = log_weights_diff(src.n);
        for (std::size_t i = 0; i < tgt.n; ++i) {
          const PointData pi = node_data(tgt, i);
          const std::size_t gi = ms.offset[ct] + i;
          for (std::size_t j = 0; j < src.n; ++j) {
            const std::size_t gj = ms.offset[cs] + j;
            const double w = src.speed[j];
            const std::size_t d = (i >= j) ? (i - j) : (j - i);
            const SplitKernels k =
                (i == j) ? split_kernels_diagonal(pi, kp)
                         : split_kernels(pi, node_data(src, j),
                                         tgt.t[i] - src.t[j], kp);
            v.d0(gi, gj) = (k.a_d0 * logw[d] + k.b_d0 * h) * w;
            v.d1(gi, gj) = (k.a_d1 * logw[d] + k.b_d1 * h) * w;
            v.n0(gi, gj) = (k.a_n0 * logw[d] + k.b_n0 * h) * w;
            v.n1(gi, gj) = (k.a_n1 * logw[d] + k.b_n1 * h) * w;
          }
        }
      } else {
        for (std::size_t i = 0; i < tgt.n; ++i) {
          const PointData pi = node_data(tgt, i);
          const std::size_t gi = ms.offset[ct] + i;
          for (std::size_t j = 0; j < src.n; ++j) {
            const std::size_t gj = ms.offset[cs] + j;
            const double hw = h * src.speed[j];
            const TraceKernels k = trace_kernels(pi, node_data(src, j), kp);
            v.d0(gi, gj) = k.d0 * hw;
            v.d1(gi, gj) = k.d1 * hw;
            v.n0(gi, gj) = k.n0 * hw;
            v.n1(gi, gj) = k.n1 * hw;
          }
        }
      }
    }
  }
  return v;
}

Eigen::Vector3d moment_vector(const MultiSample& ms,
                              const DiscreteDensity& q) {
  Eigen::Vector3d mom = Eigen::Vector3d::Zero();
  for (std::size_t c = 0; c < ms.curves.size(); ++c) {
    const CurveSample& cs = ms.curves[c];
    for (std::size_t i = 0; i < cs.n; ++i) {
      const double w = ms.arc_weight(c, i);
      const std::size_t g = ms.offset[c] + i;
      const auto xb = affine_basis(cs.x[i]);
      const auto nb = affine_basis_normal(cs.normal[i]);
      for (int k = 0; k < 3; ++k)
        mom(k) += w * (q.q0(g) * xb[k] + q.q1(g) * nb[k]);
    }
  }
  return mom;
}

TracePair affine_trace(const MultiSample& ms, const Eigen::Vector3d& a) {
  TracePair p;
  p.p0.resize(ms.total);
  p.p1.resize(ms.total);
  for (std::size_t c = 0; c < ms.curves.size(); ++c) {
    const CurveSample& cs = ms.curves[c];
    for (std::size_t i = 0; i < cs.n; ++i) {
      const std::size_t g = ms.offset[c] + i;
      p.p0(g) = a(0) + a(1) * cs.x[i].x + a(2) * cs.x[i].y;
      p.p1(g) = a(1) * cs.normal[i].x + a(2) * cs.normal[i].y;
    }
  }
  return p;
}

TracePair gk_trace(const MultiSample& ms, int k, const KernelParams& kp) {
  TracePair p;
  p.p0.resize(ms.total);
  p.p1.resize(ms.total);
  for (std::size_t c = 0; c < ms.curves.size(); ++c) {
    const CurveSample& cs = ms.curves[c];
    for (std::size_t i = 0; i < cs.n; ++i) {
      const std::size_t g = ms.offset[c] + i;
      p.p0(g) = Gk(cs.x[i], k, kp);
      p.p1(g) = dot(cs.normal[i], grad_Gk(cs.x[i], k, kp));
    }
  }
  return p;
}

TracePair trace_of(const MultiSample& ms, const std::function<double(Vec2)>& u,
                   const std::function<Vec2(Vec2)>& grad_u) {
  TracePair p;
  p.p0.resize(ms.total);
  p.p1.resize(ms.total);
  for (std::size_t c = 0; c < ms.curves.size(); ++c) {
    const CurveSample& cs = ms.curves[c];
    for (std::size_t i = 0; i < cs.n; ++i) {
      const std::size_t g = ms.offset[c] + i;
      p.p0(g) = u(cs.x[i]);
      p.p1(g) = dot(cs.normal[i], grad_u(cs.x[i]));
    }
  }
  return p;
}

BorderedSystem::BorderedSystem(const DiscreteOperatorV& v,
                               const MultiSample& ms)
    : nodes_(ms.total) {
  const std::size_t m = ms.total;
  if (v.nodes != m) throw ConfigError("operator/geometry size mismatch");
  mat_.setZero(2 * m + 3, 2 * m + 3);
  mat_.topLeftCorner(m, m) = v.d0;
  mat_.block(0, m, m, m) = v.d1;
  mat_.block(m, 0, m, m) = v.n0;
  mat_.block(m, m, m, m) = v.n1;
  // affine columns: traces of (1, x1, x2)
  for (std::size_t c = 0; c < ms.curves.size(); ++c) {
    const CurveSample& cs = ms.curves[c];
    for (std::size_t i = 0; i < cs.n; ++i) {
      const std::size_t g = ms.offset[c] + i;
      const auto xb = affine_basis(cs.x[i]);
      const auto nb = affine_basis_normal(cs.normal[i]);
      for (int k = 0; k < 3; ++k) {
        mat_(g, 2 * m + k) = xb[k];
        mat_(m + g, 2 * m + k) = nb[k];
        // moment rows
        mat_(2 * m + k, g) = ms.arc_weight(c, i) * xb[k];
        mat_(2 * m + k, m + g) = ms.arc_weight(c, i) * nb[k];
      }
    }
  }
  lu_.compute(mat_);
  const Eigen::VectorXd& diag = lu_.matrixLU().diagonal();
  double dmin = std::numeric_limits<double>::infinity(), dmax = 0.0;
  for (Eigen::Index i = 0; i < diag.size(); ++i) {
    dmin = std::min(dmin, std::abs(diag(i)));
    dmax = std::max(dmax, std::abs(diag(i)));
  }
  rcond_ = (dmax > 0.0) ? dmin / dmax : 0.0;
  if (!(rcond_ > 0.0))
    throw LinearAlgebraError("bordered system is numerically singular");
}

DiscreteDensity BorderedSystem::solve(const TracePair& p) const {
  const std::size_t m = nodes_;
  if (std::size_t(p.p0.size()) != m || std::size_t(p.p1.size()) != m)
    throw ConfigError("trace size mismatch");
  Eigen::VectorXd rhs(2 * m + 3);
  rhs.head(m) = p.p0;
  rhs.segment(m, m) = p.p1;
  rhs.tail(3).setZero();
  const Eigen::VectorXd sol = lu_.solve(rhs);
  if (!sol.allFinite())
    throw LinearAlgebraError("bordered solve produced non-finite values");
  DiscreteDensity q;
  q.q0 = sol.head(m);
  q.q1 = sol.segment(m, m);
  q.a = sol.tail(3);
  return q;
}

DiscreteDensity solve_trace(const BorderedSystem& sys, const TracePair& p) {
  return sys.solve(p);
}

DiscreteDensity solve_V(const DiscreteOperatorV& v, const TracePair& p) {
  const std::size_t m = v.nodes;
  if (std::size_t(p.p0.size()) != m || std::size_t(p.p1.size()) != m)
    throw ConfigError("trace size mismatch");
  const Eigen::MatrixXd a = v.full();
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(a);
  // power iteration for sigma_max, inverse iteration for sigma_min
  Eigen::VectorXd w = Eigen::VectorXd::Ones(2 * m).normalized();
  double smax = 0.0;
  for (int it = 0; it < 12; ++it) {
    w = a.transpose() * (a * w);
    smax = std::sqrt(w.norm());
    w.normalize();
  }
  Eigen::VectorXd u = Eigen::VectorXd::LinSpaced(2 * m, 1.0, 2.0).normalized();
  double inv_smin = 0.0;
  for (int it = 0; it < 24; ++it) {
    u = lu.solve(u);
    u = lu.adjoint().solve(u);
    inv_smin = std::sqrt(u.norm());
    if (inv_smin > 0.0) u.normalize();
  }
  const double cond = (inv_smin > 0.0) ? smax * inv_smin
                                       : std::numeric_limits<double>::infinity();
  if (!(cond < 1e12))
    throw DegenerateScaleError(
        "trace operator is numerically singular (degenerate scale?)", cond);
  Eigen::VectorXd rhs(2 * m);
  rhs.head(m) = p.p0;
  rhs.tail(m) = p.p1;
  const Eigen::VectorXd sol = lu.solve(rhs);
  if (!sol.allFinite()) throw LinearAlgebraError("direct solve failed");
  DiscreteDensity q;
  q.q0 = sol.head(m);
  q.q1 = sol.tail(m);
  q.a.setZero();
  return q;
}

FieldValue eval_field(const MultiSample& ms, const KernelParams& kp,
                      const DiscreteDensity& q, Vec2 x, double min_spacings) {
  for (std::size_t c = 0; c < ms.curves.size(); ++c) {
    const CurveSample& cs = ms.curves[c];
    const double h = two_pi / double(cs.n);
    for (std::size_t i = 0; i < cs.n; ++i) {
      const double d = (x - cs.x[i]).norm();
      if (d < min_spacings * h * cs.speed[i])
        throw NearBoundaryError("evaluation point too close to a curve", d);
    }
  }
  FieldValue f;
  for (std::size_t c = 0; c < ms.curves.size(); ++c) {
    const CurveSample& cs = ms.curves[c];
    for (std::size_t i = 0; i < cs.n; ++i) {
      const std::size_t g = ms.offset[c] + i;
      const double w = ms.arc_weight(c, i);
      const PointData src = node_data(cs, i);
      const Vec2 z = x - src.x;
      const double r2 = z.norm2();
      const double bracket =
          std::log(r2 / (kp.kappa0 * kp.kappa0)) + 1.0;
      const double g0v = G0(z, kp);
      const double g1v = -dot(src.n, z) * bracket / (8.0 * std::numbers::pi);
      f.u += w * (g0v * q.q0(g) + g1v * q.q1(g));
      const GradientKernels gk = gradient_kernels(x, src, kp);
      f.grad += w * (q.q0(g) * gk.g0 + q.q1(g) * gk.g1);
      const LaplacianKernels lk = laplacian_kernels(x, src, kp);
      f.lap += w * (q.q0(g) * lk.lap0 + q.q1(g) * lk.lap1);
      f.grad_lap += w * (q.q0(g) * lk.glap0 + q.q1(g) * lk.glap1);
    }
  }
  f.u += q.a(0) + q.a(1) * x.x + q.a(2) * x.y;
  f.grad += Vec2{q.a(1), q.a(2)};
  return f;
}

std::pair<double, double> trace_at(const MultiSample& ms,
                                   const KernelParams& kp,
                                   const DiscreteDensity& q, std::size_t c,
                                   double t) {
  if (c >= ms.curves.size()) throw ConfigError("curve index out of range");
  const CurveSample& own = ms.curves[c];
  const PointData tp{own.curve.point(t), own.curve.inward_normal(t),
                     own.curve.speed(t)};
  double p0 = 0.0, p1 = 0.0;
  for (std::size_t cs = 0; cs < ms.curves.size(); ++cs) {
    const CurveSample& src = ms.curves[cs];
    const double h = two_pi / double(src.n);
    if (cs == c) {
      const auto logw = log_weights_at(src.n, t);
      for (std::size_t j = 0; j < src.n; ++j) {
        const std::size_t g = ms.offset[cs] + j;
        const double w = src.speed[j];
        const SplitKernels k =
            split_kernels(tp, node_data(src, j), t - src.t[j], kp);
        p0 += ((k.a_d0 * logw[j] + k.b_d0 * h) * q.q0(g) +
               (k.a_d1 * logw[j] + k.b_d1 * h) * q.q1(g)) *
              w;
        p1 += ((k.a_n0 * logw[j] + k.b_n0 * h) * q.q0(g) +
               (k.a_n1 * logw[j] + k.b_n1 * h) * q.q1(g)) *
              w;
      }
    } else {
      for (std::size_t j = 0; j < src.n; ++j) {
        const std::size_t g = ms.offset[cs] + j;
        const double hw = h * src.speed[j];
        const TraceKernels k = trace_kernels(tp, node_data(src, j), kp);
        p0 += (k.d0 * q.q0(g) + k.d1 * q.q1(g)) * hw;
        p1 += (k.n0 * q.q0(g) + k.n1 * q.q1(g)) * hw;
      }
    }
  }
  p0 += q.a(0) + q.a(1) * tp.x.x + q.a(2) * tp.x.y;
  p1 += q.a(1) * tp.n.x + q.a(2) * tp.n.y;
  return {p0, p1};
}

FarFieldExpansion far_field_fit(const MultiSample& ms, const KernelParams& kp,
                                const DiscreteDensity& q,
                                std::span<const double> radii,
                                std::size_t samples_per_circle) {
  if (radii.size() < 3)
    throw ConfigError("far-field fit needs at least 3 radii");
  const double r_plus = ms.source.bounding_radii().second;
  for (double r : radii)
    if (!(r >= 4.0 * r_plus))
      throw ConfigError("far-field radii must be at least 4 R+");

  const std::size_t rows = radii.size() * samples_per_circle;
  Eigen::MatrixXd basis(rows, 6);
  Eigen::VectorXd vals(rows);
  DiscreteDensity pure = q;
  pure.a.setZero(); // the expansion concerns the single-layer part only
  std::size_t r = 0;
  for (double rad : radii)
    for (std::size_t i = 0; i < samples_per_circle; ++i, ++r) {
      const double th = two_pi * double(i) / double(samples_per_circle);
      const Vec2 x{rad * std::cos(th), rad * std::sin(th)};
      vals(r) = eval_field(ms, kp, pure, x).u;
      basis(r, 0) = G0(x, kp);
      basis(r, 1) = Gj(x, 1, kp);
      basis(r, 2) = Gj(x, 2, kp);
      basis(r, 3) = omega(x, 0, kp);
      basis(r, 4) = (x.x * x.x - x.y * x.y) / x.norm2();
      basis(r, 5) = x.x * x.y / x.norm2();
    }
  Eigen::VectorXd scale(6);
  for (int j = 0; j < 6; ++j) {
    scale(j) = basis.col(j).norm();
    if (!(scale(j) > 0.0)) scale(j) = 1.0;
    basis.col(j) /= scale(j);
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(basis);
  if (qr.rank() < 6) throw FitError("far-field fit is rank deficient");
  const Eigen::VectorXd coef = qr.solve(vals).cwiseQuotient(scale);
  FarFieldExpansion fe;
  fe.a = coef.head(3);
  fe.b = coef(3);
  fe.c = coef(4);
  fe.d = coef(5);
  Eigen::VectorXd fit = Eigen::VectorXd::Zero(rows);
  for (int j = 0; j < 6; ++j) fit += basis.col(j) * (coef(j) * scale(j));
  fe.residual = (fit - vals).norm() / std::sqrt(double(rows));
  return fe;
}

} // namespace bisl

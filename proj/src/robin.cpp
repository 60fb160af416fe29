#include "bisl/robin.hpp"

#include <cmath>
#include <numbers>

#include "bisl/errors.hpp"
#include "bisl/quadrature.hpp"

namespace bisl {

namespace {
constexpr double two_pi = 2.0 * std::numbers::pi;
}

std::string to_string(Definiteness d) {
  switch (d) {
  case Definiteness::positive:
    return "positive-definite";
  case Definiteness::negative:
    return "negative-definite";
  case Definiteness::indefinite:
    return "indefinite";
  case Definiteness::singular_within_tol:
    return "singular-within-tol";
  }
  return "?";
}

Definiteness classify(const Eigen::Vector3d& eigenvalues, double tol) {
  const double scale = std::max(1.0, eigenvalues.cwiseAbs().maxCoeff());
  if (eigenvalues.cwiseAbs().minCoeff() < tol * scale)
    return Definiteness::singular_within_tol;
  if (eigenvalues.minCoeff() > 0.0) return Definiteness::positive;
  if (eigenvalues.maxCoeff() < 0.0) return Definiteness::negative;
  return Definiteness::indefinite;
}

RobinEngine::RobinEngine(const MultiCurve& multi, const KernelParams& kp,
                         const RobinOptions& opt)
    : kp_(kp), sample_(MultiSample::of(multi.exterior_only(), opt.n)) {
  if (!multi.origin_interior())
    throw GeometryError("origin must lie inside the domain (normalize first)");
  const auto [r_minus, r_plus] = sample_.source.bounding_radii();
  (void)r_minus;
  probe_radius_ = opt.probe_radius > 0.0
                      ? opt.probe_radius
                      : 2.0 * std::max(r_plus, kp.kappa0);
  if (!(probe_radius_ > r_plus))
    throw GeometryError("probe circle must enclose the geometry");
  probe_nodes_ = opt.probe_nodes > 0 ? opt.probe_nodes : opt.n;

  const DiscreteOperatorV v = assemble_V(sample_, kp_);
  bordered_ = std::make_unique<BorderedSystem>(v, sample_);

  Eigen::Matrix3d raw;
  for (int k = 0; k < 3; ++k) {
    gk_density_[k] = bordered_->solve(gk_trace(sample_, k, kp_));
    raw.col(k) = bracket_of_density(gk_density_[k]);
  }
  robin_.lambda = 0.5 * (raw + raw.transpose());
  robin_.asymmetry = (raw - raw.transpose()).cwiseAbs().maxCoeff();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(robin_.lambda);
  robin_.eigenvalues = es.eigenvalues();
  robin_.det = robin_.lambda.determinant();
  robin_.cls = classify(robin_.eigenvalues, opt.singular_tol);
  robin_.probe_radius = probe_radius_;
  robin_.n = opt.n;
}

Eigen::Vector3d RobinEngine::bracket(const TracePair& p_exterior) const {
  return bracket_of_density(bordered_->solve(p_exterior));
}

Eigen::Vector3d RobinEngine::bracket_of_density(
    const DiscreteDensity& q) const {
  // Transfer to the probe circle: with u = G_j and v the minimal extension,
  //   [G_j, p] = int -dn(omega_j) v + omega_j dn(v) - dn(G_j) lap(v)
  //              + G_j dn(lap v)  ds,
  // n pointing toward the origin.
  Eigen::Vector3d out = Eigen::Vector3d::Zero();
  const double w = two_pi / double(probe_nodes_) * probe_radius_;
  for (std::size_t i = 0; i < probe_nodes_; ++i) {
    const double th = two_pi * double(i) / double(probe_nodes_);
    const Vec2 x{probe_radius_ * std::cos(th), probe_radius_ * std::sin(th)};
    const Vec2 n = -1.0 / probe_radius_ * x;
    const FieldValue f = eval_field(sample_, kp_, q, x);
    const double dn_v = dot(n, f.grad);
    const double dn_lap_v = dot(n, f.grad_lap);
    for (int j = 0; j < 3; ++j) {
      const double om = omega(x, j, kp_);
      const double dn_om = dot(n, grad_omega(x, j, kp_));
      const double gj = Gk(x, j, kp_);
      const double dn_gj = dot(n, grad_Gk(x, j, kp_));
      out(j) += w * (-dn_om * f.u + om * dn_v - dn_gj * f.lap + gj * dn_lap_v);
    }
  }
  return out;
}

Eigen::Vector3d bracket_vector(const MultiCurve& multi, const KernelParams& kp,
                               const TracePair& p_exterior, double probe_radius,
                               std::size_t n) {
  RobinOptions opt;
  opt.n = n;
  opt.probe_radius = probe_radius;
  return RobinEngine(multi, kp, opt).bracket(p_exterior);
}

RobinMatrix robin_matrix(const MultiCurve& multi, const KernelParams& kp,
                         const RobinOptions& opt) {
  const MultiCurve mc = multi.origin_interior() ? multi : multi.normalized();
  return RobinEngine(mc, kp, opt).robin();
}

CriteriaReport check_criteria(const MultiCurve& multi, const KernelParams& kp,
                              bool compute, const RobinOptions& opt) {
  const MultiCurve mc = multi.origin_interior() ? multi : multi.normalized();
  const auto [r_minus, r_plus] = mc.bounding_radii();
  CriteriaReport rep;
  rep.r_plus = r_plus;
  rep.r_minus = r_minus;
  rep.kappa0 = kp.kappa0;
  rep.kappa1 = kp.kappa1;
  const double e = std::numbers::e;
  const double thresh = (kp.kappa0 / e) * (kp.kappa0 / e);
  rep.predicts_positive = kp.kappa0 > e * r_plus && kp.kappa1 > thresh;
  rep.predicts_negative = kp.kappa0 < e * r_minus && kp.kappa1 < thresh;
  rep.prediction = rep.predicts_positive   ? "positive definite"
                   : rep.predicts_negative ? "negative definite"
                                           : "inconclusive";
  if (compute) rep.computed = robin_matrix(mc, kp, opt).cls;
  return rep;
}

double weighted_operator_min_eig(const MultiSample& ms, const KernelParams& kp,
                                 std::size_t drop_top) {
  const Eigen::MatrixXd v = assemble_V(ms, kp).full();
  Eigen::VectorXd w(2 * ms.total);
  for (std::size_t c = 0; c < ms.curves.size(); ++c)
    for (std::size_t i = 0; i < ms.curves[c].n; ++i)
      w(ms.offset[c] + i) = w(ms.total + ms.offset[c] + i) =
          ms.arc_weight(c, i);
  const Eigen::MatrixXd g = w.asDiagonal() * v;
  const Eigen::MatrixXd sym = 0.5 * (g + g.transpose());

  std::vector<Eigen::VectorXd> cols;
  for (std::size_t c = 0; c < ms.curves.size(); ++c) {
    const std::size_t n = ms.curves[c].n;
    const std::size_t drop = drop_top > 0 ? drop_top : n / 8;
    if (drop >= n / 2) throw ConfigError("mode band exceeds the resolution");
    const std::size_t dmax = n / 2 - drop;
    for (int comp = 0; comp < 2; ++comp) {
      const std::size_t base = std::size_t(comp) * ms.total + ms.offset[c];
      auto add = [&](auto&& f) {
        Eigen::VectorXd col = Eigen::VectorXd::Zero(2 * ms.total);
        for (std::size_t i = 0; i < n; ++i) col(base + i) = f(ms.curves[c].t[i]);
        cols.push_back(col / col.norm());
      };
      add([](double) { return 1.0; });
      for (std::size_t m = 1; m <= dmax; ++m) {
        add([m](double t) { return std::cos(double(m) * t); });
        add([m](double t) { return std::sin(double(m) * t); });
      }
    }
  }
  Eigen::MatrixXd basis(2 * ms.total, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) basis.col(j) = cols[j];
  const Eigen::MatrixXd proj = basis.transpose() * sym * basis;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
      0.5 * (proj + proj.transpose()));
  return es.eigenvalues()(0);
}

SDagger::SDagger(const MultiCurve& multi, const KernelParams& kp,
                 const TracePair& p, const RobinOptions& opt)
    : engine_(std::make_shared<RobinEngine>(multi, kp, opt)),
      full_sample_(MultiSample::of(multi, opt.n)) {
  const RobinMatrix& rm = engine_->robin();
  if (rm.cls == Definiteness::singular_within_tol)
    throw DegenerateScaleError("Robin matrix is singular within tolerance",
                               std::abs(rm.det));
  for (std::size_t c = 0; c < multi.size(); ++c)
    if (multi.exterior_flags()[c]) exterior_of_full_.push_back(c);

  // minimal extension of p on the full geometry
  const bool pure_exterior = exterior_of_full_.size() == multi.size();
  if (pure_exterior) {
    density_p_ = engine_->bordered().solve(p);
  } else {
    const DiscreteOperatorV v = assemble_V(full_sample_, kp);
    density_p_ = BorderedSystem(v, full_sample_).solve(p);
  }

  // restriction of p to the exterior curves, in exterior_only() order
  const MultiSample& es = engine_->exterior_sample();
  TracePair pe;
  pe.p0.resize(es.total);
  pe.p1.resize(es.total);
  for (std::size_t ec = 0; ec < exterior_of_full_.size(); ++ec) {
    const std::size_t fc = exterior_of_full_[ec];
    const std::size_t nn = full_sample_.curves[fc].n;
    pe.p0.segment(es.offset[ec], nn) = p.p0.segment(full_sample_.offset[fc], nn);
    pe.p1.segment(es.offset[ec], nn) = p.p1.segment(full_sample_.offset[fc], nn);
  }
  bracket_p_ = engine_->bracket(pe);
  beta_ = rm.lambda.ldlt().solve(bracket_p_);
}

double SDagger::eval(Vec2 x) const {
  const KernelParams& kp = engine_->params();
  const MultiSample& es = engine_->exterior_sample();
  double val = eval_field(full_sample_, kp, density_p_, x).u;
  const auto xb = affine_basis(x);
  for (int k = 0; k < 3; ++k) val -= bracket_p_(k) * xb[k];
  bool outside = true;
  for (std::size_t c = 0; c < es.source.size(); ++c)
    if (winding_number(es.source.curves()[c], x) != 0) outside = false;
  for (int k = 0; k < 3; ++k) {
    const Eigen::Vector3d col = engine_->robin().lambda.col(k);
    double gk_field = col(0) * xb[0] + col(1) * xb[1] + col(2) * xb[2];
    if (outside)
      gk_field += Gk(x, k, kp) -
                  eval_field(es, kp, engine_->gk_density(k), x).u;
    val += beta_(k) * gk_field;
  }
  return val;
}

std::pair<double, double> SDagger::trace_at(std::size_t c, double t) const {
  const KernelParams& kp = engine_->params();
  const MultiSample& es = engine_->exterior_sample();
  auto [p0, p1] = bisl::trace_at(full_sample_, kp, density_p_, c, t);
  const Vec2 x = full_sample_.curves[c].curve.point(t);
  const Vec2 n = full_sample_.curves[c].curve.inward_normal(t);
  const auto xb = affine_basis(x);
  const auto nb = affine_basis_normal(n);
  for (int k = 0; k < 3; ++k) {
    p0 -= bracket_p_(k) * xb[k];
    p1 -= bracket_p_(k) * nb[k];
  }
  // which exterior curve this is, if any
  std::ptrdiff_t ec = -1;
  for (std::size_t e = 0; e < exterior_of_full_.size(); ++e)
    if (exterior_of_full_[e] == c) ec = std::ptrdiff_t(e);
  for (int k = 0; k < 3; ++k) {
    const Eigen::Vector3d col = engine_->robin().lambda.col(k);
    double g0 = col(0) * xb[0] + col(1) * xb[1] + col(2) * xb[2];
    double g1 = col(0) * nb[0] + col(1) * nb[1] + col(2) * nb[2];
    if (ec >= 0) {
      const auto [s0, s1] =
          bisl::trace_at(es, kp, engine_->gk_density(k), std::size_t(ec), t);
      g0 += Gk(x, k, kp) - s0;
      g1 += dot(n, grad_Gk(x, k, kp)) - s1;
    }
    p0 += beta_(k) * g0;
    p1 += beta_(k) * g1;
  }
  return {p0, p1};
}

double sdagger_trace_residual(const MultiCurve& multi, const KernelParams& kp,
                              const TracePair& p, const RobinOptions& opt) {
  const SDagger sd(multi, kp, p, opt);
  const MultiSample ms = MultiSample::of(multi, opt.n);
  double worst = 0.0;
  for (std::size_t c = 0; c < ms.curves.size(); ++c) {
    const CurveSample& cs = ms.curves[c];
    std::vector<double> v0(cs.n), v1(cs.n);
    for (std::size_t i = 0; i < cs.n; ++i) {
      v0[i] = p.p0(ms.offset[c] + i);
      v1[i] = p.p1(ms.offset[c] + i);
    }
    for (std::size_t i = 0; i < cs.n; ++i) {
      const double t = cs.t[i] + std::numbers::pi / double(cs.n);
      const auto [g0, g1] = sd.trace_at(c, t);
      worst = std::max(worst, std::abs(g0 - trig_interp(v0, t)));
      worst = std::max(worst, std::abs(g1 - trig_interp(v1, t)));
    }
  }
  return worst;
}

} // namespace bisl

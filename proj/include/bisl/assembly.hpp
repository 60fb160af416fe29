#pragma once

#include <Eigen/Dense>
#include <functional>
#include <span>

#include "bisl/geometry.hpp"
#include "bisl/kernels.hpp"

namespace bisl {

// Nodal density pair plus the coefficients of the affine part a . (1,x1,x2).
struct DiscreteDensity {
  Eigen::VectorXd q0, q1;
  Eigen::Vector3d a = Eigen::Vector3d::Zero();
};

// Nodal total trace: p0 = Dirichlet values, p1 = Neumann values.
struct TracePair {
  Eigen::VectorXd p0, p1;
};

// Nyström matrix of the single-layer trace operator: maps nodal (q0, q1)
// to nodal (p0, p1). Within-curve blocks use the log-split product rule,
// cross-curve blocks the plain trapezoid rule.
struct DiscreteOperatorV {
  Eigen::MatrixXd d0, d1, n0, n1;
  std::size_t nodes = 0;
  Eigen::MatrixXd full() const; // [d0 d1; n0 n1], size 2M x 2M
};

DiscreteOperatorV assemble_V(const MultiSample& ms, const KernelParams& kp);

// Moment functional of the density: integral of q0 X + q1 dX/dn.
Eigen::Vector3d moment_vector(const MultiSample& ms, const DiscreteDensity& q);

// Trace of the affine function a . X on the nodes.
TracePair affine_trace(const MultiSample& ms, const Eigen::Vector3d& a);
// Trace of G_k (k = 0, 1, 2) on the nodes.
TracePair gk_trace(const MultiSample& ms, int k, const KernelParams& kp);
// Trace of a user field given by value and gradient callables.
TracePair trace_of(const MultiSample& ms, const std::function<double(Vec2)>& u,
                   const std::function<Vec2(Vec2)>& grad_u);

// Square system of size 2M+3 coupling the trace equations with the affine
// columns and the three moment constraints. Solvable for every geometry in
// range, including degenerate scales.
class BorderedSystem {
public:
  BorderedSystem(const DiscreteOperatorV& v, const MultiSample& ms);

  // (q, a) with V q + trace(a . X) = p and vanishing moment of q.
  DiscreteDensity solve(const TracePair& p) const;

  const Eigen::MatrixXd& matrix() const { return mat_; }
  double rcond_estimate() const { return rcond_; }

private:
  Eigen::MatrixXd mat_;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu_;
  double rcond_ = 0.0;
  std::size_t nodes_ = 0;
};

DiscreteDensity solve_trace(const BorderedSystem& sys, const TracePair& p);

// Direct solve V q = p (a = 0). Throws DegenerateScaleError when the
// estimated condition number exceeds 1e12.
DiscreteDensity solve_V(const DiscreteOperatorV& v, const TracePair& p);

struct FieldValue {
  double u = 0.0;
  Vec2 grad{};
  double lap = 0.0;
  Vec2 grad_lap{};
};

// Field of the single-layer potential of q plus the affine part, with its
// gradient, Laplacian and Laplacian gradient. Refuses points closer to a
// curve than `min_spacings` local grid spacings.
FieldValue eval_field(const MultiSample& ms, const KernelParams& kp,
                      const DiscreteDensity& q, Vec2 x,
                      double min_spacings = 5.0);

// Total trace of the field at an arbitrary parameter t of curve c, using
// the product rule on the own curve and trapezoid across curves.
std::pair<double, double> trace_at(const MultiSample& ms,
                                   const KernelParams& kp,
                                   const DiscreteDensity& q, std::size_t c,
                                   double t);

struct FarFieldExpansion {
  Eigen::Vector3d a = Eigen::Vector3d::Zero();
  double b = 0.0, c = 0.0, d = 0.0;
  double residual = 0.0; // rms of the least-squares fit
};

// Least-squares fit of the far-field coefficients of the single-layer part
// of q against the basis (G0, G1, G2, omega0, (x1^2-x2^2)/|x|^2, x1 x2/|x|^2)
// sampled on origin-centered circles of the given radii.
FarFieldExpansion far_field_fit(const MultiSample& ms, const KernelParams& kp,
                                const DiscreteDensity& q,
                                std::span<const double> radii,
                                std::size_t samples_per_circle = 32);

} // namespace bisl

#pragma once

#include <memory>
#include <optional>
#include <string>

#include "bisl/assembly.hpp"

namespace bisl {

enum class Definiteness { positive, negative, indefinite, singular_within_tol };

std::string to_string(Definiteness d);

struct RobinMatrix {
  Eigen::Matrix3d lambda;       // symmetrized
  double asymmetry = 0.0;       // max |raw - raw^T| entry before symmetrizing
  Eigen::Vector3d eigenvalues;  // ascending
  double det = 0.0;
  Definiteness cls = Definiteness::indefinite;
  double probe_radius = 0.0;
  std::size_t n = 0;
};

struct RobinOptions {
  std::size_t n = 256;
  double probe_radius = 0.0;   // 0: use 2 max(R+, kappa0)
  std::size_t probe_nodes = 0; // 0: use n
  double singular_tol = 1e-6;
};

Definiteness classify(const Eigen::Vector3d& eigenvalues, double tol = 1e-6);

// Shared machinery behind the bracket and the Robin matrix: exterior
// boundary sampled once, bordered system factorized once, probe circle
// fixed. The three G_k solves are cached for reuse.
class RobinEngine {
public:
  RobinEngine(const MultiCurve& multi, const KernelParams& kp,
              const RobinOptions& opt = {});

  // Bracket vector [G_j, p] for a trace on the exterior boundary, evaluated
  // by transfer to the probe circle.
  Eigen::Vector3d bracket(const TracePair& p_exterior) const;
  Eigen::Vector3d bracket_of_density(const DiscreteDensity& q) const;

  const RobinMatrix& robin() const { return robin_; }
  const MultiSample& exterior_sample() const { return sample_; }
  const BorderedSystem& bordered() const { return *bordered_; }
  const DiscreteDensity& gk_density(int k) const { return gk_density_[k]; }
  const KernelParams& params() const { return kp_; }
  double probe_radius() const { return probe_radius_; }

private:
  KernelParams kp_;
  MultiSample sample_;
  std::unique_ptr<BorderedSystem> bordered_;
  double probe_radius_ = 0.0;
  std::size_t probe_nodes_ = 0;
  std::array<DiscreteDensity, 3> gk_density_;
  RobinMatrix robin_;
};

// Bracket vector for a trace pair given on the exterior boundary of
// `multi`. The trace must be sampled on exterior_only() with `n` nodes.
Eigen::Vector3d bracket_vector(const MultiCurve& multi, const KernelParams& kp,
                               const TracePair& p_exterior, double probe_radius,
                               std::size_t n);

// Robin matrix of the exterior boundary. If the origin is not interior the
// geometry is recentered on the first exterior curve's centroid first.
RobinMatrix robin_matrix(const MultiCurve& multi, const KernelParams& kp,
                         const RobinOptions& opt = {});

struct CriteriaReport {
  double r_plus = 0.0, r_minus = 0.0;
  double kappa0 = 0.0, kappa1 = 0.0;
  bool predicts_positive = false;
  bool predicts_negative = false;
  std::string prediction; // "positive definite" | "negative definite" | "inconclusive"
  std::optional<Definiteness> computed;
};

// Sufficient definiteness criteria from the enclosing/inscribed circle
// radii: kappa0 > e R+ and kappa1 > (kappa0/e)^2 imply positive definite;
// kappa0 < e R- and kappa1 < (kappa0/e)^2 imply negative definite.
CriteriaReport check_criteria(const MultiCurve& multi, const KernelParams& kp,
                              bool compute = false, const RobinOptions& opt = {});

// Smallest eigenvalue of the symmetrized arc-length-weighted operator
// matrix on trigonometric densities of degree <= n/2 - drop_top. The top
// mode band is excluded: the log rule's Nyquist correction plants O(n^-2)
// artifacts there that dwarf the O(n^-3) physical eigenvalues. drop_top = 0
// selects n/8.
double weighted_operator_min_eig(const MultiSample& ms, const KernelParams& kp,
                                 std::size_t drop_top = 0);

// The corrected single-layer solution operator: for invertible Robin
// matrix, the field below has total trace p and equals the single-layer
// potential of the density solving V q = p.
class SDagger {
public:
  SDagger(const MultiCurve& multi, const KernelParams& kp, const TracePair& p,
          const RobinOptions& opt = {});

  double eval(Vec2 x) const;
  // Total trace at parameter t of curve c of the full geometry.
  std::pair<double, double> trace_at(std::size_t c, double t) const;

  const Eigen::Vector3d& bracket() const { return bracket_p_; }
  const RobinMatrix& robin() const { return engine_->robin(); }

private:
  std::shared_ptr<RobinEngine> engine_;
  MultiSample full_sample_;
  std::vector<std::size_t> exterior_of_full_; // full index of each Γe curve
  DiscreteDensity density_p_;                 // minimal extension of p, full Γ
  Eigen::Vector3d bracket_p_;
  Eigen::Vector3d beta_; // Lambda^{-1} bracket
};

// Sup-norm of gamma(SDagger p) - p over off-node collocation points (node
// midpoints), both trace components. Off-node values of p come from
// trigonometric interpolation of the nodal data.
double sdagger_trace_residual(const MultiCurve& multi, const KernelParams& kp,
                              const TracePair& p, const RobinOptions& opt = {});

} // namespace bisl

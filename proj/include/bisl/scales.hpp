#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "bisl/robin.hpp"

namespace bisl {

struct ScaleRoot {
  double rho = 0.0;
  int branch = 0;
  int multiplicity = 0;
  double residual = 0.0; // smallest |eigenvalue| of the Robin matrix at rho
};

struct ScaleScanResult {
  std::vector<double> rho;
  std::array<std::vector<double>, 3> branches; // continued eigenvalue branches
  std::vector<double> det;
  std::vector<ScaleRoot> roots;
  double scan_lo = 0.0, scan_hi = 0.0;
  KernelParams params;
  std::vector<std::string> warnings;
};

// Robin eigenvalues along rho -> Lambda(rho Gamma), branches paired across
// grid points by nearest-neighbor continuation. No root search.
ScaleScanResult scan_eigenvalues(const MultiCurve& multi,
                                 const KernelParams& kp,
                                 std::span<const double> rho_grid,
                                 std::size_t n);

// Scans the interval (1/(e R+), 1/(e R-)) padded by 10% and locates the
// zeros of the continued branches by bisection. `tol` scales the
// multiplicity count: a branch counts as vanishing at rho* when its
// eigenvalue is below tol * max(1, ||Lambda||).
ScaleScanResult find_degenerate_scales(const MultiCurve& multi,
                                       const KernelParams& kp, std::size_t n,
                                       double tol = 1e-6,
                                       std::size_t grid_points = 33);

// Same root search on a caller-supplied scale grid.
ScaleScanResult find_degenerate_scales(const MultiCurve& multi,
                                       const KernelParams& kp, std::size_t n,
                                       double tol,
                                       std::span<const double> rho_grid);

// Smallest singular value of the discretized trace operator on the full
// geometry (holes included) for each scale.
std::vector<std::pair<double, double>> sigma_min_scan(
    const MultiCurve& multi, const KernelParams& kp,
    std::span<const double> rho_grid, std::size_t n);

// Locations where sigma_min collapses. The dip is orders of magnitude
// narrower than any reasonable grid (the smallest singular value away from
// it is set by unresolvable high-frequency modes), so candidates are
// bracketed by the solution-norm blow-up against fixed smooth data and
// refined by golden section; each returned location is confirmed by an
// actual sigma_min collapse below `confirm_ratio` times the grid median.
std::vector<double> locate_sigma_min_dips(const MultiCurve& multi,
                                          const KernelParams& kp,
                                          std::span<const double> rho_grid,
                                          std::size_t n,
                                          double confirm_ratio = 1e-3);

} // namespace bisl

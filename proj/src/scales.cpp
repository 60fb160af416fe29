#include "bisl/scales.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "bisl/errors.hpp"

namespace bisl {

namespace {

Eigen::Vector3d sorted_eigs_at(const MultiCurve& multi, const KernelParams& kp,
                               double rho, std::size_t n) {
  RobinOptions opt;
  opt.n = n;
  return robin_matrix(multi.scaled_about_origin(rho), kp, opt).eigenvalues;
}

// Greedy pairing of the new sorted triple with the previous branch values:
// try all 6 permutations, keep the cheapest. Flags near-ties that assign
// different values.
struct Pairing {
  std::array<int, 3> perm;
  bool ambiguous = false;
};

Pairing pair_branches(const std::array<double, 3>& prev,
                      const Eigen::Vector3d& next) {
  static const std::array<std::array<int, 3>, 6> perms = {
      {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
  double best = std::numeric_limits<double>::infinity();
  double second = best;
  std::array<int, 3> best_perm = perms[0];
  std::array<int, 3> second_perm = perms[0];
  for (const auto& p : perms) {
    double cost = 0.0;
    for (int b = 0; b < 3; ++b) cost += std::abs(next(p[b]) - prev[b]);
    if (cost < best) {
      second = best;
      second_perm = best_perm;
      best = cost;
      best_perm = p;
    } else if (cost < second) {
      second = cost;
      second_perm = p;
    }
  }
  Pairing out{best_perm, false};
  if (second - best < 1e-12 * std::max(1.0, std::abs(best))) {
    for (int b = 0; b < 3; ++b)
      if (std::abs(next(best_perm[b]) - next(second_perm[b])) > 1e-12)
        out.ambiguous = true;
  }
  return out;
}

struct Continued {
  std::array<std::vector<double>, 3> branches;
  std::vector<bool> ambiguous_cell;
};

Continued continue_branches(const std::vector<Eigen::Vector3d>& eigs) {
  Continued c;
  c.ambiguous_cell.assign(eigs.empty() ? 0 : eigs.size() - 1, false);
  if (eigs.empty()) return c;
  std::array<double, 3> cur = {eigs[0](0), eigs[0](1), eigs[0](2)};
  for (int b = 0; b < 3; ++b) c.branches[b].push_back(cur[b]);
  for (std::size_t i = 1; i < eigs.size(); ++i) {
    const Pairing p = pair_branches(cur, eigs[i]);
    if (p.ambiguous) c.ambiguous_cell[i - 1] = true;
    for (int b = 0; b < 3; ++b) {
      cur[b] = eigs[i](p.perm[b]);
      c.branches[b].push_back(cur[b]);
    }
  }
  return c;
}

ScaleScanResult scan_impl(const MultiCurve& multi, const KernelParams& kp,
                          std::vector<double> grid, std::size_t n,
                          bool retry_on_ambiguity) {
  if (grid.size() < 2) throw ConfigError("scale grid needs at least 2 points");
  for (double r : grid)
    if (!(r > 0.0)) throw ConfigError("scale grid values must be positive");
  std::sort(grid.begin(), grid.end());

  ScaleScanResult res;
  res.params = kp;
  std::vector<Eigen::Vector3d> eigs;
  for (double rho : grid) eigs.push_back(sorted_eigs_at(multi, kp, rho, n));
  Continued cont = continue_branches(eigs);

  bool ambiguous = std::any_of(cont.ambiguous_cell.begin(),
                               cont.ambiguous_cell.end(),
                               [](bool b) { return b; });
  if (ambiguous && retry_on_ambiguity) {
    // refine the ambiguous cells once and re-pair through the finer grid
    std::vector<double> refined;
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
      refined.push_back(grid[i]);
      if (cont.ambiguous_cell[i])
        refined.push_back(0.5 * (grid[i] + grid[i + 1]));
    }
    refined.push_back(grid.back());
    res.warnings.push_back(
        "branch pairing ambiguous (near-degenerate eigenvalues); "
        "retried with refined grid");
    eigs.clear();
    for (double rho : refined) eigs.push_back(sorted_eigs_at(multi, kp, rho, n));
    cont = continue_branches(eigs);
    grid = std::move(refined);
  } else if (ambiguous) {
    res.warnings.push_back(
        "branch pairing ambiguous (near-degenerate eigenvalues)");
  }

  res.rho = std::move(grid);
  res.branches = std::move(cont.branches);
  res.det.resize(res.rho.size());
  for (std::size_t i = 0; i < res.rho.size(); ++i)
    res.det[i] =
        res.branches[0][i] * res.branches[1][i] * res.branches[2][i];
  res.scan_lo = res.rho.front();
  res.scan_hi = res.rho.back();
  return res;
}

// Bisection on one continued branch. The branch value at an interior point
// is the eigenvalue closest to the linear prediction from the bracket.
double bisect_branch(const MultiCurve& multi, const KernelParams& kp,
                     std::size_t n, double lo, double hi, double f_lo,
                     double f_hi) {
  for (int it = 0; it < 60 && hi - lo > 1e-11 * std::max(1.0, hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    const Eigen::Vector3d e = sorted_eigs_at(multi, kp, mid, n);
    const double pred = f_lo + (f_hi - f_lo) * (mid - lo) / (hi - lo);
    double f_mid = e(0);
    for (int j = 1; j < 3; ++j)
      if (std::abs(e(j) - pred) < std::abs(f_mid - pred)) f_mid = e(j);
    if (f_mid == 0.0) return mid;
    if ((f_mid < 0.0) == (f_lo < 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
      f_hi = f_mid;
    }
  }
  return 0.5 * (lo + hi);
}

} // namespace

ScaleScanResult scan_eigenvalues(const MultiCurve& multi,
                                 const KernelParams& kp,
                                 std::span<const double> rho_grid,
                                 std::size_t n) {
  const MultiCurve mc = multi.origin_interior() ? multi : multi.normalized();
  return scan_impl(mc, kp, {rho_grid.begin(), rho_grid.end()}, n, false);
}

ScaleScanResult find_degenerate_scales(const MultiCurve& multi,
                                       const KernelParams& kp, std::size_t n,
                                       double tol, std::size_t grid_points) {
  if (grid_points < 4) throw ConfigError("scan grid too coarse");
  const MultiCurve mc = multi.origin_interior() ? multi : multi.normalized();
  const auto [r_minus, r_plus] = mc.bounding_radii();
  const double e = std::numbers::e;
  const double lo = 0.9 / (e * r_plus);
  const double hi = 1.1 / (e * r_minus);
  std::vector<double> grid(grid_points);
  for (std::size_t i = 0; i < grid_points; ++i)
    grid[i] = lo + (hi - lo) * double(i) / double(grid_points - 1);
  return find_degenerate_scales(mc, kp, n, tol, grid);
}

ScaleScanResult find_degenerate_scales(const MultiCurve& multi,
                                       const KernelParams& kp, std::size_t n,
                                       double tol,
                                       std::span<const double> rho_grid) {
  const MultiCurve mc = multi.origin_interior() ? multi : multi.normalized();
  ScaleScanResult res =
      scan_impl(mc, kp, {rho_grid.begin(), rho_grid.end()}, n, true);

  std::vector<ScaleRoot> roots;
  for (int b = 0; b < 3; ++b) {
    const auto& br = res.branches[b];
    for (std::size_t i = 0; i + 1 < br.size(); ++i) {
      if (br[i] == 0.0 && i > 0) continue; // counted at the previous cell
      if (br[i] * br[i + 1] > 0.0) continue;
      const double rho_star = bisect_branch(mc, kp, n, res.rho[i],
                                            res.rho[i + 1], br[i], br[i + 1]);
      ScaleRoot root;
      root.rho = rho_star;
      root.branch = b;
      const Eigen::Vector3d eigs = sorted_eigs_at(mc, kp, rho_star, n);
      const double scale = std::max(1.0, eigs.cwiseAbs().maxCoeff());
      root.multiplicity = 0;
      for (int j = 0; j < 3; ++j)
        if (std::abs(eigs(j)) < tol * scale) ++root.multiplicity;
      root.residual = eigs.cwiseAbs().minCoeff();
      roots.push_back(root);
    }
  }
  std::sort(roots.begin(), roots.end(),
            [](const ScaleRoot& a, const ScaleRoot& b) { return a.rho < b.rho; });
  for (const ScaleRoot& r : roots) {
    if (!res.roots.empty() &&
        std::abs(r.rho - res.roots.back().rho) <
            1e-6 * std::max(1.0, r.rho))
      continue; // same location reached on another branch
    res.roots.push_back(r);
  }
  return res;
}

std::vector<std::pair<double, double>> sigma_min_scan(
    const MultiCurve& multi, const KernelParams& kp,
    std::span<const double> rho_grid, std::size_t n) {
  const MultiCurve mc = multi.origin_interior() ? multi : multi.normalized();
  std::vector<std::pair<double, double>> out;
  for (double rho : rho_grid) {
    if (!(rho > 0.0)) throw ConfigError("scale values must be positive");
    const MultiSample ms = MultiSample::of(mc.scaled_about_origin(rho), n);
    const Eigen::MatrixXd v = assemble_V(ms, kp).full();
    Eigen::BDCSVD<Eigen::MatrixXd> svd(v);
    out.emplace_back(rho, svd.singularValues().tail(1)(0));
  }
  return out;
}

std::vector<double> locate_sigma_min_dips(const MultiCurve& multi,
                                          const KernelParams& kp,
                                          std::span<const double> rho_grid,
                                          std::size_t n, double confirm_ratio) {
  const MultiCurve mc = multi.origin_interior() ? multi : multi.normalized();
  auto sigma_at = [&](double rho) {
    const MultiSample ms = MultiSample::of(mc.scaled_about_origin(rho), n);
    Eigen::BDCSVD<Eigen::MatrixXd> svd(assemble_V(ms, kp).full());
    return svd.singularValues().tail(1)(0);
  };
  // Distance-to-singularity proxy: reciprocal of the largest solution norm
  // over a few fixed smooth traces. Smooth data has no high-frequency
  // content, so the proxy behaves like c |rho - rho*| across the whole
  // interval. Several probes of different parity keep every root visible.
  auto proxy = [&](double rho) {
    const MultiSample ms = MultiSample::of(mc.scaled_about_origin(rho), n);
    const Eigen::MatrixXd v = assemble_V(ms, kp).full();
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(v);
    const std::size_t m = ms.total;
    Eigen::MatrixXd y = Eigen::MatrixXd::Zero(2 * m, 3);
    for (std::size_t c = 0; c < ms.curves.size(); ++c)
      for (std::size_t i = 0; i < ms.curves[c].n; ++i) {
        const double t = ms.curves[c].t[i];
        const std::size_t g0 = ms.offset[c] + i, g1 = m + ms.offset[c] + i;
        y(g0, 0) = 1.0 + 0.5 * std::cos(t) + 0.25 * std::sin(2.0 * t);
        y(g1, 0) = 0.5 - 0.25 * std::sin(t) + 0.125 * std::cos(2.0 * t);
        y(g0, 1) = std::sin(t) + 0.3 * std::cos(2.0 * t) + 0.1 * std::sin(3.0 * t);
        y(g1, 1) = std::cos(t) - 0.2 * std::sin(2.0 * t);
        y(g0, 2) = std::cos(3.0 * t) + 0.4 * std::sin(4.0 * t) - 0.2;
        y(g1, 2) = 1.0 + 0.5 * std::sin(3.0 * t);
      }
    double worst = 0.0;
    for (int j = 0; j < 3; ++j)
      worst = std::max(worst, lu.solve(y.col(j).normalized()).norm());
    return (worst > 0.0) ? 1.0 / worst : 0.0;
  };

  std::vector<double> user(rho_grid.begin(), rho_grid.end());
  std::sort(user.begin(), user.end());
  std::vector<double> sig(user.size());
  for (std::size_t i = 0; i < user.size(); ++i) sig[i] = sigma_at(user[i]);
  std::vector<double> med_buf = sig;
  std::nth_element(med_buf.begin(), med_buf.begin() + med_buf.size() / 2,
                   med_buf.end());
  const double median = med_buf[med_buf.size() / 2];

  // The dip basins of the proxy can be narrower than the user grid, so the
  // search densifies internally; basins below ~1e-3 of the interval length
  // are beyond this locator.
  const std::size_t dense_n = std::max<std::size_t>(4 * user.size(), 192);
  std::vector<double> grid(dense_n), f(dense_n);
  for (std::size_t i = 0; i < dense_n; ++i) {
    grid[i] = user.front() +
              (user.back() - user.front()) * double(i) / double(dense_n - 1);
    f[i] = proxy(grid[i]);
  }

  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  std::vector<double> dips;
  for (std::size_t i = 0; i < dense_n; ++i) {
    bool candidate = false;
    if ((i == 0 || f[i] < f[i - 1]) && (i + 1 == dense_n || f[i] <= f[i + 1]))
      candidate = true;
    if (i > 0 && i + 1 < dense_n &&
        f[i] < 0.999 * 0.5 * (f[i - 1] + f[i + 1]))
      candidate = true; // shallow notch in an otherwise smooth trend
    if (!candidate) continue;
    double a = grid[i > 0 ? i - 1 : 0];
    double b = grid[std::min(i + 1, dense_n - 1)];
    if (a == b) continue;
    double c = b - gr * (b - a), d = a + gr * (b - a);
    double fc = proxy(c), fd = proxy(d);
    for (int it = 0; it < 80 && b - a > 1e-12; ++it) {
      if (fc < fd) {
        b = d;
        d = c;
        fd = fc;
        c = b - gr * (b - a);
        fc = proxy(c);
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + gr * (b - a);
        fd = proxy(d);
      }
    }
    const double rho_hat = 0.5 * (a + b);
    const bool dup = !dips.empty() &&
                     std::abs(rho_hat - dips.back()) < 1e-6 * std::max(1.0, rho_hat);
    if (!dup && sigma_at(rho_hat) < confirm_ratio * median)
      dips.push_back(rho_hat);
  }
  return dips;
}

} // namespace bisl

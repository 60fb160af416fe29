// bisl - biharmonic single-layer toolkit command line.
//
// Subcommands: robin | scales | solve | converge | kernel-check.
// Exit codes: 0 ok, 2 invalid geometry or configuration, 3 non-convergence,
// 4 singular system / degenerate scale.

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>

#include "bisl/assembly.hpp"
#include "bisl/errors.hpp"
#include "bisl/geometry.hpp"
#include "bisl/io.hpp"
#include "bisl/kernels.hpp"
#include "bisl/quadrature.hpp"
#include "bisl/robin.hpp"
#include "bisl/scales.hpp"

namespace {

struct RunConfig {
  std::string curve;
  double kappa0 = 1.0;
  double kappa1 = 0.0;
  std::size_t n = 256;
  double probe = 0.0; // 0 = auto
  std::string grid;   // lo:hi:count
  double tol = 1e-6;
  std::string out;
  bool sigma_min = false;
  std::string bc = "affine:a1=1";
  std::string method = "bordered";
  std::size_t n_max = 512;
};

std::vector<double> parse_grid(const std::string& s) {
  double lo = 0.0, hi = 0.0;
  int count = 0;
  char c1 = 0, c2 = 0;
  std::istringstream in(s);
  if (!(in >> lo >> c1 >> hi >> c2 >> count) || c1 != ':' || c2 != ':' ||
      count < 2 || !(in >> std::ws).eof())
    throw bisl::ConfigError("grid must be lo:hi:count with count >= 2");
  if (!(lo > 0.0) || !(hi > lo))
    throw bisl::ConfigError("grid bounds must satisfy 0 < lo < hi");
  std::vector<double> g;
  g.reserve(std::size_t(count));
  for (int i = 0; i < count; ++i)
    g.push_back(lo + (hi - lo) * double(i) / double(count - 1));
  return g;
}

std::ostream& open_out(const std::string& path, std::ofstream& file) {
  if (path.empty()) return std::cout;
  file.open(path);
  if (!file) throw bisl::ConfigError("cannot open output file: " + path);
  return file;
}

std::string roots_path(const std::string& out) {
  const auto dot = out.rfind('.');
  if (dot == std::string::npos || out.find('/', dot) != std::string::npos)
    return out + "_roots.csv";
  return out.substr(0, dot) + "_roots" + out.substr(dot);
}

bisl::MultiCurve load_geometry(const RunConfig& cfg) {
  if (cfg.curve.empty()) throw bisl::ConfigError("--curve is required");
  return bisl::parse_curve_spec(cfg.curve).normalized();
}

void validate(const RunConfig& cfg) {
  if (!(cfg.kappa0 > 0.0)) throw bisl::ConfigError("kappa0 must be positive");
  if (cfg.n < 8 || cfg.n % 2 != 0)
    throw bisl::ConfigError("n must be even and at least 8");
}

int cmd_robin(const RunConfig& cfg) {
  const bisl::MultiCurve mc = load_geometry(cfg);
  const bisl::KernelParams kp{cfg.kappa0, cfg.kappa1};
  bisl::RobinOptions opt;
  opt.probe_radius = cfg.probe;
  opt.singular_tol = cfg.tol;
  bisl::RobinMatrix rm;
  bool converged = false;
  for (std::size_t n = cfg.n; n <= std::max(cfg.n, std::size_t(1024)); n *= 2) {
    opt.n = n;
    rm = bisl::robin_matrix(mc, kp, opt);
    const double scale = rm.lambda.cwiseAbs().maxCoeff();
    if (rm.asymmetry <= 1e-6 * std::max(1e-30, scale)) {
      converged = true;
      break;
    }
  }
  std::ofstream file;
  std::ostream& os = open_out(cfg.out, file);
  bisl::write_robin_report(os, rm);
  os << "exterior_curves=";
  bool first = true;
  for (std::size_t c = 0; c < mc.size(); ++c)
    if (mc.exterior_flags()[c]) {
      if (!first) os << ';';
      os << c;
      first = false;
    }
  os << '\n';
  if (!converged) {
    std::cerr << "error: asymmetry did not converge below threshold\n";
    return 3;
  }
  return 0;
}

int cmd_scales(const RunConfig& cfg) {
  const bisl::MultiCurve mc = load_geometry(cfg);
  const bisl::KernelParams kp{cfg.kappa0, cfg.kappa1};
  bisl::ScaleScanResult res;
  if (cfg.grid.empty()) {
    res = bisl::find_degenerate_scales(mc, kp, cfg.n, cfg.tol);
  } else {
    res = bisl::find_degenerate_scales(mc, kp, cfg.n, cfg.tol,
                                       parse_grid(cfg.grid));
  }
  std::optional<std::vector<std::pair<double, double>>> sigma;
  if (cfg.sigma_min) sigma = bisl::sigma_min_scan(mc, kp, res.rho, cfg.n);
  std::ofstream file;
  std::ostream& os = open_out(cfg.out, file);
  bisl::write_scan_csv(os, res, sigma ? &*sigma : nullptr);
  if (cfg.out.empty()) {
    std::cout << "# roots\n";
    bisl::write_roots_csv(std::cout, res);
  } else {
    std::ofstream rf(roots_path(cfg.out));
    if (!rf) throw bisl::ConfigError("cannot open roots output file");
    bisl::write_roots_csv(rf, res);
  }
  for (const auto& w : res.warnings) std::cerr << "warning: " << w << '\n';
  return 0;
}

bisl::TracePair boundary_data(const std::string& bc, const bisl::MultiSample& ms,
                              const bisl::KernelParams& kp) {
  if (bc.rfind("affine", 0) == 0) {
    Eigen::Vector3d a = Eigen::Vector3d::Zero();
    const auto colon = bc.find(':');
    if (colon != std::string::npos) {
      std::istringstream in(bc.substr(colon + 1));
      std::string item;
      while (std::getline(in, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos || item.substr(0, eq).size() != 2 ||
            item[0] != 'a' || item[1] < '0' || item[1] > '2')
          throw bisl::ConfigError("bad affine boundary data: " + item);
        a(item[1] - '0') = std::stod(item.substr(eq + 1));
      }
    } else {
      a(1) = 1.0;
    }
    return bisl::affine_trace(ms, a);
  }
  if (bc.rfind("point-source", 0) == 0) {
    bisl::Vec2 z{3.0, 0.0};
    const auto colon = bc.find(':');
    if (colon != std::string::npos) {
      std::istringstream in(bc.substr(colon + 1));
      std::string item;
      while (std::getline(in, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos)
          throw bisl::ConfigError("bad point-source data: " + item);
        const std::string key = item.substr(0, eq);
        const double v = std::stod(item.substr(eq + 1));
        if (key == "zx")
          z.x = v;
        else if (key == "zy")
          z.y = v;
        else
          throw bisl::ConfigError("bad point-source key: " + key);
      }
    }
    return bisl::trace_of(
        ms, [&](bisl::Vec2 x) { return bisl::G0(x - z, kp); },
        [&](bisl::Vec2 x) { return bisl::grad_G0(x - z, kp); });
  }
  throw bisl::ConfigError("unknown boundary data: " + bc);
}

int cmd_solve(const RunConfig& cfg) {
  const bisl::MultiCurve mc = load_geometry(cfg);
  const bisl::KernelParams kp{cfg.kappa0, cfg.kappa1};
  const bisl::MultiSample ms = bisl::MultiSample::of(mc, cfg.n);
  const bisl::TracePair p = boundary_data(cfg.bc, ms, kp);
  bisl::DiscreteDensity q;
  if (cfg.method == "bordered") {
    q = bisl::BorderedSystem(bisl::assemble_V(ms, kp), ms).solve(p);
  } else if (cfg.method == "direct") {
    try {
      q = bisl::solve_V(bisl::assemble_V(ms, kp), p);
    } catch (const bisl::DegenerateScaleError& e) {
      auto res = bisl::find_degenerate_scales(mc, kp, 64, 1e-6, 17);
      std::cerr << "error: " << e.what() << '\n';
      if (!res.roots.empty()) {
        double best = res.roots[0].rho;
        for (const auto& r : res.roots)
          if (std::abs(r.rho - 1.0) < std::abs(best - 1.0)) best = r.rho;
        std::cerr << "nearest degenerate scale: rho=" << bisl::num17(best)
                  << '\n';
      }
      return 4;
    }
  } else {
    throw bisl::ConfigError("method must be bordered or direct");
  }
  std::vector<double> axis =
      cfg.grid.empty() ? parse_grid("-2:2:9") : parse_grid(cfg.grid);
  std::ofstream file;
  std::ostream& os = open_out(cfg.out, file);
  os << "x,y,u,lap_u\n";
  std::size_t skipped = 0;
  for (double y : axis)
    for (double x : axis) {
      try {
        const bisl::FieldValue f = bisl::eval_field(ms, kp, q, {x, y});
        os << bisl::num17(x) << ',' << bisl::num17(y) << ','
           << bisl::num17(f.u) << ',' << bisl::num17(f.lap) << '\n';
      } catch (const bisl::NearBoundaryError&) {
        ++skipped;
      }
    }
  os << "# skipped_near_boundary=" << skipped << '\n';
  return 0;
}

int cmd_converge(const RunConfig& cfg) {
  const bisl::MultiCurve mc = load_geometry(cfg);
  const bisl::KernelParams kp{cfg.kappa0, cfg.kappa1};
  // closed form available when the geometry is a single origin-centered circle
  std::optional<Eigen::Vector3d> closed;
  if (mc.size() == 1 && mc.curves()[0].kind() == bisl::CurveKind::circle &&
      mc.curves()[0].center().norm() == 0.0) {
    const double r =
        (mc.curves()[0].point(0.0) - mc.curves()[0].center()).norm();
    const auto cf = bisl::circle_closed_forms(r, kp);
    closed = Eigen::Vector3d(cf.lambda[0], cf.lambda[1], cf.lambda[2]);
  }
  std::vector<std::size_t> ns;
  for (std::size_t n = 32; n <= cfg.n_max; n *= 2) ns.push_back(n);
  bisl::RobinOptions opt;
  opt.probe_radius = cfg.probe;
  std::vector<bisl::RobinMatrix> rms;
  for (std::size_t n : ns) {
    opt.n = n;
    rms.push_back(bisl::robin_matrix(mc, kp, opt));
  }
  std::ofstream file;
  std::ostream& os = open_out(cfg.out, file);
  os << "n,err_vs_ref,err_vs_closed,asymmetry\n";
  for (std::size_t i = 0; i < ns.size(); ++i) {
    const double err_ref =
        (rms[i].lambda - rms.back().lambda).cwiseAbs().maxCoeff();
    os << ns[i] << ',' << bisl::num17(err_ref) << ',';
    if (closed) {
      Eigen::Matrix3d ref = closed->asDiagonal();
      os << bisl::num17((rms[i].lambda - ref).cwiseAbs().maxCoeff());
    }
    os << ',' << bisl::num17(rms[i].asymmetry) << '\n';
  }
  return 0;
}

int cmd_kernel_check(const RunConfig& cfg) {
  const bisl::KernelParams kp{cfg.kappa0, cfg.kappa1};
  std::mt19937 rng(12345);
  std::uniform_real_distribution<double> uni(-2.0, 2.0);
  auto sample_point = [&] {
    while (true) {
      bisl::Vec2 x{uni(rng), uni(rng)};
      if (x.norm() > 0.2) return x;
    }
  };
  double grad_err = 0.0, lap_err = 0.0;
  for (int i = 0; i < 100; ++i) {
    const bisl::Vec2 x = sample_point();
    const double h = 1e-5 * x.norm();
    const double ddx = (bisl::G0({x.x + h, x.y}, kp) - bisl::G0({x.x - h, x.y}, kp)) / (2 * h);
    const double ddy = (bisl::G0({x.x, x.y + h}, kp) - bisl::G0({x.x, x.y - h}, kp)) / (2 * h);
    const bisl::Vec2 g{-bisl::Gj(x, 1, kp), -bisl::Gj(x, 2, kp)};
    grad_err = std::max(grad_err, std::hypot(ddx - g.x, ddy - g.y) /
                                      std::max(1e-12, g.norm()));
    const double hh = 1e-4 * x.norm();
    for (int j = 0; j < 3; ++j) {
      auto f = [&](bisl::Vec2 y) { return bisl::Gk(y, j, kp); };
      const double lap =
          (f({x.x + hh, x.y}) + f({x.x - hh, x.y}) + f({x.x, x.y + hh}) +
           f({x.x, x.y - hh}) - 4.0 * f(x)) /
          (hh * hh);
      const double om = bisl::omega(x, j, kp);
      lap_err = std::max(lap_err,
                         std::abs(lap - om) / std::max(1.0, std::abs(om)));
    }
  }
  // split form vs direct kernels on the unit circle
  const bisl::ParamCurve circle = bisl::ParamCurve::circle(1.0);
  double split_err = 0.0;
  for (double dt : {1e-3, 1e-2, 0.1, 1.0, 2.0, 3.0}) {
    const double t = 0.7, s = t - dt;
    bisl::PointData pt{circle.point(t), circle.inward_normal(t), circle.speed(t)};
    bisl::PointData ps{circle.point(s), circle.inward_normal(s), circle.speed(s)};
    const auto direct = bisl::trace_kernels(pt, ps, kp);
    const auto split = bisl::split_kernels(pt, ps, dt, kp);
    const double le = std::log(4.0 * std::pow(std::sin(0.5 * dt), 2));
    split_err = std::max(split_err, std::abs(split.a_d0 * le + split.b_d0 - direct.d0));
    split_err = std::max(split_err, std::abs(split.a_d1 * le + split.b_d1 - direct.d1));
    split_err = std::max(split_err, std::abs(split.a_n0 * le + split.b_n0 - direct.n0));
    split_err = std::max(split_err, std::abs(split.a_n1 * le + split.b_n1 - direct.n1));
  }
  std::printf("grad_check_rel=%s\n", bisl::num17(grad_err).c_str());
  std::printf("laplacian_check_rel=%s\n", bisl::num17(lap_err).c_str());
  std::printf("split_consistency_abs=%s\n", bisl::num17(split_err).c_str());
  const bool ok = grad_err < 1e-6 && lap_err < 1e-5 && split_err < 1e-12;
  std::printf("status=%s\n", ok ? "pass" : "fail");
  return ok ? 0 : 3;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"biharmonic single-layer toolkit"};
  app.set_config("--config");
  RunConfig cfg;
  app.add_option("--curve", cfg.curve, "curve spec, e.g. circle:r=1+kite:");
  app.add_option("--kappa0", cfg.kappa0, "kernel length scale (> 0)");
  app.add_option("--kappa1", cfg.kappa1, "kernel additive constant");
  app.add_option("--n", cfg.n, "nodes per curve (even, >= 8)");
  app.add_option("--probe", cfg.probe, "probe circle radius (0 = auto)");
  app.add_option("--grid", cfg.grid, "grid lo:hi:count");
  app.add_option("--tol", cfg.tol, "singularity/multiplicity tolerance");
  app.add_option("--out", cfg.out, "output file (default stdout)");
  app.add_flag("--sigma-min", cfg.sigma_min, "add sigma_min column to scans");
  app.add_option("--bc", cfg.bc,
                 "solve boundary data: affine[:a0=..,a1=..,a2=..] or "
                 "point-source[:zx=..,zy=..]");
  app.add_option("--method", cfg.method, "solve method: bordered | direct");
  app.add_option("--n-max", cfg.n_max, "largest n for convergence runs");
  app.require_subcommand(1);
  auto* robin = app.add_subcommand("robin", "Robin matrix report");
  auto* scales = app.add_subcommand("scales", "degenerate-scale scan");
  auto* solve = app.add_subcommand("solve", "boundary solve + field grid");
  auto* converge = app.add_subcommand("converge", "convergence study");
  auto* kernel = app.add_subcommand("kernel-check", "kernel self-checks");
  for (auto* sub : {robin, scales, solve, converge, kernel}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    validate(cfg);
    if (robin->parsed()) return cmd_robin(cfg);
    if (scales->parsed()) return cmd_scales(cfg);
    if (solve->parsed()) return cmd_solve(cfg);
    if (converge->parsed()) return cmd_converge(cfg);
    if (kernel->parsed()) return cmd_kernel_check(cfg);
  } catch (const bisl::DegenerateScaleError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 4;
  } catch (const bisl::LinearAlgebraError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 4;
  } catch (const bisl::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

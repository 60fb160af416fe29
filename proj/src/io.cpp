#include "bisl/io.hpp"

#include <cstdio>

namespace bisl {

std::string num17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_matrix_csv(std::ostream& os, const Eigen::MatrixXd& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) os << ',';
      os << num17(m(i, j));
    }
    os << '\n';
  }
}

void write_scan_csv(std::ostream& os, const ScaleScanResult& scan,
                    const std::vector<std::pair<double, double>>* sigma) {
  os << "rho,lambda1,lambda2,lambda3,det";
  if (sigma) os << ",sigma_min";
  os << '\n';
  for (std::size_t i = 0; i < scan.rho.size(); ++i) {
    os << num17(scan.rho[i]);
    for (int b = 0; b < 3; ++b) os << ',' << num17(scan.branches[b][i]);
    os << ',' << num17(scan.det[i]);
    if (sigma) {
      double s = 0.0;
      for (const auto& [r, v] : *sigma)
        if (r == scan.rho[i]) s = v;
      os << ',' << num17(s);
    }
    os << '\n';
  }
}

void write_roots_csv(std::ostream& os, const ScaleScanResult& scan) {
  os << "rho,branch,multiplicity,residual\n";
  for (const ScaleRoot& r : scan.roots)
    os << num17(r.rho) << ',' << r.branch << ',' << r.multiplicity << ','
       << num17(r.residual) << '\n';
}

void write_robin_report(std::ostream& os, const RobinMatrix& rm) {
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      os << "lambda_" << i << j << "=" << num17(rm.lambda(i, j)) << '\n';
  for (int i = 0; i < 3; ++i)
    os << "eig" << (i + 1) << "=" << num17(rm.eigenvalues(i)) << '\n';
  os << "det=" << num17(rm.det) << '\n';
  os << "class=" << to_string(rm.cls) << '\n';
  os << "asymmetry=" << num17(rm.asymmetry) << '\n';
  os << "probe_radius=" << num17(rm.probe_radius) << '\n';
  os << "n=" << rm.n << '\n';
}

} // namespace bisl

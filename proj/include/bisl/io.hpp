#pragma once

#include <Eigen/Dense>
#include <ostream>
#include <string>
#include <vector>

#include "bisl/robin.hpp"
#include "bisl/scales.hpp"

namespace bisl {

// Shortest-faithful decimal form (17 significant digits).
std::string num17(double v);

// Matrix as CSV, row-major, no header.
void write_matrix_csv(std::ostream& os, const Eigen::MatrixXd& m);

// Columns rho,lambda1,lambda2,lambda3,det[,sigma_min].
void write_scan_csv(std::ostream& os, const ScaleScanResult& scan,
                    const std::vector<std::pair<double, double>>* sigma = nullptr);

// Columns rho,branch,multiplicity,residual.
void write_roots_csv(std::ostream& os, const ScaleScanResult& scan);

// Flat key=value report of a Robin matrix.
void write_robin_report(std::ostream& os, const RobinMatrix& rm);

} // namespace bisl

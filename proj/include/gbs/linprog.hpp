#pragma once

#include <Eigen/Dense>

namespace gbs {

/// Minimize c.x subject to a_ub*x <= b_ub, a_eq*x == b_eq, x >= 0.
/// Either constraint block may be empty (0 rows).
struct LpProblem {
  Eigen::VectorXd c;
  Eigen::MatrixXd a_ub;
  Eigen::VectorXd b_ub;
  Eigen::MatrixXd a_eq;
  Eigen::VectorXd b_eq;
};

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

struct LpSolution {
  LpStatus status = LpStatus::IterationLimit;
  Eigen::VectorXd x;
  double objective = 0.0;
};

/// Dense two-phase primal simplex with Bland's rule (finite on degenerate
/// problems). Intended for the small/medium LPs that arise here; tableau is
/// O(rows * cols) memory.
LpSolution solve_lp(const LpProblem& problem, int max_iterations = 0);

/// Point of maximum margin inside the polyhedron
///   sign_i * (normals.row(i).dot(x) + offsets_i) >= margin,  lo <= x <= hi.
/// With unit normals the optimum is the Chebyshev center of the region
/// relative to the hyperplanes. The box keeps unbounded cells bounded.
struct MarginPoint {
  Eigen::VectorXd point;
  double margin = 0.0;  // negative when no interior point exists
  bool solved = false;  // false only on solver breakdown
};

MarginPoint max_margin_point(const Eigen::MatrixXd& normals,
                             const Eigen::VectorXd& offsets,
                             const Eigen::VectorXi& signs,
                             const Eigen::VectorXd& lo,
                             const Eigen::VectorXd& hi);

}  // namespace gbs

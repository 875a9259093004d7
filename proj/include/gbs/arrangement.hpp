#pragma once

#include <Eigen/Dense>

#include <vector>

namespace gbs {

/// One full-dimensional cell of a hyperplane arrangement clipped to a box:
/// its sign with respect to every plane, an interior witness, and the
/// witness's clearance from the nearest plane.
struct ArrangementCell {
  Eigen::VectorXi plane_signs;
  Eigen::VectorXd witness;
  double margin = 0.0;
};

/// Enumerates the cells of the arrangement of the planes
/// normals.row(k).dot(x) + offsets(k) = 0 inside [lo, hi] by incremental
/// insertion: each new plane splits every existing cell whose two sides
/// both admit an interior point with clearance >= margin (a small linear
/// program per side). Throws DegenerateArrangement when a cell cannot be
/// separated at the tolerance.
std::vector<ArrangementCell> enumerate_cells(const Eigen::MatrixXd& normals,
                                             const Eigen::VectorXd& offsets,
                                             const Eigen::VectorXd& lo,
                                             const Eigen::VectorXd& hi,
                                             double margin = 1e-7);

}  // namespace gbs

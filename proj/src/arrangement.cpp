#include "gbs/arrangement.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "gbs/errors.hpp"
#include "gbs/hypothesis_space.hpp"
#include "gbs/linprog.hpp"

namespace gbs {

std::vector<ArrangementCell> enumerate_cells(const Eigen::MatrixXd& normals,
                                             const Eigen::VectorXd& offsets,
                                             const Eigen::VectorXd& lo,
                                             const Eigen::VectorXd& hi,
                                             double margin) {
  const int planes = static_cast<int>(normals.rows());

  std::vector<ArrangementCell> cells;
  {
    ArrangementCell root;
    root.plane_signs.resize(0);
    root.witness = 0.5 * (lo + hi);
    root.margin = std::numeric_limits<double>::infinity();
    cells.push_back(std::move(root));
  }

  for (int p = 0; p < planes; ++p) {
    std::vector<ArrangementCell> next;
    next.reserve(2 * cells.size());

    for (const ArrangementCell& cell : cells) {
      const double dist = normals.row(p).dot(cell.witness) + offsets(p);

      auto try_side = [&](int side) -> MarginPoint {
        Eigen::VectorXi signs(p + 1);
        signs.head(p) = cell.plane_signs;
        signs(p) = side;
        return max_margin_point(normals.topRows(p + 1), offsets.head(p + 1),
                                signs, lo, hi);
      };
      auto emit = [&](int side, Eigen::VectorXd witness, double clearance) {
        ArrangementCell c;
        c.plane_signs.resize(p + 1);
        c.plane_signs.head(p) = cell.plane_signs;
        c.plane_signs(p) = side;
        c.witness = std::move(witness);
        c.margin = clearance;
        next.push_back(std::move(c));
      };

      if (std::abs(dist) >= margin) {
        // The witness itself certifies one side; probe only the other.
        const int home = sign_of(dist);
        const MarginPoint other = try_side(-home);
        if (!other.solved) throw SolverFailure("margin solve failed while splitting a cell");
        emit(home, cell.witness, std::min(cell.margin, std::abs(dist)));
        if (other.margin >= margin) emit(-home, other.point, other.margin);
      } else {
        // Witness sits in the tolerance band of the new plane; both sides
        // need a fresh interior point.
        const MarginPoint plus = try_side(+1);
        const MarginPoint minus = try_side(-1);
        if (!plus.solved || !minus.solved) {
          throw SolverFailure("margin solve failed while splitting a cell");
        }
        const bool plus_ok = plus.margin >= margin;
        const bool minus_ok = minus.margin >= margin;
        if (!plus_ok && !minus_ok) {
          throw DegenerateArrangement(
              "cannot separate a cell from plane " + std::to_string(p) +
              " at margin " + std::to_string(margin) +
              "; hyperplanes may be nearly coincident");
        }
        if (plus_ok) emit(+1, plus.point, plus.margin);
        if (minus_ok) emit(-1, minus.point, minus.margin);
      }
    }
    cells = std::move(next);
  }

  return cells;
}

}  // namespace gbs

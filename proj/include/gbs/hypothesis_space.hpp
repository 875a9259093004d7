#pragma once

#include <Eigen/Dense>

#include <iosfwd>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace gbs {

/// Responses live in {-1, +1}; reals are thresholded with sign(0) = +1.
using SignMatrix = Eigen::MatrixXi;
using SignVector = Eigen::VectorXi;

inline int sign_of(double v) { return v >= 0.0 ? +1 : -1; }

// ---------------------------------------------------------------------------
// Hypothesis families. A family knows how to label an arbitrary query point,
// which is what witness validation, pooling and the interactive oracle need.
// ---------------------------------------------------------------------------

/// Abstract space given by an explicit sign matrix; queries are cell ids.
struct ExplicitFamily {};

/// h_i(x) = sign(x - i/(count+1)) on [0,1], i = 1..count.
struct ThresholdFamily {
  int count = 0;
};

/// h_i(x) = +1 on [a_i, b_i), -1 elsewhere, on the domain [0,1).
struct IntervalFamily {
  std::vector<std::pair<double, double>> bounds;
};

/// h_i(x) = sign(normals.row(i).dot(x) + offsets(i)), unit normals.
/// The box bounds the query domain: a large box stands in for all of R^d,
/// a [-1,1]^d box restricts queries to the cube.
struct HalfspaceFamily {
  Eigen::MatrixXd normals;  // one row per hypothesis
  Eigen::VectorXd offsets;
  Eigen::VectorXd box_lo;
  Eigen::VectorXd box_hi;
};

/// +1 on the half-open box [lo.row(i), hi.row(i)), -1 elsewhere, on [0,1)^d.
/// When with_complements is set, negated twins follow the rectangle rows.
struct RectangleFamily {
  Eigen::MatrixXd lo;
  Eigen::MatrixXd hi;
  bool with_complements = false;
};

using BaseFamily = std::variant<ExplicitFamily, ThresholdFamily, IntervalFamily,
                                HalfspaceFamily, RectangleFamily>;

/// A base family observed only through a finite pool of query points.
struct PooledFamily {
  BaseFamily base;
  Eigen::MatrixXd points;  // one row per pool point
};

using Family = std::variant<ExplicitFamily, ThresholdFamily, IntervalFamily,
                            HalfspaceFamily, RectangleFamily, PooledFamily>;

/// Labels of every hypothesis at the point x. Throws DomainError for
/// families that cannot evaluate free points (explicit matrices).
SignVector evaluate_at(const Family& family, const Eigen::VectorXd& x);

int family_hypothesis_count(const Family& family);
std::string family_name(const Family& family);

// ---------------------------------------------------------------------------
// The induced partition.
// ---------------------------------------------------------------------------

/// A finite hypothesis space over the partition of its query space into
/// cells on which every hypothesis is constant. `responses` is the N x M
/// sign table h(A); rows are pairwise distinct and so are columns (cells
/// with identical columns are the same equivalence class and get merged).
/// Immutable once built; safe to share across threads.
struct HypothesisSpace {
  SignMatrix responses;
  std::vector<Eigen::VectorXd> witnesses;  // one query point per cell
  std::vector<std::pair<int, int>> complement_pairs;  // row_i == -row_j
  Family family;
  std::vector<int> source_columns;  // pre-merge column -> cell index

  int hypothesis_count() const { return static_cast<int>(responses.rows()); }
  int cell_count() const { return static_cast<int>(responses.cols()); }
};

struct HalfspaceParams {
  Eigen::MatrixXd normals;  // one unit row per hypothesis
  Eigen::VectorXd offsets;
  Eigen::VectorXd box_lo;   // empty: defaults to [-box_radius, box_radius]^d
  Eigen::VectorXd box_hi;
  double box_radius = 1e3;
  double margin = 1e-7;     // required clearance for cell witnesses
};

HypothesisSpace from_matrix(const SignMatrix& raw);
HypothesisSpace build_thresholds(int count);
HypothesisSpace build_intervals(const std::vector<std::pair<double, double>>& bounds);
HypothesisSpace build_halfspaces(const HalfspaceParams& params);
HypothesisSpace build_rectangles(const Eigen::MatrixXd& lo, const Eigen::MatrixXd& hi,
                                 bool include_complements = false);

/// Restriction of the space to a finite pool of query points (rows of
/// `points`). Throws DuplicateHypothesis when the pool no longer separates
/// two hypotheses.
HypothesisSpace restrict_to_pool(const HypothesisSpace& space,
                                 const Eigen::MatrixXd& points);
/// Pool given as cell ids (the only form abstract spaces support).
HypothesisSpace restrict_to_pool(const HypothesisSpace& space,
                                 const std::vector<int>& cell_ids);

// ---------------------------------------------------------------------------
// Plain-text serialization: "N M" header then N rows of -1/+1, with an
// optional witness sidecar holding one row of reals per cell.
// ---------------------------------------------------------------------------

SignMatrix read_sign_matrix(std::istream& in);
SignMatrix read_sign_matrix_file(const std::string& path);
void write_sign_matrix(std::ostream& out, const SignMatrix& m);
void write_witnesses(std::ostream& out, const HypothesisSpace& space);
void save_space(const HypothesisSpace& space, const std::string& matrix_path,
                const std::string& witness_path);

}  // namespace gbs

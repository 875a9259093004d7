#include "gbs/linprog.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace gbs {
namespace {

constexpr double kCostTol = 1e-9;
constexpr double kPivotTol = 1e-11;

// Tableau rows 0..m-1 hold B^{-1}[A | b]; row m holds reduced costs
// z_j - c_j and, in the rhs slot, the current objective value.
struct Tableau {
  Eigen::MatrixXd t;
  std::vector<int> basis;  // basic variable per row
  int m = 0;
  int n = 0;  // columns excluding rhs

  double& rhs(int i) { return t(i, n); }

  void pivot(int row, int col) {
    t.row(row) /= t(row, col);
    for (int i = 0; i <= m; ++i) {
      if (i == row) continue;
      const double f = t(i, col);
      if (f != 0.0) t.row(i) -= f * t.row(row);
    }
    basis[row] = col;
  }
};

enum class IterResult { Optimal, Unbounded, IterationLimit };

// Bland's rule: entering = lowest index with positive reduced cost,
// leaving = lowest basic index among minimum-ratio rows.
IterResult iterate(Tableau& tab, int limit, int allowed_cols) {
  for (int iter = 0; iter < limit; ++iter) {
    int enter = -1;
    for (int j = 0; j < allowed_cols; ++j) {
      if (tab.t(tab.m, j) > kCostTol) {
        enter = j;
        break;
      }
    }
    if (enter < 0) return IterResult::Optimal;

    int leave = -1;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (int i = 0; i < tab.m; ++i) {
      const double a = tab.t(i, enter);
      if (a > kPivotTol) {
        const double ratio = tab.rhs(i) / a;
        if (ratio < best_ratio - 1e-12 ||
            (ratio < best_ratio + 1e-12 &&
             (leave < 0 || tab.basis[i] < tab.basis[leave]))) {
          best_ratio = ratio;
          leave = i;
        }
      }
    }
    if (leave < 0) return IterResult::Unbounded;
    tab.pivot(leave, enter);
  }
  return IterResult::IterationLimit;
}

}  // namespace

LpSolution solve_lp(const LpProblem& problem, int max_iterations) {
  const int n = static_cast<int>(problem.c.size());
  const int m_ub = static_cast<int>(problem.b_ub.size());
  const int m_eq = static_cast<int>(problem.b_eq.size());
  const int m = m_ub + m_eq;
  if (max_iterations <= 0) max_iterations = 2000 + 200 * (m + n);

  LpSolution sol;

  // Column layout: [structural n | slacks m_ub | artificials].
  // Rows are normalized to nonnegative rhs first; negated <= rows get a
  // -1 slack and need an artificial, as do all equality rows.
  std::vector<int> art_rows;
  for (int i = 0; i < m_ub; ++i) {
    if (problem.b_ub(i) < 0) art_rows.push_back(i);
  }
  for (int i = 0; i < m_eq; ++i) art_rows.push_back(m_ub + i);
  const int n_art = static_cast<int>(art_rows.size());
  const int cols = n + m_ub + n_art;

  Tableau tab;
  tab.m = m;
  tab.n = cols;
  tab.t.setZero(m + 1, cols + 1);
  tab.basis.assign(m, -1);

  for (int i = 0; i < m_ub; ++i) {
    const double s = problem.b_ub(i) < 0 ? -1.0 : 1.0;
    tab.t.block(i, 0, 1, n) = s * problem.a_ub.row(i);
    tab.t(i, n + i) = s;  // slack
    tab.rhs(i) = s * problem.b_ub(i);
  }
  for (int i = 0; i < m_eq; ++i) {
    const int r = m_ub + i;
    const double s = problem.b_eq(i) < 0 ? -1.0 : 1.0;
    tab.t.block(r, 0, 1, n) = s * problem.a_eq.row(i);
    tab.rhs(r) = s * problem.b_eq(i);
  }

  // Initial basis: slacks where possible, artificials elsewhere.
  for (int i = 0; i < m_ub; ++i) {
    if (problem.b_ub(i) >= 0) tab.basis[i] = n + i;
  }
  for (int k = 0; k < n_art; ++k) {
    const int r = art_rows[k];
    tab.t(r, n + m_ub + k) = 1.0;
    tab.basis[r] = n + m_ub + k;
  }

  if (n_art > 0) {
    // Phase 1: minimize the sum of artificials.
    for (int r : art_rows) tab.t.row(m) += tab.t.row(r);
    for (int k = 0; k < n_art; ++k) tab.t(m, n + m_ub + k) = 0.0;

    const IterResult r1 = iterate(tab, max_iterations, cols);
    if (r1 == IterResult::IterationLimit) {
      sol.status = LpStatus::IterationLimit;
      return sol;
    }
    if (tab.rhs(m) > 1e-7) {
      sol.status = LpStatus::Infeasible;
      return sol;
    }
    // Drive any artificial still basic (at zero) out of the basis.
    for (int i = 0; i < m; ++i) {
      if (tab.basis[i] < n + m_ub) continue;
      int col = -1;
      for (int j = 0; j < n + m_ub; ++j) {
        if (std::abs(tab.t(i, j)) > kPivotTol) {
          col = j;
          break;
        }
      }
      if (col >= 0) tab.pivot(i, col);
      // else: redundant row; leaving the artificial basic at zero is
      // harmless because artificial columns are frozen below.
    }
    tab.t.middleCols(n + m_ub, n_art).setZero();
  }

  // Phase 2 objective row: z_j - c_j for the current basis.
  tab.t.row(m).setZero();
  tab.t.block(m, 0, 1, n) = -problem.c.transpose();
  for (int i = 0; i < m; ++i) {
    const int b = tab.basis[i];
    if (b < n && problem.c(b) != 0.0) tab.t.row(m) += problem.c(b) * tab.t.row(i);
  }

  const IterResult r2 = iterate(tab, max_iterations, n + m_ub);
  if (r2 == IterResult::Unbounded) {
    sol.status = LpStatus::Unbounded;
    return sol;
  }
  if (r2 == IterResult::IterationLimit) {
    sol.status = LpStatus::IterationLimit;
    return sol;
  }

  sol.status = LpStatus::Optimal;
  sol.x.setZero(n);
  for (int i = 0; i < m; ++i) {
    if (tab.basis[i] < n) sol.x(tab.basis[i]) = tab.rhs(i);
  }
  sol.objective = problem.c.dot(sol.x);
  return sol;
}

MarginPoint max_margin_point(const Eigen::MatrixXd& normals,
                             const Eigen::VectorXd& offsets,
                             const Eigen::VectorXi& signs,
                             const Eigen::VectorXd& lo,
                             const Eigen::VectorXd& hi) {
  const int k = static_cast<int>(normals.rows());
  const int d = static_cast<int>(normals.cols());

  // Variables: x' = x - lo (d of them), then u = margin + shift, all >= 0.
  // The shift makes u >= 0 reachable for every cell inside the box.
  double shift = 1.0;
  for (int i = 0; i < k; ++i) {
    double reach = std::abs(offsets(i));
    for (int j = 0; j < d; ++j) {
      reach += std::abs(normals(i, j)) * std::max(std::abs(lo(j)), std::abs(hi(j)));
    }
    shift = std::max(shift, 1.0 + reach);
  }

  LpProblem lp;
  lp.c.setZero(d + 1);
  lp.c(d) = -1.0;  // maximize u
  lp.a_ub.setZero(k + d, d + 1);
  lp.b_ub.setZero(k + d);
  for (int i = 0; i < k; ++i) {
    const double s = static_cast<double>(signs(i));
    lp.a_ub.block(i, 0, 1, d) = -s * normals.row(i);
    lp.a_ub(i, d) = 1.0;
    lp.b_ub(i) = s * (normals.row(i).dot(lo) + offsets(i)) + shift;
  }
  for (int j = 0; j < d; ++j) {
    lp.a_ub(k + j, j) = 1.0;
    lp.b_ub(k + j) = hi(j) - lo(j);
  }
  lp.a_eq.resize(0, d + 1);
  lp.b_eq.resize(0);

  MarginPoint out;
  const LpSolution sol = solve_lp(lp);
  if (sol.status != LpStatus::Optimal) return out;
  out.solved = true;
  out.point = lo + sol.x.head(d);
  out.margin = sol.x(d) - shift;
  return out;
}

}  // namespace gbs

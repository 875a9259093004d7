#include "gbs/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "gbs/errors.hpp"
#include "gbs/linprog.hpp"

namespace gbs {

namespace {

// partner[i] = j when (i, j) is a complement pair, else -1.
std::vector<int> complement_partners(const HypothesisSpace& space) {
  std::vector<int> partner(space.hypothesis_count(), -1);
  for (const auto& [i, j] : space.complement_pairs) {
    partner[i] = j;
    partner[j] = i;
  }
  return partner;
}

int degree_between(const HypothesisSpace& space, const std::vector<int>& partner,
                   int a, int b) {
  int count = 0;
  for (int i = 0; i < space.hypothesis_count(); ++i) {
    if (space.responses(i, a) == space.responses(i, b)) continue;
    // A flipping complement pair contributes one, not two.
    if (partner[i] >= 0 && partner[i] < i) continue;
    ++count;
  }
  return count;
}

bool connected_under(const Eigen::MatrixXi& degree, int k) {
  const int m = static_cast<int>(degree.rows());
  std::vector<char> seen(m, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (int u = 0; u < m; ++u) {
      if (!seen[u] && u != v && degree(v, u) <= k) {
        seen[u] = 1;
        ++reached;
        stack.push_back(u);
      }
    }
  }
  return reached == m;
}

}  // namespace

int neighbor_degree(const HypothesisSpace& space, int a, int b) {
  if (a < 0 || b < 0 || a >= space.cell_count() || b >= space.cell_count()) {
    throw DomainError("cell index out of range");
  }
  if (a == b) return 0;
  return degree_between(space, complement_partners(space), a, b);
}

NeighborGraph build_neighbor_graph(const HypothesisSpace& space) {
  const int m = space.cell_count();
  const auto partner = complement_partners(space);
  NeighborGraph graph;
  graph.degree.setZero(m, m);
  for (int a = 0; a < m; ++a) {
    for (int b = a + 1; b < m; ++b) {
      const int d = degree_between(space, partner, a, b);
      graph.degree(a, b) = d;
      graph.degree(b, a) = d;
    }
  }
  return graph;
}

bool is_k_neighborly(const NeighborGraph& graph, int k) {
  if (k < 1) throw DomainError("neighborliness order k must be >= 1");
  return connected_under(graph.degree, k);
}

bool is_k_neighborly(const HypothesisSpace& space, int k) {
  return is_k_neighborly(build_neighbor_graph(space), k);
}

int minimal_k(const NeighborGraph& graph) {
  if (graph.cell_count() <= 1) return 1;
  int lo = 1;
  int hi = graph.degree.maxCoeff();  // complete graph; always connected
  while (lo < hi) {
    const int mid = lo + (hi - lo) / 2;
    if (connected_under(graph.degree, mid)) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return std::max(lo, 1);
}

int minimal_k(const HypothesisSpace& space) {
  return minimal_k(build_neighbor_graph(space));
}

CoherenceCertificate coherence(const HypothesisSpace& space, double tolerance) {
  if (tolerance <= 0) throw DomainError("tolerance must be positive");
  const int n = space.hypothesis_count();
  const int m = space.cell_count();
  const Eigen::MatrixXd h = space.responses.cast<double>();

  // Variables: the cell distribution (m entries) then the epigraph scalar t.
  LpProblem lp;
  lp.c.setZero(m + 1);
  lp.c(m) = 1.0;
  lp.a_ub.setZero(2 * n, m + 1);
  lp.b_ub.setZero(2 * n);
  lp.a_ub.block(0, 0, n, m) = h;
  lp.a_ub.block(n, 0, n, m) = -h;
  lp.a_ub.col(m).setConstant(-1.0);
  lp.a_eq.setOnes(1, m + 1);
  lp.a_eq(0, m) = 0.0;
  lp.b_eq = Eigen::VectorXd::Ones(1);

  const LpSolution sol = solve_lp(lp);
  if (sol.status != LpStatus::Optimal) {
    throw SolverFailure("coherence LP did not reach optimality");
  }

  Eigen::VectorXd p = sol.x.head(m);
  const double neg = std::max(0.0, -p.minCoeff());
  p = p.cwiseMax(0.0);
  const double total = p.sum();
  const double sum_defect = std::abs(total - 1.0);
  if (total > 0) p /= total;

  const Eigen::VectorXd moments = h * p;
  int worst = 0;
  const double value = moments.cwiseAbs().maxCoeff(&worst);

  CoherenceCertificate cert;
  cert.c_star = value;
  cert.distribution = std::move(p);
  cert.worst_hypothesis = worst;
  cert.residual = std::abs(value - sol.objective) + neg + sum_defect;
  if (cert.residual > tolerance) {
    throw SolverFailure("coherence certificate residual exceeds tolerance");
  }
  return cert;
}

double coherence_grid(const HypothesisSpace& space, int resolution) {
  if (resolution < 1) throw DomainError("grid resolution must be >= 1");
  const int n = space.hypothesis_count();
  const int m = space.cell_count();
  const Eigen::MatrixXd h = space.responses.cast<double>() / resolution;

  double best = 1.0;
  Eigen::VectorXd moments = Eigen::VectorXd::Zero(n);

  // Walk all compositions of `resolution` over the m cells, keeping the
  // running moment sums; the last coordinate absorbs the remainder.
  auto recurse = [&](auto&& self, int cell, int remaining) -> void {
    if (cell == m - 1) {
      double worst = 0.0;
      for (int i = 0; i < n; ++i) {
        worst = std::max(worst, std::abs(moments(i) + remaining * h(i, cell)));
      }
      best = std::min(best, worst);
      return;
    }
    for (int units = 0; units <= remaining; ++units) {
      self(self, cell + 1, remaining - units);
      moments += h.col(cell);
    }
    moments -= (remaining + 1) * h.col(cell);
  };
  recurse(recurse, 0, resolution);
  return best;
}

double gbs_rate(double c_star, int k) {
  if (!(c_star >= 0.0 && c_star < 1.0)) throw DomainError("c_star must lie in [0, 1)");
  if (k < 1) throw DomainError("k must be >= 1");
  return std::max((1.0 + c_star) / 2.0, (k + 1.0) / (k + 2.0));
}

int gbs_query_bound(int hypothesis_count, double lambda) {
  if (hypothesis_count < 2) throw DomainError("query bound needs >= 2 hypotheses");
  if (!(lambda > 0.0 && lambda < 1.0)) throw DomainError("lambda must lie in (0, 1)");
  const double q = std::log(static_cast<double>(hypothesis_count)) / std::log(1.0 / lambda);
  return static_cast<int>(std::ceil(q - 1e-9));
}

double epsilon0(double alpha, double beta) {
  if (!(0.0 <= alpha && alpha <= beta && beta < 0.5)) {
    throw DomainError("need 0 <= alpha <= beta < 1/2");
  }
  const double first = beta * (1.0 - alpha) / (1.0 - beta);
  const double second = alpha == 0.0 ? 0.0 : alpha * (1.0 - beta) / beta;
  return std::max(0.0, 1.0 - first - second);
}

double sgbs_rate(double c_star, double alpha, double beta) {
  if (!(c_star >= 0.0 && c_star < 1.0)) throw DomainError("c_star must lie in [0, 1)");
  return std::min((1.0 - c_star) / 2.0, 0.25) * epsilon0(alpha, beta);
}

int ngbs_repetitions(int n0, double delta, double alpha) {
  if (n0 < 1) throw DomainError("n0 must be >= 1");
  if (!(delta > 0.0 && delta < 1.0)) throw DomainError("delta must lie in (0, 1)");
  if (!(alpha >= 0.0 && alpha < 0.5)) throw DomainError("alpha must lie in [0, 1/2)");
  const double gap = 0.5 - alpha;
  const double raw = std::log(static_cast<double>(n0) / delta) / (gap * gap);
  int r = std::max(1, static_cast<int>(std::ceil(raw - 1e-12)));
  if (r % 2 == 0) ++r;  // odd votes cannot tie
  return r;
}

RateConstants rate_constants(const HypothesisSpace& space, double alpha, double beta) {
  RateConstants rc;
  rc.k = minimal_k(space);
  rc.c_star = coherence(space).c_star;
  rc.lambda_gbs = gbs_rate(rc.c_star, rc.k);
  rc.epsilon0 = epsilon0(alpha, beta);
  rc.lambda_sgbs = sgbs_rate(rc.c_star, alpha, beta);
  return rc;
}

}  // namespace gbs

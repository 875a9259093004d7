#pragma once

#include <Eigen/Dense>

#include "gbs/hypothesis_space.hpp"

namespace gbs {

/// Pairwise cell distances: the number of hypotheses whose responses differ
/// between two cells, counting a complement pair once (its two members
/// always flip together).
struct NeighborGraph {
  Eigen::MatrixXi degree;  // M x M, symmetric, zero diagonal

  int cell_count() const { return static_cast<int>(degree.rows()); }
};

int neighbor_degree(const HypothesisSpace& space, int a, int b);
NeighborGraph build_neighbor_graph(const HypothesisSpace& space);

/// True iff the graph whose edges join cells of degree <= k is connected.
bool is_k_neighborly(const NeighborGraph& graph, int k);
bool is_k_neighborly(const HypothesisSpace& space, int k);

/// Smallest k for which the space is k-neighborly (connectivity is monotone
/// in k, and the max-degree graph is complete, so this always exists).
int minimal_k(const NeighborGraph& graph);
int minimal_k(const HypothesisSpace& space);

/// Solution of min over cell distributions P of max_h |sum_A h(A) P(A)|,
/// with the optimizing distribution and the hypothesis attaining the max.
/// `residual` bounds the defect between c_star, the distribution, and the
/// solver's objective; the certificate is self-checking:
/// max_h |responses * distribution| == c_star up to residual.
struct CoherenceCertificate {
  double c_star = 0.0;
  Eigen::VectorXd distribution;
  int worst_hypothesis = 0;
  double residual = 0.0;
};

/// Epigraph linear program: minimize t subject to -t <= sum_A h(A)P(A) <= t
/// over the probability simplex. Throws SolverFailure if the solve does not
/// reach the requested tolerance (the feasible set is a nonempty compact
/// polytope, so this indicates a solver breakdown).
CoherenceCertificate coherence(const HypothesisSpace& space, double tolerance = 1e-9);

/// Exhaustive minimax over the simplex grid whose coordinates are multiples
/// of 1/resolution. Cost grows as C(resolution + M - 1, M - 1); intended as
/// an independent cross-check on small spaces.
double coherence_grid(const HypothesisSpace& space, int resolution);

/// Per-query reduction factor max{(1+c*)/2, (k+1)/(k+2)} of the splitting
/// search; always in [1/2, 1).
double gbs_rate(double c_star, int k);

/// ceil(log N / log(1/lambda)) queries suffice.
int gbs_query_bound(int hypothesis_count, double lambda);

/// 1 - beta(1-alpha)/(1-beta) - alpha(1-beta)/beta; the per-step posterior
/// contraction margin. Positive iff beta > alpha.
double epsilon0(double alpha, double beta);

/// Exponential error constant min{(1-c*)/2, 1/4} * epsilon0 of the modified
/// soft-decision search.
double sgbs_rate(double c_star, double alpha, double beta);

/// Repetitions per query so that all n0 majority votes are simultaneously
/// correct with probability >= 1 - delta; rounded up to odd so votes cannot
/// tie.
int ngbs_repetitions(int n0, double delta, double alpha);

struct RateConstants {
  int k = 1;
  double c_star = 0.0;
  double lambda_gbs = 0.0;
  double epsilon0 = 0.0;
  double lambda_sgbs = 0.0;
};

RateConstants rate_constants(const HypothesisSpace& space, double alpha, double beta);

}  // namespace gbs

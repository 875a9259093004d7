#pragma once

#include <Eigen/Dense>

#include <vector>

#include "gbs/hypothesis_space.hpp"
#include "gbs/oracle.hpp"
#include "gbs/rng.hpp"
#include "gbs/search.hpp"

namespace gbs {

/// Validates and normalizes a sampling measure over cells.
Eigen::VectorXd sampling_measure(Eigen::VectorXd weights);
Eigen::VectorXd uniform_measure(int cells);

/// Cells on which two hypotheses disagree, with the sampling measure
/// restricted (and renormalized) there. `degenerate` marks a nonempty
/// region carrying zero measure; the restriction is then uniform over the
/// region's cells.
struct DisagreementRegion {
  std::vector<int> cells;
  Eigen::VectorXd restricted;  // full-length distribution, zero off-region
  double mass = 0.0;
  bool degenerate = false;
};

DisagreementRegion disagreement_region(const HypothesisSpace& space, int h1, int h2,
                                       const Eigen::VectorXd& p_x);

struct RiskEstimate {
  int hypothesis = -1;
  double empirical_error = 0.0;
  int samples = 0;
};

struct ErmResult {
  int hypothesis = -1;
  RiskEstimate risk;
};

/// Draw `samples` cells i.i.d. from p_x, label each once, return a
/// hypothesis with the fewest disagreements (ties uniform).
ErmResult run_erm(const HypothesisSpace& space, Oracle& oracle, const Eigen::VectorXd& p_x,
                  int samples, Rng& rng, SearchTranscript* log = nullptr);

/// Head-to-head comparison on the disagreement region: `samples` draws from
/// the restricted measure, fewer errors wins (tie uniform). An empty region
/// means identical hypotheses; h1 is returned without spending queries.
int runoff(const HypothesisSpace& space, Oracle& oracle, int h1, int h2,
           const Eigen::VectorXd& p_x, int samples, Rng& rng,
           SearchTranscript* log = nullptr);

struct AgnosticResult {
  int hypothesis = -1;
  int h_search = -1;  // modified soft-decision pick
  int h_erm = -1;
  SearchTranscript transcript;
};

/// Three-way budget split: modified SGBS on floor(n/3) queries, ERM on
/// floor(n/3), and a runoff between the two picks on the remainder, drawn
/// from the disagreement region. Spends exactly `budget` queries.
AgnosticResult run_agnostic(const HypothesisSpace& space, Oracle& oracle,
                            const Eigen::VectorXd& p_x, int budget, double beta, Rng rng,
                            const NeighborGraph* graph = nullptr);

/// Probability of disagreeing with the observed (noisy) label under p_x:
/// alpha_A where h matches the truth labeling, 1 - alpha_A where it differs.
double true_risk(const HypothesisSpace& space, int h, const Eigen::VectorXd& p_x,
                 const SignVector& truth_labels, const NoiseSpec& noise);

/// p_x-mass of the cells where h differs from the truth labeling (the
/// noiseless-target risk).
double disagreement_mass(const HypothesisSpace& space, int h, const Eigen::VectorXd& p_x,
                         const SignVector& truth_labels);

}  // namespace gbs

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gbs/geometry.hpp"
#include "gbs/hypothesis_space.hpp"
#include "gbs/oracle.hpp"
#include "gbs/rng.hpp"

namespace gbs {

enum class TiePolicy { UniformRandom, LowestIndex };

struct TranscriptStep {
  int step = 0;
  int cell = 0;
  int response = 0;
  double metric = 0.0;           // surviving-set size, or max posterior weight
  std::optional<double> cn;      // (1 - p(h*))/p(h*) when the truth is known
  std::uint64_t rng_draws = 0;   // algorithm-stream draws consumed so far
  std::string phase;             // set by the agnostic pipeline
};

struct SearchTranscript {
  std::vector<TranscriptStep> steps;
  std::vector<std::pair<int, int>> checkpoints;  // (step count, selected hypothesis)
  std::vector<std::string> notes;
  int outcome = -1;
  std::int64_t queries_used = 0;
};

/// One row per step: n,cell,response,metric,cn (cn blank when unknown).
/// `with_phase` appends the agnostic phase column.
void write_transcript_csv(std::ostream& out, const SearchTranscript& transcript,
                          bool with_phase = false);

struct SearchResult {
  SearchTranscript transcript;
  int hypothesis = -1;
  Eigen::VectorXd posterior;  // filled by the soft-decision runs
};

/// Hypotheses still consistent with every response so far.
struct VersionSpace {
  std::vector<int> alive;
};

/// Splitting search: query a cell minimizing |sum over surviving hypotheses
/// of h(A)|, eliminate the disagreeing ones, stop at one survivor. Needs a
/// noiseless oracle with its truth in the space; otherwise the version
/// space can empty out, which raises EmptyVersionSpace.
SearchResult run_gbs(const HypothesisSpace& space, Oracle& oracle,
                     TiePolicy ties = TiePolicy::UniformRandom, Rng rng = Rng{0});

/// Splitting search with each query repeated `repetitions` times (odd) and
/// majority-voted. A wrong vote is not retried; it surfaces as
/// EmptyVersionSpace if it empties the version space.
SearchResult run_ngbs(const HypothesisSpace& space, Oracle& oracle, int repetitions,
                      TiePolicy ties = TiePolicy::UniformRandom, Rng rng = Rng{0});

/// W(p, A) = sum_h p(h) h(A).
double weighted_prediction(const Eigen::VectorXd& posterior,
                           const HypothesisSpace& space, int cell);
/// W(p, .) over all cells at once.
Eigen::VectorXd weighted_predictions(const Eigen::VectorXd& posterior,
                                     const HypothesisSpace& space);

/// Multiplicative update: hypotheses agreeing with the label keep factor
/// 1-beta, disagreeing ones beta, then renormalize. Every weight stays
/// strictly positive.
Eigen::VectorXd bayes_update(const Eigen::VectorXd& posterior, const HypothesisSpace& space,
                             int cell, int label, double beta);

/// A cell minimizing |W(p, .)|; ties broken uniformly at random.
int select_query_sgbs(const Eigen::VectorXd& posterior, const HypothesisSpace& space,
                      Rng& rng);

/// Randomized variant: with b = min |W|, a 1-neighbor pair with W > b on one
/// side and W < -b on the other is queried on either side with probability
/// 1/2; otherwise falls back to the plain minimizer. Residual ties uniform.
int select_query_msgbs(const Eigen::VectorXd& posterior, const HypothesisSpace& space,
                       const NeighborGraph& graph, Rng& rng);

struct SgbsOptions {
  double beta = 0.25;
  int budget = 0;
  bool modified = false;
  std::vector<int> checkpoints;  // ascending step counts to snapshot
  TiePolicy ties = TiePolicy::UniformRandom;
};

/// Runs exactly `budget` query/update steps and reports the max-weight
/// hypothesis (ties uniform). When the oracle advertises a noise bound,
/// beta must not undercut it.
SearchResult run_sgbs(const HypothesisSpace& space, Oracle& oracle,
                      const SgbsOptions& options, Rng rng,
                      const NeighborGraph* graph = nullptr);

/// (1 - p(truth)) / p(truth): mass on wrong hypotheses relative to right.
double cn_statistic(const Eigen::VectorXd& posterior, int truth);

enum class QueryRule { Sgbs, Msgbs };

/// Exact E[C_{n+1}/C_n | p] under the given query rule: enumerates the
/// rule's randomized cell choices and both label outcomes. Worst-case noise
/// `alpha` is assumed on every cell; the NoiseSpec overload uses per-cell
/// levels instead.
double expected_cn_ratio(const Eigen::VectorXd& posterior, const HypothesisSpace& space,
                         int truth, QueryRule rule, double alpha, double beta,
                         const NeighborGraph* graph = nullptr);
double expected_cn_ratio(const Eigen::VectorXd& posterior, const HypothesisSpace& space,
                         int truth, QueryRule rule, const NoiseSpec& noise, double beta,
                         const NeighborGraph* graph = nullptr);

}  // namespace gbs

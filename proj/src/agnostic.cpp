#include "gbs/agnostic.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gbs/errors.hpp"

namespace gbs {

namespace {

// Inverse-CDF draw from a distribution over cell indices.
int sample_cell(const Eigen::VectorXd& dist, Rng& rng) {
  double u = rng.next_double();
  int last = 0;
  for (int c = 0; c < dist.size(); ++c) {
    if (dist(c) <= 0.0) continue;
    last = c;
    u -= dist(c);
    if (u < 0) return c;
  }
  return last;
}

int pick_uniform(const std::vector<int>& candidates, Rng& rng) {
  if (candidates.size() == 1) return candidates.front();
  return candidates[rng.next_below(candidates.size())];
}

void log_step(SearchTranscript* log, int cell, int label, double metric, const char* phase) {
  if (!log) return;
  TranscriptStep rec;
  rec.step = static_cast<int>(log->steps.size());
  rec.cell = cell;
  rec.response = label;
  rec.metric = metric;
  rec.phase = phase;
  log->steps.push_back(std::move(rec));
}

}  // namespace

Eigen::VectorXd sampling_measure(Eigen::VectorXd weights) {
  if (weights.size() < 1) throw EmptyMatrix("sampling measure must be nonempty");
  if ((weights.array() < 0).any()) throw DomainError("sampling measure has negative mass");
  const double total = weights.sum();
  if (!(total > 0)) throw DomainError("sampling measure has zero total mass");
  return weights / total;
}

Eigen::VectorXd uniform_measure(int cells) {
  if (cells < 1) throw EmptyMatrix("sampling measure must be nonempty");
  return Eigen::VectorXd::Constant(cells, 1.0 / cells);
}

DisagreementRegion disagreement_region(const HypothesisSpace& space, int h1, int h2,
                                       const Eigen::VectorXd& p_x) {
  const int n = space.hypothesis_count();
  if (h1 < 0 || h2 < 0 || h1 >= n || h2 >= n) throw DomainError("hypothesis index out of range");
  if (p_x.size() != space.cell_count()) throw DomainError("measure size must match cell count");

  DisagreementRegion region;
  region.restricted = Eigen::VectorXd::Zero(space.cell_count());
  for (int c = 0; c < space.cell_count(); ++c) {
    if (space.responses(h1, c) != space.responses(h2, c)) {
      region.cells.push_back(c);
      region.mass += p_x(c);
      region.restricted(c) = p_x(c);
    }
  }
  if (region.cells.empty()) return region;
  if (region.mass > 0) {
    region.restricted /= region.mass;
  } else {
    region.degenerate = true;
    for (int c : region.cells) region.restricted(c) = 1.0 / region.cells.size();
  }
  return region;
}

ErmResult run_erm(const HypothesisSpace& space, Oracle& oracle, const Eigen::VectorXd& p_x,
                  int samples, Rng& rng, SearchTranscript* log) {
  if (samples < 1) throw DomainError("ERM needs at least one sample");
  if (p_x.size() != space.cell_count()) throw DomainError("measure size must match cell count");

  const int n = space.hypothesis_count();
  Eigen::VectorXi errors = Eigen::VectorXi::Zero(n);
  for (int s = 0; s < samples; ++s) {
    const int cell = sample_cell(p_x, rng);
    const int label = oracle.respond(cell);
    for (int i = 0; i < n; ++i) {
      if (space.responses(i, cell) != label) ++errors(i);
    }
    log_step(log, cell, label, static_cast<double>(errors.minCoeff()), "erm");
  }

  const int fewest = errors.minCoeff();
  std::vector<int> best;
  for (int i = 0; i < n; ++i) {
    if (errors(i) == fewest) best.push_back(i);
  }

  ErmResult result;
  result.hypothesis = pick_uniform(best, rng);
  result.risk = {result.hypothesis, static_cast<double>(fewest) / samples, samples};
  return result;
}

int runoff(const HypothesisSpace& space, Oracle& oracle, int h1, int h2,
           const Eigen::VectorXd& p_x, int samples, Rng& rng, SearchTranscript* log) {
  if (samples < 1) throw DomainError("runoff needs at least one sample");
  const DisagreementRegion region = disagreement_region(space, h1, h2, p_x);
  if (region.cells.empty()) return h1;
  if (region.degenerate && log) {
    log->notes.push_back("runoff: disagreement region carries zero measure; sampling uniformly");
  }

  int errors1 = 0, errors2 = 0;
  for (int s = 0; s < samples; ++s) {
    const int cell = sample_cell(region.restricted, rng);
    const int label = oracle.respond(cell);
    if (space.responses(h1, cell) != label) ++errors1;
    if (space.responses(h2, cell) != label) ++errors2;
    log_step(log, cell, label, static_cast<double>(errors1 - errors2), "runoff");
  }
  if (errors1 < errors2) return h1;
  if (errors2 < errors1) return h2;
  return rng.next_below(2) == 0 ? h1 : h2;
}

AgnosticResult run_agnostic(const HypothesisSpace& space, Oracle& oracle,
                            const Eigen::VectorXd& p_x, int budget, double beta, Rng rng,
                            const NeighborGraph* graph) {
  if (budget < 3) throw DomainError("agnostic pipeline needs a budget of at least 3");
  const std::int64_t tally0 = oracle.query_count();
  const int third = budget / 3;

  AgnosticResult result;

  SgbsOptions options;
  options.beta = beta;
  options.budget = third;
  options.modified = true;
  SearchResult search = run_sgbs(space, oracle, options, rng.child(0), graph);
  result.h_search = search.hypothesis;
  result.transcript = std::move(search.transcript);
  for (auto& step : result.transcript.steps) step.phase = "msgbs";

  Rng erm_rng = rng.child(1);
  const ErmResult erm = run_erm(space, oracle, p_x, third, erm_rng, &result.transcript);
  result.h_erm = erm.hypothesis;

  Rng runoff_rng = rng.child(2);
  const int remainder = budget - 2 * third;
  if (result.h_search == result.h_erm) {
    // Identical picks leave nothing to compare; the remaining draws stay on
    // the base measure so the budget is spent exactly as configured.
    result.hypothesis = result.h_search;
    for (int s = 0; s < remainder; ++s) {
      const int cell = sample_cell(p_x, runoff_rng);
      const int label = oracle.respond(cell);
      log_step(&result.transcript, cell, label, 0.0, "runoff");
    }
    result.transcript.notes.push_back("runoff: picks agree; remaining budget drawn from p_x");
  } else {
    result.hypothesis = runoff(space, oracle, result.h_search, result.h_erm, p_x, remainder,
                               runoff_rng, &result.transcript);
  }

  result.transcript.outcome = result.hypothesis;
  result.transcript.queries_used = oracle.query_count() - tally0;
  return result;
}

double true_risk(const HypothesisSpace& space, int h, const Eigen::VectorXd& p_x,
                 const SignVector& truth_labels, const NoiseSpec& noise) {
  if (h < 0 || h >= space.hypothesis_count()) throw DomainError("hypothesis index out of range");
  if (truth_labels.size() != space.cell_count() || p_x.size() != space.cell_count()) {
    throw DomainError("labels and measure must match the cell count");
  }
  double risk = 0.0;
  for (int c = 0; c < space.cell_count(); ++c) {
    const double a = noise.level(c);
    risk += p_x(c) * (space.responses(h, c) == truth_labels(c) ? a : 1.0 - a);
  }
  return risk;
}

double disagreement_mass(const HypothesisSpace& space, int h, const Eigen::VectorXd& p_x,
                         const SignVector& truth_labels) {
  return true_risk(space, h, p_x, truth_labels, NoiseSpec::noiseless());
}

}  // namespace gbs

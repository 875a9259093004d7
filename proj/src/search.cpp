#include "gbs/search.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "gbs/errors.hpp"

namespace gbs {

namespace {

constexpr double kTieSlack = 1e-12;

std::string csv_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

int pick(const std::vector<int>& candidates, TiePolicy ties, Rng& rng) {
  if (candidates.size() == 1 || ties == TiePolicy::LowestIndex) return candidates.front();
  return candidates[rng.next_below(candidates.size())];
}

int select_argmax(const Eigen::VectorXd& p, TiePolicy ties, Rng& rng) {
  const double top = p.maxCoeff();
  std::vector<int> best;
  for (int i = 0; i < p.size(); ++i) {
    if (p(i) >= top - kTieSlack) best.push_back(i);
  }
  return pick(best, ties, rng);
}

// Split-sum of the surviving hypotheses on every cell.
Eigen::VectorXi alive_sums(const HypothesisSpace& space, const std::vector<int>& alive) {
  Eigen::VectorXi sums = Eigen::VectorXi::Zero(space.cell_count());
  for (int i : alive) sums += space.responses.row(i).transpose();
  return sums;
}

struct EliminationLoop {
  const HypothesisSpace& space;
  Oracle& oracle;
  TiePolicy ties;
  Rng rng;
  int repetitions;  // 1: plain responses; odd R: majority votes

  SearchResult run() {
    SearchResult result;
    const std::int64_t tally0 = oracle.query_count();
    std::vector<int> alive(space.hypothesis_count());
    for (int i = 0; i < space.hypothesis_count(); ++i) alive[i] = i;

    int step = 0;
    while (alive.size() > 1) {
      const Eigen::VectorXi sums = alive_sums(space, alive);
      int best = sums.cwiseAbs().minCoeff();
      std::vector<int> minimizers;
      for (int c = 0; c < sums.size(); ++c) {
        if (std::abs(sums(c)) == best) minimizers.push_back(c);
      }
      const int cell = pick(minimizers, ties, rng);

      const int label = repetitions == 1
                            ? oracle.respond(cell)
                            : respond_majority(oracle, cell, repetitions).first;

      std::vector<int> kept;
      kept.reserve(alive.size());
      for (int i : alive) {
        if (space.responses(i, cell) == label) kept.push_back(i);
      }
      if (kept.empty()) {
        throw EmptyVersionSpace("all hypotheses eliminated at step " + std::to_string(step) +
                                "; the oracle is noisy or the truth is outside the space");
      }
      alive = std::move(kept);

      TranscriptStep rec;
      rec.step = step++;
      rec.cell = cell;
      rec.response = label;
      rec.metric = static_cast<double>(alive.size());
      rec.rng_draws = rng.draws();
      result.transcript.steps.push_back(std::move(rec));
    }

    result.hypothesis = alive.front();
    result.transcript.outcome = result.hypothesis;
    result.transcript.queries_used = oracle.query_count() - tally0;
    return result;
  }
};

struct CellChoice {
  int cell;
  double probability;
};

// Distribution of the next query under the plain or modified rule.
std::vector<CellChoice> query_distribution(const Eigen::VectorXd& posterior,
                                           const HypothesisSpace& space, QueryRule rule,
                                           const NeighborGraph* graph) {
  const Eigen::VectorXd w = weighted_predictions(posterior, space);
  const double b = w.cwiseAbs().minCoeff();

  if (rule == QueryRule::Msgbs) {
    std::vector<std::pair<int, int>> pairs;
    const int m = space.cell_count();
    for (int i = 0; i < m; ++i) {
      if (!(w(i) > b + kTieSlack)) continue;
      for (int j = 0; j < m; ++j) {
        if (!(w(j) < -b - kTieSlack)) continue;
        if (graph->degree(i, j) <= 1) pairs.emplace_back(i, j);
      }
    }
    if (!pairs.empty()) {
      std::vector<CellChoice> out;
      const double per_side = 1.0 / (2.0 * pairs.size());
      auto add = [&out](int cell, double prob) {
        for (auto& ch : out) {
          if (ch.cell == cell) {
            ch.probability += prob;
            return;
          }
        }
        out.push_back({cell, prob});
      };
      for (const auto& [i, j] : pairs) {
        add(i, per_side);
        add(j, per_side);
      }
      return out;
    }
  }

  std::vector<CellChoice> out;
  std::vector<int> ties;
  for (int c = 0; c < w.size(); ++c) {
    if (std::abs(w(c)) <= b + kTieSlack) ties.push_back(c);
  }
  for (int c : ties) out.push_back({c, 1.0 / ties.size()});
  return out;
}

int sample_choice(const std::vector<CellChoice>& dist, Rng& rng) {
  if (dist.size() == 1) return dist.front().cell;
  double u = rng.next_double();
  for (const auto& ch : dist) {
    u -= ch.probability;
    if (u < 0) return ch.cell;
  }
  return dist.back().cell;
}

// Conditional expectation over the label draw of the reciprocal update
// factor applied to p(truth), given the queried cell. norm_plus/norm_minus
// are the update normalizers under labels +1 and -1.
double expected_gamma(double delta_plus, int truth_label, double q, double beta) {
  const double norm_plus = (1.0 - delta_plus) * beta + delta_plus * (1.0 - beta);
  const double norm_minus = delta_plus * beta + (1.0 - delta_plus) * (1.0 - beta);
  if (truth_label > 0) {
    return (1.0 - q) * norm_plus / (1.0 - beta) + q * norm_minus / beta;
  }
  return (1.0 - q) * norm_minus / (1.0 - beta) + q * norm_plus / beta;
}

}  // namespace

void write_transcript_csv(std::ostream& out, const SearchTranscript& transcript,
                          bool with_phase) {
  out << "n,cell,response,metric,cn";
  if (with_phase) out << ",phase";
  out << '\n';
  for (const auto& s : transcript.steps) {
    out << s.step << ',' << s.cell << ',' << s.response << ',' << csv_double(s.metric) << ',';
    if (s.cn) out << csv_double(*s.cn);
    if (with_phase) out << ',' << s.phase;
    out << '\n';
  }
}

SearchResult run_gbs(const HypothesisSpace& space, Oracle& oracle, TiePolicy ties, Rng rng) {
  return EliminationLoop{space, oracle, ties, rng, 1}.run();
}

SearchResult run_ngbs(const HypothesisSpace& space, Oracle& oracle, int repetitions,
                      TiePolicy ties, Rng rng) {
  if (repetitions < 1 || repetitions % 2 == 0) {
    throw EvenRepetition("repetition count must be odd and >= 1");
  }
  return EliminationLoop{space, oracle, ties, rng, repetitions}.run();
}

double weighted_prediction(const Eigen::VectorXd& posterior, const HypothesisSpace& space,
                           int cell) {
  if (cell < 0 || cell >= space.cell_count()) throw DomainError("cell index out of range");
  return space.responses.col(cell).cast<double>().dot(posterior);
}

Eigen::VectorXd weighted_predictions(const Eigen::VectorXd& posterior,
                                     const HypothesisSpace& space) {
  return space.responses.cast<double>().transpose() * posterior;
}

Eigen::VectorXd bayes_update(const Eigen::VectorXd& posterior, const HypothesisSpace& space,
                             int cell, int label, double beta) {
  if (!(beta > 0.0 && beta < 0.5)) throw DomainError("beta must lie in (0, 1/2)");
  if (label != 1 && label != -1) throw DomainError("label must be -1 or +1");
  if (cell < 0 || cell >= space.cell_count()) throw DomainError("cell index out of range");

  Eigen::VectorXd updated(posterior.size());
  for (int i = 0; i < posterior.size(); ++i) {
    const bool agrees = space.responses(i, cell) == label;
    updated(i) = posterior(i) * (agrees ? 1.0 - beta : beta);
  }
  return updated / updated.sum();
}

int select_query_sgbs(const Eigen::VectorXd& posterior, const HypothesisSpace& space,
                      Rng& rng) {
  const auto dist = query_distribution(posterior, space, QueryRule::Sgbs, nullptr);
  return sample_choice(dist, rng);
}

int select_query_msgbs(const Eigen::VectorXd& posterior, const HypothesisSpace& space,
                       const NeighborGraph& graph, Rng& rng) {
  const auto dist = query_distribution(posterior, space, QueryRule::Msgbs, &graph);
  return sample_choice(dist, rng);
}

SearchResult run_sgbs(const HypothesisSpace& space, Oracle& oracle,
                      const SgbsOptions& options, Rng rng, const NeighborGraph* graph) {
  if (!(options.beta > 0.0 && options.beta < 0.5)) {
    throw DomainError("beta must lie in (0, 1/2)");
  }
  if (options.budget < 0) throw DomainError("budget must be >= 0");
  if (const auto alpha = oracle.noise_bound(); alpha && options.beta < *alpha) {
    throw DomainError("beta must be at least the oracle's noise bound");
  }

  NeighborGraph local;
  if (options.modified && graph == nullptr) {
    local = build_neighbor_graph(space);
    graph = &local;
  }

  const std::int64_t tally0 = oracle.query_count();
  const std::optional<int> truth = oracle.truth_index();
  const QueryRule rule = options.modified ? QueryRule::Msgbs : QueryRule::Sgbs;

  SearchResult result;
  Eigen::VectorXd p =
      Eigen::VectorXd::Constant(space.hypothesis_count(), 1.0 / space.hypothesis_count());

  auto checkpoint = options.checkpoints.begin();
  for (int step = 0; step < options.budget; ++step) {
    const auto dist = query_distribution(p, space, rule, graph);
    const int cell = sample_choice(dist, rng);
    const int label = oracle.respond(cell);
    p = bayes_update(p, space, cell, label, options.beta);

    TranscriptStep rec;
    rec.step = step;
    rec.cell = cell;
    rec.response = label;
    rec.metric = p.maxCoeff();
    if (truth) rec.cn = cn_statistic(p, *truth);
    rec.rng_draws = rng.draws();
    result.transcript.steps.push_back(std::move(rec));

    while (checkpoint != options.checkpoints.end() && *checkpoint == step + 1) {
      result.transcript.checkpoints.emplace_back(step + 1, select_argmax(p, options.ties, rng));
      ++checkpoint;
    }
  }

  result.hypothesis = select_argmax(p, options.ties, rng);
  result.posterior = std::move(p);
  result.transcript.outcome = result.hypothesis;
  result.transcript.queries_used = oracle.query_count() - tally0;
  return result;
}

double cn_statistic(const Eigen::VectorXd& posterior, int truth) {
  if (truth < 0 || truth >= posterior.size()) throw DomainError("truth index out of range");
  return (1.0 - posterior(truth)) / posterior(truth);
}

double expected_cn_ratio(const Eigen::VectorXd& posterior, const HypothesisSpace& space,
                         int truth, QueryRule rule, const NoiseSpec& noise, double beta,
                         const NeighborGraph* graph) {
  if (!(beta > 0.0 && beta < 0.5)) throw DomainError("beta must lie in (0, 1/2)");
  if (!(noise.alpha <= beta)) throw DomainError("need noise alpha <= beta");
  if (truth < 0 || truth >= space.hypothesis_count()) {
    throw DomainError("truth index out of range");
  }
  const double pt = posterior(truth);
  if (!(pt < 1.0)) throw DomainError("posterior is already a point mass on the truth");

  NeighborGraph local;
  if (rule == QueryRule::Msgbs && graph == nullptr) {
    local = build_neighbor_graph(space);
    graph = &local;
  }

  const Eigen::VectorXd w = weighted_predictions(posterior, space);
  double gamma = 0.0;
  for (const auto& [cell, prob] : query_distribution(posterior, space, rule, graph)) {
    const double delta_plus = 0.5 * (1.0 + w(cell));
    gamma += prob * expected_gamma(delta_plus, space.responses(truth, cell),
                                   noise.level(cell), beta);
  }
  return (gamma - pt) / (1.0 - pt);
}

double expected_cn_ratio(const Eigen::VectorXd& posterior, const HypothesisSpace& space,
                         int truth, QueryRule rule, double alpha, double beta,
                         const NeighborGraph* graph) {
  if (!(alpha >= 0.0 && alpha < 0.5)) throw DomainError("alpha must lie in [0, 1/2)");
  NoiseSpec worst = alpha == 0.0 ? NoiseSpec::noiseless() : NoiseSpec::constant(alpha);
  return expected_cn_ratio(posterior, space, truth, rule, worst, beta, graph);
}

}  // namespace gbs

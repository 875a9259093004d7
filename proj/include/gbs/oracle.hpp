#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <utility>

#include "gbs/hypothesis_space.hpp"
#include "gbs/rng.hpp"

namespace gbs {

/// Per-query flip probabilities, all strictly below 1/2. `alpha` is the
/// supremum over queries and is what the guarantees are stated against.
struct NoiseSpec {
  enum class Mode { Noiseless, Constant, PerCell };

  Mode mode = Mode::Noiseless;
  double alpha = 0.0;
  Eigen::VectorXd per_cell_levels;

  static NoiseSpec noiseless() { return {}; }
  static NoiseSpec constant(double alpha);
  static NoiseSpec per_cell(Eigen::VectorXd levels);

  double level(int cell) const {
    return mode == Mode::PerCell ? per_cell_levels(cell) : alpha;
  }
};

/// Query-response channel. Repeated queries draw fresh independent noise.
class Oracle {
 public:
  virtual ~Oracle() = default;

  /// Label for a query from the given cell; advances the query tally by one.
  virtual int respond(int cell) = 0;

  virtual std::int64_t query_count() const = 0;

  /// Index of the hidden hypothesis when it lies in the space and is known.
  virtual std::optional<int> truth_index() const { return std::nullopt; }

  /// Known noise bound, when there is one.
  virtual std::optional<double> noise_bound() const { return std::nullopt; }
};

/// Hidden truth plus independent label noise from a seeded stream. The
/// truth is either a hypothesis of the space or an arbitrary per-cell
/// labeling held outside it.
class SimulatedOracle final : public Oracle {
 public:
  SimulatedOracle(const HypothesisSpace& space, int truth, NoiseSpec noise, Rng rng);
  SimulatedOracle(SignVector truth_labels, NoiseSpec noise, Rng rng);

  int respond(int cell) override;
  std::int64_t query_count() const override { return count_; }
  std::optional<int> truth_index() const override { return truth_index_; }
  std::optional<double> noise_bound() const override { return noise_.alpha; }

  const SignVector& truth_labels() const { return truth_labels_; }

 private:
  SignVector truth_labels_;
  std::optional<int> truth_index_;
  NoiseSpec noise_;
  Rng rng_;
  std::int64_t count_ = 0;
};

/// Human oracle: prints the cell witness and reads "+" or "-" from a stream.
class InteractiveOracle final : public Oracle {
 public:
  InteractiveOracle(const HypothesisSpace& space, std::istream& in, std::ostream& out);

  int respond(int cell) override;
  std::int64_t query_count() const override { return count_; }

 private:
  const HypothesisSpace& space_;
  std::istream& in_;
  std::ostream& out_;
  std::int64_t count_ = 0;
};

/// Majority label of `repetitions` independent draws (odd, so no ties),
/// together with the number of +1 responses.
std::pair<int, int> respond_majority(Oracle& oracle, int cell, int repetitions);

}  // namespace gbs

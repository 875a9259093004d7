#include "gbs/oracle.hpp"

#include <istream>
#include <ostream>
#include <string>

#include "gbs/errors.hpp"

namespace gbs {

NoiseSpec NoiseSpec::constant(double alpha) {
  if (!(alpha >= 0.0 && alpha < 0.5)) throw DomainError("noise level must lie in [0, 1/2)");
  NoiseSpec spec;
  spec.mode = Mode::Constant;
  spec.alpha = alpha;
  return spec;
}

NoiseSpec NoiseSpec::per_cell(Eigen::VectorXd levels) {
  NoiseSpec spec;
  spec.mode = Mode::PerCell;
  spec.alpha = 0.0;
  for (int i = 0; i < levels.size(); ++i) {
    if (!(levels(i) >= 0.0 && levels(i) < 0.5)) {
      throw DomainError("per-cell noise level must lie in [0, 1/2)");
    }
    spec.alpha = std::max(spec.alpha, levels(i));
  }
  spec.per_cell_levels = std::move(levels);
  return spec;
}

SimulatedOracle::SimulatedOracle(const HypothesisSpace& space, int truth,
                                 NoiseSpec noise, Rng rng)
    : truth_index_(truth), noise_(std::move(noise)), rng_(rng) {
  if (truth < 0 || truth >= space.hypothesis_count()) {
    throw DomainError("truth index out of range");
  }
  truth_labels_ = space.responses.row(truth).transpose();
  if (noise_.mode == NoiseSpec::Mode::PerCell &&
      noise_.per_cell_levels.size() != space.cell_count()) {
    throw DomainError("per-cell noise levels must match the cell count");
  }
}

SimulatedOracle::SimulatedOracle(SignVector truth_labels, NoiseSpec noise, Rng rng)
    : truth_labels_(std::move(truth_labels)), noise_(std::move(noise)), rng_(rng) {
  if (truth_labels_.size() < 1) throw EmptyMatrix("truth labeling is empty");
  for (int i = 0; i < truth_labels_.size(); ++i) {
    if (truth_labels_(i) != 1 && truth_labels_(i) != -1) {
      throw DomainError("truth labels must be -1 or +1");
    }
  }
  if (noise_.mode == NoiseSpec::Mode::PerCell &&
      noise_.per_cell_levels.size() != truth_labels_.size()) {
    throw DomainError("per-cell noise levels must match the cell count");
  }
}

int SimulatedOracle::respond(int cell) {
  if (cell < 0 || cell >= truth_labels_.size()) throw DomainError("cell index out of range");
  ++count_;
  const int label = truth_labels_(cell);
  const double a = noise_.level(cell);
  if (a > 0.0 && rng_.next_double() < a) return -label;
  return label;
}

InteractiveOracle::InteractiveOracle(const HypothesisSpace& space, std::istream& in,
                                     std::ostream& out)
    : space_(space), in_(in), out_(out) {}

int InteractiveOracle::respond(int cell) {
  if (cell < 0 || cell >= space_.cell_count()) throw DomainError("cell index out of range");
  const Eigen::VectorXd& w = space_.witnesses[cell];
  out_ << "query cell " << cell << " at point (";
  for (int j = 0; j < w.size(); ++j) out_ << (j ? ", " : "") << w(j);
  out_ << "); respond + or -: " << std::flush;

  std::string token;
  while (in_ >> token) {
    if (token == "+" || token == "+1") {
      ++count_;
      return +1;
    }
    if (token == "-" || token == "-1") {
      ++count_;
      return -1;
    }
    out_ << "please answer + or -: " << std::flush;
  }
  throw std::runtime_error("interactive oracle: input stream closed");
}

std::pair<int, int> respond_majority(Oracle& oracle, int cell, int repetitions) {
  if (repetitions < 1 || repetitions % 2 == 0) {
    throw EvenRepetition("majority voting needs an odd repetition count >= 1");
  }
  int plus = 0;
  for (int r = 0; r < repetitions; ++r) {
    if (oracle.respond(cell) > 0) ++plus;
  }
  return {plus * 2 > repetitions ? +1 : -1, plus};
}

}  // namespace gbs

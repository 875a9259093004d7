#pragma once

#include <stdexcept>
#include <string>

namespace gbs {

// Two hypotheses induce the same labeling; the space assumes unique rows.
struct DuplicateHypothesis : std::runtime_error {
  explicit DuplicateHypothesis(const std::string& what) : std::runtime_error(what) {}
};

struct EmptyMatrix : std::runtime_error {
  explicit EmptyMatrix(const std::string& what) : std::runtime_error(what) {}
};

struct InvalidInterval : std::invalid_argument {
  explicit InvalidInterval(const std::string& what) : std::invalid_argument(what) {}
};

// The feasibility solve could not separate a candidate cell at tolerance,
// usually because two hyperplanes are (near-)coincident.
struct DegenerateArrangement : std::runtime_error {
  explicit DegenerateArrangement(const std::string& what) : std::runtime_error(what) {}
};

struct SolverFailure : std::runtime_error {
  explicit SolverFailure(const std::string& what) : std::runtime_error(what) {}
};

struct DomainError : std::domain_error {
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// Every hypothesis was eliminated: the oracle lied (noise) or the truth is
// outside the hypothesis set.
struct EmptyVersionSpace : std::runtime_error {
  explicit EmptyVersionSpace(const std::string& what) : std::runtime_error(what) {}
};

struct EvenRepetition : std::invalid_argument {
  explicit EvenRepetition(const std::string& what) : std::invalid_argument(what) {}
};

struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace gbs

#pragma once

#include <stdexcept>
#include <string>

namespace qcut {

/// Base class of every error raised by the planner. Callers that only need
/// a message can catch this; tests and the CLI dispatch on the subclasses.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// circuit_model
class OperandOutOfRange : public Error {
public:
  using Error::Error;
};
class DuplicateBinaryOperand : public Error {
public:
  using Error::Error;
};
class SameQubit : public Error {
public:
  using Error::Error;
};
class OddCut : public Error {
public:
  using Error::Error;
};
class CutOutOfRange : public Error {
public:
  using Error::Error;
};

// network_model
class InvalidNetwork : public Error {
public:
  using Error::Error;
};
class Disconnected : public Error {
public:
  using Error::Error;
};
class InsufficientStorage : public Error {
public:
  InsufficientStorage(int deficit)
      : Error("insufficient storage: " + std::to_string(deficit) +
              " qubit(s) cannot be placed"),
        deficit_(deficit) {}
  [[nodiscard]] int deficit() const noexcept { return deficit_; }

private:
  int deficit_;
};

// pairwise_interaction
class NotTwoQubits : public Error {
public:
  using Error::Error;
};

// migration_coverage / feasibility_repair
class Uncoverable : public Error {
public:
  using Error::Error;
};
class IrreparableCapacity : public Error {
public:
  using Error::Error;
};

// instance_generators / exact_oracle
class InvalidParameters : public Error {
public:
  using Error::Error;
};
class GenerationExhausted : public Error {
public:
  using Error::Error;
};
class LimitExceeded : public Error {
public:
  using Error::Error;
};

// serialization
class FormatError : public Error {
public:
  using Error::Error;
};

} // namespace qcut

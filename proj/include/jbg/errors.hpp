#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace jbg {

// Argument outside the mathematical domain of an operation. Signals a caller bug.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Requested success probabilities do not fit the overlap budget of a stage.
class InfeasibleStage : public std::runtime_error {
 public:
  explicit InfeasibleStage(const std::string& what,
                           std::optional<std::size_t> stage_index = std::nullopt)
      : std::runtime_error(what), stage_index_(stage_index) {}

  std::optional<std::size_t> stage_index() const { return stage_index_; }

 private:
  std::optional<std::size_t> stage_index_;
};

// Identical input states asked to be mapped onto distinct outputs.
class DegenerateInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A squared norm went negative beyond round-off; the stage being simulated is broken.
class NumericalUnderflow : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnsupportedReceivers : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace jbg

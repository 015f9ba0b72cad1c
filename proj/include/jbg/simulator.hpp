#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "jbg/core_math.hpp"
#include "jbg/povm.hpp"
#include "jbg/rng.hpp"

namespace jbg {

struct SimConfig {
  std::uint64_t trials = 1'000'000;
  std::uint64_t seed = 0;
  bool record_per_receiver = true;

  void validate() const;
};

/// Binomial estimate of one success probability against its prediction.
struct RateEstimate {
  std::uint64_t trials = 0;
  std::uint64_t successes = 0;
  double empirical = 0.0;
  double predicted = 0.0;
  double std_error = 0.0;
  double z_score = 0.0;
};

/// Receiver k's success conditioned on the state Alice sent.
struct ReceiverStats {
  std::array<RateEstimate, 2> given_state;
};

struct SimReport {
  std::string rng_algorithm = SplitMix64::kName;
  std::uint64_t seed = 0;
  std::uint64_t trials = 0;
  std::uint64_t joint_successes = 0;
  double empirical_joint = 0.0;
  double std_error = 0.0;
  double predicted_joint = 0.0;
  double z_score = 0.0;
  std::array<std::uint64_t, 2> per_state_counts{};
  std::vector<ReceiverStats> per_receiver;  // empty unless recorded
};

/// Fills empirical / std_error / z_score from counts. The standard error is
/// sqrt(p(1-p)/n) at the empirical rate; when that vanishes the predicted rate
/// is used instead, and a zero error with an exact match gives z = 0.
RateEstimate estimate_rate(std::uint64_t trials, std::uint64_t successes, double predicted);

/// Monte Carlo run of the whole chain. Each trial draws from its own stream
/// (SplitMix64::for_trial), so the report depends only on (inst, stages, cfg).
/// Throws NumericalUnderflow when an outcome probability is negative beyond
/// -1e-12 or the two outcome probabilities do not sum to 1 within 1e-10.
SimReport run_chain_simulation(const DiscriminationInstance& inst,
                               std::span<const MeasurementStage> stages, const SimConfig& cfg);

struct PurityReport {
  bool pure = true;
  double min_fidelity = 1.0;
  std::string diagnostics;

  explicit operator bool() const { return pure; }
};

/// Replays sampled trials and checks that after every non-final stage both
/// possible outcomes leave the qubit in the stage's output |v_i> for the
/// state i that was sent (fidelity >= 1 - 1e-9).
PurityReport verify_posterior_purity(std::span<const MeasurementStage> stages,
                                     const SimConfig& cfg);

}  // namespace jbg

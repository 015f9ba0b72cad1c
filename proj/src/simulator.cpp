#include "jbg/simulator.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "jbg/errors.hpp"

namespace jbg {

namespace {

constexpr double kSumTolerance = 1e-10;
constexpr double kPurityTolerance = 1e-9;
// Outcomes with smaller probability leave no post-measurement state to check.
constexpr double kNegligibleWeight = 1e-15;

struct Outcome {
  int index = 0;
  QubitState post;
};

// Samples B_1 / B_2 on `cur` and returns the renormalized post-measurement state.
Outcome measure(const MeasurementStage& stage, const QubitState& cur, SplitMix64& rng,
                std::size_t stage_index) {
  const QubitState a = stage.detectors[0].apply(cur);
  const QubitState b = stage.detectors[1].apply(cur);
  const double q1 = a.norm_squared();
  const double q2 = b.norm_squared();
  const double total = q1 + q2;
  if (std::abs(total - 1.0) > kSumTolerance) {
    std::ostringstream msg;
    msg << "stage " << stage_index << ": outcome probabilities sum to " << total;
    throw NumericalUnderflow(msg.str());
  }
  if (rng.uniform() < q1 / total) return {0, a.normalized()};
  return {1, b.normalized()};
}

}  // namespace

void SimConfig::validate() const {
  if (trials < 1) throw DomainError("trials must be >= 1");
}

RateEstimate estimate_rate(std::uint64_t trials, std::uint64_t successes, double predicted) {
  RateEstimate est;
  est.trials = trials;
  est.successes = successes;
  est.predicted = predicted;
  if (trials == 0) return est;
  const double n = static_cast<double>(trials);
  est.empirical = static_cast<double>(successes) / n;
  est.std_error = std::sqrt(est.empirical * (1.0 - est.empirical) / n);
  if (est.std_error == 0.0) {
    est.std_error = std::sqrt(std::max(predicted * (1.0 - predicted), 0.0) / n);
  }
  const double diff = est.empirical - predicted;
  if (est.std_error > 0.0) {
    est.z_score = diff / est.std_error;
  } else if (std::abs(diff) > 1e-12) {
    est.z_score = std::copysign(std::numeric_limits<double>::infinity(), diff);
  }
  return est;
}

SimReport run_chain_simulation(const DiscriminationInstance& inst,
                               std::span<const MeasurementStage> stages, const SimConfig& cfg) {
  inst.validate();
  cfg.validate();
  const std::size_t n = stages.size();
  if (n != static_cast<std::size_t>(inst.n_receivers)) {
    throw DomainError("stage count does not match the receiver count");
  }

  const StatePair sent_states = make_state_pair(inst.overlap);
  std::array<std::uint64_t, 2> sent{};
  std::vector<std::array<std::uint64_t, 2>> correct(n, {0, 0});
  std::uint64_t joint = 0;

  for (std::uint64_t trial = 0; trial < cfg.trials; ++trial) {
    SplitMix64 rng = SplitMix64::for_trial(cfg.seed, trial);
    const int state = rng.uniform() < inst.prior_1 ? 0 : 1;
    ++sent[state];
    QubitState cur = sent_states[state];
    bool all_correct = true;
    for (std::size_t k = 0; k < n; ++k) {
      Outcome outcome = measure(stages[k], cur, rng, k);
      if (outcome.index == state) {
        ++correct[k][state];
      } else {
        all_correct = false;
      }
      cur = outcome.post;
    }
    if (all_correct) ++joint;
  }

  std::vector<SuccessPair> pairs;
  pairs.reserve(n);
  for (const MeasurementStage& stage : stages) pairs.push_back(stage.success);

  SimReport report;
  report.seed = cfg.seed;
  report.trials = cfg.trials;
  report.joint_successes = joint;
  report.per_state_counts = sent;
  const RateEstimate overall = estimate_rate(cfg.trials, joint, joint_success(inst, pairs));
  report.empirical_joint = overall.empirical;
  report.std_error = overall.std_error;
  report.predicted_joint = overall.predicted;
  report.z_score = overall.z_score;

  if (cfg.record_per_receiver) {
    report.per_receiver.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
      report.per_receiver[k].given_state = {
          estimate_rate(sent[0], correct[k][0], pairs[k].p1),
          estimate_rate(sent[1], correct[k][1], pairs[k].p2),
      };
    }
  }
  return report;
}

PurityReport verify_posterior_purity(std::span<const MeasurementStage> stages,
                                     const SimConfig& cfg) {
  cfg.validate();
  PurityReport report;
  if (stages.size() < 2) return report;

  for (std::uint64_t trial = 0; trial < cfg.trials; ++trial) {
    SplitMix64 rng = SplitMix64::for_trial(cfg.seed, trial);
    const int state = rng.uniform() < 0.5 ? 0 : 1;
    QubitState cur = stages.front().inputs[state];
    for (std::size_t k = 0; k + 1 < stages.size(); ++k) {
      const MeasurementStage& stage = stages[k];
      for (int j = 0; j < 2; ++j) {
        const QubitState post = stage.detectors[j].apply(cur);
        if (post.norm_squared() <= kNegligibleWeight) continue;
        const double f = fidelity(post.normalized(), stage.outputs[state]);
        if (f < report.min_fidelity) report.min_fidelity = f;
        if (f < 1.0 - kPurityTolerance && report.pure) {
          report.pure = false;
          std::ostringstream msg;
          msg << "trial " << trial << ", stage " << k << ", sent state " << state + 1
              << ", outcome " << j + 1 << ": fidelity with expected output is " << f;
          report.diagnostics = msg.str();
        }
      }
      // No completeness check here: a broken stage is reported, not thrown.
      const QubitState a = stage.detectors[0].apply(cur);
      const QubitState b = stage.detectors[1].apply(cur);
      const double q1 = a.norm_squared();
      cur = rng.uniform() < q1 / (q1 + b.norm_squared()) ? a.normalized() : b.normalized();
    }
    if (!report.pure) break;
  }
  return report;
}

}  // namespace jbg

#pragma once

// Closed-form quantities for sequential joint-best-guess discrimination of two
// pure qubit states |psi_1>, |psi_2> with real overlap s passed through a chain
// of N receivers.

#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace jbg {

/// Problem definition: overlap s = <psi_1|psi_2>, priors (eta_1, eta_2) and
/// the number of receivers N.
struct DiscriminationInstance {
  double overlap = 0.0;
  double prior_1 = 0.5;
  double prior_2 = 0.5;
  int n_receivers = 1;

  /// Builds a validated instance with prior_2 = 1 - prior_1.
  static DiscriminationInstance make(double overlap, double prior_1, int n_receivers);

  /// Throws DomainError when an invariant is violated.
  void validate() const;

  /// s^(1/N): the overlap every receiver faces in a uniform chain.
  double effective_overlap() const;

  /// Same problem with the state labels exchanged.
  DiscriminationInstance swapped() const;
};

/// Conditional success probabilities of one receiver: p1 = P(guess 1 | psi_1 sent),
/// p2 = P(guess 2 | psi_2 sent).
struct SuccessPair {
  double p1 = 0.0;
  double p2 = 0.0;

  friend bool operator==(const SuccessPair&, const SuccessPair&) = default;
};

enum class Strategy {
  kJbgOptimal,
  kJbgSymmetricAnalytic,
  kIndividualGreedy,
  kBoundary,
};

std::string_view to_string(Strategy strategy);
std::optional<Strategy> parse_strategy(std::string_view name);

struct StrategyResult {
  std::vector<SuccessPair> stages;  // one per receiver
  std::vector<double> overlaps;     // t_1 ... t_N, t_1 = s
  double joint_success = 0.0;
  Strategy strategy = Strategy::kJbgOptimal;
};

/// eta_1 * prod p1 + eta_2 * prod p2.
double joint_success(const DiscriminationInstance& inst, std::span<const SuccessPair> stages);

/// t_k = s^((N - k + 1) / N) for k = 1..N.
std::vector<double> uniform_chain_overlaps(double s, int n_receivers);

/// Every stage carries `pair`; overlaps follow the uniform chain.
StrategyResult uniform_strategy(const DiscriminationInstance& inst, SuccessPair pair,
                                Strategy strategy);

/// Checks the StrategyResult invariants against `inst`: stage/overlap counts,
/// t_1 = s, probabilities in [0,1], the recomputed joint success, and the
/// per-stage overlap budget D(p1, p2) = t_k / t_{k+1} (t_{N+1} = 1).
/// Throws DomainError describing the first violation.
void validate_result(const DiscriminationInstance& inst, const StrategyResult& result,
                     double budget_tolerance = 1e-9);

/// sqrt(p1 (1 - p2)) + sqrt(p2 (1 - p1)): the ratio t_in / t_out a measurement
/// with these success probabilities imposes on the overlap it passes on.
double distinguishability(double p1, double p2);

/// Symmetric solution p1 = p2 = (1 + sqrt(1 - s^(2/N))) / 2 at every stage.
/// Globally optimal for equal priors only below the threshold s_b.
StrategyResult equal_prior_jbg(double s, int n_receivers);

/// Larger root p2 = (s_eff sqrt(1-p1) + sqrt(p1) sqrt(1-s_eff^2))^2 of
/// D(p1, p2) = s_eff. The pair is feasible for p1 >= 1 - s_eff^2.
double p2_from_p1(double p1, double s_eff);

/// Derivative condition of eta_1 p1^N + eta_2 p2(p1)^N with respect to
/// theta_1 = arccos(sqrt(p1)), scaled so that
///   residual = -(1 / 2N) d/dtheta_1 [objective].
/// Zero at interior stationary points; negative where the objective rises.
double stationarity_residual(double p1, const DiscriminationInstance& inst);

/// Each receiver maximizes its own average success (per-stage Helstrom
/// measurement on overlap s^(1/N)).
StrategyResult individual_greedy(const DiscriminationInstance& inst);

/// Better of {p2 = 1, p1 = 1 - s^(2/N)} and its mirror {p1 = 1, p2 = 1 - s^(2/N)}.
StrategyResult boundary_solution(const DiscriminationInstance& inst);

namespace detail {

// Smaller root of D(p1, p2) = s_eff; feasible for p1 <= s_eff^2. Only the
// brute-force full-chain search needs it.
double p2_from_p1_minus(double p1, double s_eff);

// Clamps to [0,1] after checking the value is within `slack` of that range.
double checked_probability(double p, const char* what, double slack = 1e-12);

}  // namespace detail

}  // namespace jbg

#pragma once

#include <vector>

#include "jbg/core_math.hpp"

namespace jbg {

struct OptimizerConfig {
  int scan_points = 2001;            // coarse grid over theta_1
  double refine_tolerance = 1e-12;   // final bracket width in theta_1
  double candidate_tolerance = 1e-10;  // joint-success tie window

  void validate() const;
};

/// Unreduced optimum of the chained problem: independent probabilities per
/// receiver and free intermediate overlaps.
struct FullChainSolution {
  std::vector<SuccessPair> stages;
  std::vector<double> intermediate_overlaps;  // t_2 ... t_N
  double joint_success = 0.0;
};

/// Global maximum of eta_1 p1^N + eta_2 p2^N subject to D(p1, p2) = s^(1/N).
///
/// Works in theta_1 with p1 = cos^2(theta_1), p2 = cos^2(phi - theta_1) and
/// sin(phi) = s^(1/N). The scan covers theta_1 in [0, phi]; beyond phi the
/// plus-branch pair is not feasible and is dominated by theta_1 = phi anyway.
/// Sign changes of the stationarity residual are bisected down to
/// refine_tolerance, and both endpoints are compared as well. Maxima that
/// agree within candidate_tolerance are resolved toward the smaller |p1 - p2|.
///
/// The problem is always solved with eta_1 >= eta_2 and mirrored back, so
/// exchanging the priors exchanges p1 and p2 exactly.
StrategyResult optimize_reduced(const DiscriminationInstance& inst,
                                const OptimizerConfig& cfg = {});

/// Exhaustive scan of theta_1 over [0, pi/2] at `resolution` points. Both roots
/// of the constraint are tried wherever they are feasible. Shares no code with
/// optimize_reduced.
StrategyResult grid_search_oracle(const DiscriminationInstance& inst, int resolution);

/// Brute force over the unreduced chain for N in {2, 3}: every non-final
/// receiver scans its outgoing overlap t_{n+1} in [t_n, 1] and its own angle on
/// both constraint roots; the last receiver performs the weighted Helstrom
/// measurement in closed form. Cost grows as resolution^(2(N-1)).
FullChainSolution optimize_full_chain(const DiscriminationInstance& inst, int resolution);

/// Smallest overlap at which the equal-prior optimum beats the symmetric
/// closed form by more than cfg.candidate_tolerance. Bisected to 1e-6.
double find_sb(int n_receivers, const OptimizerConfig& cfg = {});

/// Dispatches to the routine computing `strategy` for `inst`.
StrategyResult solve_strategy(const DiscriminationInstance& inst, Strategy strategy,
                              const OptimizerConfig& cfg = {});

}  // namespace jbg

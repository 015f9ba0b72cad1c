#pragma once

// Detection operators for one receiver in the chain. Receiver outcome j means
// "guess state j"; the operator B_j maps |psi_i> onto a multiple of a single
// output state |v_i>, so the next receiver again sees one of two pure states.

#include <array>
#include <span>
#include <utility>
#include <vector>

#include "jbg/core_math.hpp"
#include "jbg/qubit.hpp"

namespace jbg {

using StatePair = std::array<QubitState, 2>;

struct MeasurementStage {
  std::array<Matrix2, 2> detectors;  // B_1, B_2
  StatePair inputs;                  // |psi_1>, |psi_2> as received
  StatePair outputs;                 // |v_1>, |v_2> handed on
  SuccessPair success;
  double in_overlap = 0.0;
  double out_overlap = 0.0;
};

/// Deviations of a stage from the POVM and pure-output requirements.
struct StageDiagnostics {
  double completeness_error = 0.0;  // max |B1^dag B1 + B2^dag B2 - I|
  double min_eigenvalue = 0.0;      // smallest eigenvalue over both B_j^dag B_j
  double action_error = 0.0;        // max deviation of B_j|psi_i> from its target, up to phase
  double output_overlap_error = 0.0;
  double born_error = 0.0;          // |<psi_i|B_i^dag B_i|psi_i> - p_i|

  bool ok(double tolerance = 1e-10, double positivity_slack = 1e-12) const {
    return completeness_error <= tolerance && min_eigenvalue >= -positivity_slack &&
           action_error <= tolerance && output_overlap_error <= tolerance &&
           born_error <= tolerance;
  }
};

/// |psi_1> = cos(a)|0> + sin(a)|1>, |psi_2> = cos(a)|0> - sin(a)|1>, cos(2a) = overlap.
StatePair make_state_pair(double overlap);

/// Builds B_1, B_2 from their action on the input pair:
///   B_1|psi_1> = sqrt(p1)|v_1>,      B_1|psi_2> = sqrt(1-p2)|v_2>,
///   B_2|psi_1> = sqrt(1-p1)|v_1>,    B_2|psi_2> = sqrt(p2)|v_2>,
/// expanded on the reciprocal basis <psi_2^perp|, <psi_1^perp| of the inputs.
/// The outputs are the canonical pair of overlap `out_overlap`. A complex phase
/// on <psi_1|psi_2> is removed from |psi_2> first.
///
/// Throws InfeasibleStage unless |D(p1, p2) * out_overlap - in_overlap| <= 1e-9,
/// and DegenerateInput when identical inputs must leave as distinct outputs.
MeasurementStage build_stage(const StatePair& in_pair, SuccessPair success, double out_overlap);

/// Stage k takes the canonical pair of overlap t_k to that of t_{k+1}; the
/// final receiver merges both outputs onto one state (out_overlap = 1).
std::vector<MeasurementStage> build_chain(const DiscriminationInstance& inst,
                                          const StrategyResult& result);

StageDiagnostics diagnose_stage(const MeasurementStage& stage);

}  // namespace jbg

#include "jbg/povm.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "jbg/errors.hpp"

namespace jbg {

namespace {

constexpr double kFeasibilityTolerance = 1e-9;
constexpr double kNormTolerance = 1e-12;
// Below this |<psi_2^perp|psi_1>| the inputs are treated as one state.
constexpr double kCollinear = 1e-12;

void require_normalized(const QubitState& v, const char* name) {
  if (std::abs(v.norm_squared() - 1.0) > kNormTolerance) {
    std::ostringstream msg;
    msg << name << " is not normalized: |v|^2 = " << v.norm_squared();
    throw DomainError(msg.str());
  }
}

}  // namespace

StatePair make_state_pair(double overlap) {
  overlap = detail::checked_probability(overlap, "overlap", 0.0);
  const double alpha = 0.5 * std::acos(overlap);
  const double c = std::cos(alpha);
  const double s = std::sin(alpha);
  return {QubitState{{Complex{c, 0.0}, Complex{s, 0.0}}},
          QubitState{{Complex{c, 0.0}, Complex{-s, 0.0}}}};
}

MeasurementStage build_stage(const StatePair& in_pair, SuccessPair success, double out_overlap) {
  require_normalized(in_pair[0], "|psi_1>");
  require_normalized(in_pair[1], "|psi_2>");
  const double p1 = detail::checked_probability(success.p1, "p1");
  const double p2 = detail::checked_probability(success.p2, "p2");
  out_overlap = detail::checked_probability(out_overlap, "out_overlap");

  MeasurementStage stage;
  stage.success = {p1, p2};
  stage.out_overlap = out_overlap;

  // Strip the phase of <psi_1|psi_2> so the overlap is real and non-negative.
  const QubitState& psi1 = in_pair[0];
  QubitState psi2 = in_pair[1];
  const Complex raw_overlap = inner(psi1, psi2);
  if (std::abs(raw_overlap) > 0.0) {
    psi2 = (std::conj(raw_overlap) / std::abs(raw_overlap)) * psi2;
  }
  stage.inputs = {psi1, psi2};
  stage.in_overlap = std::min(std::abs(raw_overlap), 1.0);

  const double budget = distinguishability(p1, p2) * out_overlap;
  if (std::abs(budget - stage.in_overlap) > kFeasibilityTolerance) {
    std::ostringstream msg;
    msg << "success pair (" << p1 << ", " << p2 << ") with output overlap " << out_overlap
        << " passes overlap " << budget << ", input overlap is " << stage.in_overlap;
    throw InfeasibleStage(msg.str());
  }

  stage.outputs = make_state_pair(out_overlap);
  const QubitState& v1 = stage.outputs[0];
  const QubitState& v2 = stage.outputs[1];

  const Complex c1 = inner(psi2.orthogonal(), psi1);
  if (std::abs(c1) <= kCollinear) {
    if (out_overlap < 1.0 - kCollinear) {
      throw DegenerateInput("identical input states cannot be mapped onto distinct outputs");
    }
    // Both inputs are |psi_1>: one isometry onto |v_1>, split by sqrt(p1), sqrt(1-p1).
    const Matrix2 rotate =
        Matrix2::outer(v1, psi1) + Matrix2::outer(v1.orthogonal(), psi1.orthogonal());
    stage.detectors = {rotate * Complex{std::sqrt(p1), 0.0},
                       rotate * Complex{std::sqrt(1.0 - p1), 0.0}};
    return stage;
  }

  // Reciprocal basis: <dual_1|psi_1> = 1, <dual_1|psi_2> = 0 and vice versa.
  const Complex c2 = inner(psi1.orthogonal(), psi2);
  const QubitState dual1 = (1.0 / std::conj(c1)) * psi2.orthogonal();
  const QubitState dual2 = (1.0 / std::conj(c2)) * psi1.orthogonal();
  const Matrix2 to_v1 = Matrix2::outer(v1, dual1);
  const Matrix2 to_v2 = Matrix2::outer(v2, dual2);

  stage.detectors = {
      to_v1 * Complex{std::sqrt(p1), 0.0} + to_v2 * Complex{std::sqrt(1.0 - p2), 0.0},
      to_v1 * Complex{std::sqrt(1.0 - p1), 0.0} + to_v2 * Complex{std::sqrt(p2), 0.0},
  };
  return stage;
}

std::vector<MeasurementStage> build_chain(const DiscriminationInstance& inst,
                                          const StrategyResult& result) {
  inst.validate();
  const auto n = static_cast<std::size_t>(inst.n_receivers);
  if (result.stages.size() != n || result.overlaps.size() != n) {
    throw DomainError("strategy result does not have one stage per receiver");
  }
  if (std::abs(result.overlaps.front() - inst.overlap) > 1e-12) {
    throw DomainError("strategy result does not start at the instance overlap");
  }

  std::vector<MeasurementStage> chain;
  chain.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double out_overlap = k + 1 < n ? result.overlaps[k + 1] : 1.0;
    try {
      chain.push_back(
          build_stage(make_state_pair(result.overlaps[k]), result.stages[k], out_overlap));
    } catch (const InfeasibleStage& e) {
      throw InfeasibleStage("stage " + std::to_string(k) + ": " + e.what(), k);
    }
  }
  return chain;
}

StageDiagnostics diagnose_stage(const MeasurementStage& stage) {
  StageDiagnostics diag;
  const auto& [b1, b2] = stage.detectors;
  const Matrix2 effect1 = b1.adjoint() * b1;
  const Matrix2 effect2 = b2.adjoint() * b2;
  diag.completeness_error = (effect1 + effect2 - Matrix2::identity()).max_abs();
  diag.min_eigenvalue =
      std::min(effect1.hermitian_eigenvalues()[0], effect2.hermitian_eigenvalues()[0]);

  const auto& [psi1, psi2] = stage.inputs;
  const auto& [v1, v2] = stage.outputs;
  const double p1 = stage.success.p1;
  const double p2 = stage.success.p2;
  auto scaled = [](double w, const QubitState& v) { return Complex{std::sqrt(w), 0.0} * v; };
  diag.action_error = std::max({
      distance_up_to_phase(b1.apply(psi1), scaled(p1, v1)),
      distance_up_to_phase(b2.apply(psi1), scaled(1.0 - p1, v1)),
      distance_up_to_phase(b1.apply(psi2), scaled(1.0 - p2, v2)),
      distance_up_to_phase(b2.apply(psi2), scaled(p2, v2)),
  });
  diag.output_overlap_error = std::abs(inner(v1, v2) - Complex{stage.out_overlap, 0.0});
  diag.born_error = std::max(std::abs(b1.apply(psi1).norm_squared() - p1),
                             std::abs(b2.apply(psi2).norm_squared() - p2));
  return diag;
}

}  // namespace jbg

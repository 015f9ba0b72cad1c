#include "jbg/core_math.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <string>
#include <utility>

#include "jbg/errors.hpp"

namespace jbg {

namespace {

constexpr double kProbabilitySlack = 1e-12;

constexpr std::array<std::pair<Strategy, std::string_view>, 4> kStrategyNames{{
    {Strategy::kJbgOptimal, "JBG_OPTIMAL"},
    {Strategy::kJbgSymmetricAnalytic, "JBG_SYMMETRIC_ANALYTIC"},
    {Strategy::kIndividualGreedy, "INDIVIDUAL_GREEDY"},
    {Strategy::kBoundary, "BOUNDARY"},
}};

void require_receivers(int n) {
  if (n < 1) {
    throw DomainError("receiver count must be >= 1, got " + std::to_string(n));
  }
}

// s^(2/N), the squared per-stage overlap.
double squared_effective_overlap(double s, int n) { return std::pow(s, 2.0 / n); }

}  // namespace

namespace detail {

double checked_probability(double p, const char* what, double slack) {
  if (!(p >= -slack && p <= 1.0 + slack)) {
    std::ostringstream msg;
    msg << what << " must lie in [0,1], got " << p;
    throw DomainError(msg.str());
  }
  return std::clamp(p, 0.0, 1.0);
}

double p2_from_p1_minus(double p1, double s_eff) {
  p1 = checked_probability(p1, "p1");
  s_eff = checked_probability(s_eff, "s_eff");
  const double root = s_eff * std::sqrt(1.0 - p1) - std::sqrt(p1) * std::sqrt(1.0 - s_eff * s_eff);
  return std::min(root * root, 1.0);
}

}  // namespace detail

using detail::checked_probability;

DiscriminationInstance DiscriminationInstance::make(double overlap, double prior_1,
                                                    int n_receivers) {
  DiscriminationInstance inst{overlap, prior_1, 1.0 - prior_1, n_receivers};
  inst.validate();
  return inst;
}

void DiscriminationInstance::validate() const {
  std::ostringstream msg;
  if (!(overlap >= 0.0 && overlap <= 1.0)) {
    msg << "overlap must lie in [0,1], got " << overlap;
  } else if (!(prior_1 >= 0.0 && prior_1 <= 1.0 && prior_2 >= 0.0 && prior_2 <= 1.0)) {
    msg << "priors must lie in [0,1], got (" << prior_1 << ", " << prior_2 << ")";
  } else if (std::abs(prior_1 + prior_2 - 1.0) > 1e-12) {
    msg << "priors must sum to 1, got " << prior_1 + prior_2;
  } else if (n_receivers < 1) {
    msg << "receiver count must be >= 1, got " << n_receivers;
  } else {
    return;
  }
  throw DomainError(msg.str());
}

double DiscriminationInstance::effective_overlap() const {
  return std::pow(overlap, 1.0 / n_receivers);
}

DiscriminationInstance DiscriminationInstance::swapped() const {
  return {overlap, prior_2, prior_1, n_receivers};
}

std::string_view to_string(Strategy strategy) {
  for (const auto& [value, name] : kStrategyNames) {
    if (value == strategy) return name;
  }
  return "UNKNOWN";
}

std::optional<Strategy> parse_strategy(std::string_view name) {
  for (const auto& [value, label] : kStrategyNames) {
    if (label == name) return value;
  }
  return std::nullopt;
}

double joint_success(const DiscriminationInstance& inst, std::span<const SuccessPair> stages) {
  double prod_1 = 1.0;
  double prod_2 = 1.0;
  for (const SuccessPair& stage : stages) {
    prod_1 *= stage.p1;
    prod_2 *= stage.p2;
  }
  return inst.prior_1 * prod_1 + inst.prior_2 * prod_2;
}

std::vector<double> uniform_chain_overlaps(double s, int n_receivers) {
  require_receivers(n_receivers);
  std::vector<double> overlaps(static_cast<std::size_t>(n_receivers));
  for (int k = 1; k <= n_receivers; ++k) {
    overlaps[k - 1] = std::pow(s, static_cast<double>(n_receivers - k + 1) / n_receivers);
  }
  return overlaps;
}

StrategyResult uniform_strategy(const DiscriminationInstance& inst, SuccessPair pair,
                                Strategy strategy) {
  StrategyResult result;
  result.stages.assign(static_cast<std::size_t>(inst.n_receivers), pair);
  result.overlaps = uniform_chain_overlaps(inst.overlap, inst.n_receivers);
  result.joint_success = joint_success(inst, result.stages);
  result.strategy = strategy;
  return result;
}

void validate_result(const DiscriminationInstance& inst, const StrategyResult& result,
                     double budget_tolerance) {
  inst.validate();
  const auto n = static_cast<std::size_t>(inst.n_receivers);
  std::ostringstream msg;
  if (result.stages.size() != n || result.overlaps.size() != n) {
    msg << "expected " << n << " stages and overlaps, got " << result.stages.size() << " and "
        << result.overlaps.size();
    throw DomainError(msg.str());
  }
  if (std::abs(result.overlaps.front() - inst.overlap) > 1e-12) {
    msg << "first overlap " << result.overlaps.front() << " differs from s = " << inst.overlap;
    throw DomainError(msg.str());
  }
  for (std::size_t k = 0; k < n; ++k) {
    const SuccessPair& pair = result.stages[k];
    checked_probability(pair.p1, "stage p1", 0.0);
    checked_probability(pair.p2, "stage p2", 0.0);
    const double t_in = result.overlaps[k];
    const double t_out = k + 1 < n ? result.overlaps[k + 1] : 1.0;
    if (std::abs(distinguishability(pair.p1, pair.p2) * t_out - t_in) > budget_tolerance) {
      msg << "stage " << k << " violates its overlap budget: D(" << pair.p1 << ", " << pair.p2
          << ") * " << t_out << " != " << t_in;
      throw DomainError(msg.str());
    }
  }
  const double recomputed = joint_success(inst, result.stages);
  if (std::abs(recomputed - result.joint_success) > 1e-12) {
    msg << "joint_success " << result.joint_success << " does not match recomputed "
        << recomputed;
    throw DomainError(msg.str());
  }
}

double distinguishability(double p1, double p2) {
  p1 = checked_probability(p1, "p1", kProbabilitySlack);
  p2 = checked_probability(p2, "p2", kProbabilitySlack);
  const double d = std::sqrt(p1 * (1.0 - p2)) + std::sqrt(p2 * (1.0 - p1));
  return std::min(d, 1.0);
}

StrategyResult equal_prior_jbg(double s, int n_receivers) {
  const auto inst = DiscriminationInstance::make(s, 0.5, n_receivers);
  const double p = 0.5 * (1.0 + std::sqrt(1.0 - squared_effective_overlap(s, n_receivers)));
  return uniform_strategy(inst, {p, p}, Strategy::kJbgSymmetricAnalytic);
}

double p2_from_p1(double p1, double s_eff) {
  p1 = checked_probability(p1, "p1", kProbabilitySlack);
  s_eff = checked_probability(s_eff, "s_eff", kProbabilitySlack);
  const double cos_phi = std::sqrt(1.0 - s_eff * s_eff);
  const double root = s_eff * std::sqrt(1.0 - p1) + std::sqrt(p1) * cos_phi;
  const double p2 = root * root;
  if (p2 <= 0.5) return p2;
  // Near p2 = 1 take 1 - sin^2(phi - theta_1) so the complement stays accurate.
  const double sine = s_eff * std::sqrt(p1) - cos_phi * std::sqrt(1.0 - p1);
  return std::clamp(1.0 - sine * sine, 0.0, 1.0);
}

double stationarity_residual(double p1, const DiscriminationInstance& inst) {
  inst.validate();
  if (!(p1 > 0.0 && p1 < 1.0)) {
    std::ostringstream msg;
    msg << "stationarity residual is defined on the open interval (0,1), got p1 = " << p1;
    throw DomainError(msg.str());
  }
  const int n = inst.n_receivers;
  const double s_eff = inst.effective_overlap();
  const double cos_phi_sq = 1.0 - s_eff * s_eff;
  const double root_p2 = s_eff * std::sqrt(1.0 - p1) + std::sqrt(p1) * std::sqrt(cos_phi_sq);
  const double own = inst.prior_1 * std::pow(p1, n - 1) * std::sqrt(p1 * (1.0 - p1));
  const double other = inst.prior_2 * std::pow(root_p2, 2 * n - 1) *
                       (std::sqrt((1.0 - p1) * cos_phi_sq) - s_eff * std::sqrt(p1));
  return own + other;
}

StrategyResult individual_greedy(const DiscriminationInstance& inst) {
  inst.validate();
  if (inst.prior_1 < inst.prior_2) {
    StrategyResult mirrored = individual_greedy(inst.swapped());
    const SuccessPair pair{mirrored.stages.front().p2, mirrored.stages.front().p1};
    return uniform_strategy(inst, pair, Strategy::kIndividualGreedy);
  }
  const double q = squared_effective_overlap(inst.overlap, inst.n_receivers);
  const double discriminant = 1.0 - 4.0 * inst.prior_1 * inst.prior_2 * q;
  SuccessPair pair{0.5, 0.5};
  // At s = 1 with equal priors the formula is 0/0; take p = 1/2.
  if (discriminant > 0.0) {
    // Only the favoured p1 comes from the closed form; p2 follows from the
    // overlap budget so a vanishing p2 is exactly zero rather than rounding noise.
    const double root = std::sqrt(discriminant);
    pair.p1 = std::clamp(0.5 * (1.0 + (1.0 - 2.0 * inst.prior_2 * q) / root), 0.0, 1.0);
    pair.p2 = p2_from_p1(pair.p1, inst.effective_overlap());
  }
  return uniform_strategy(inst, pair, Strategy::kIndividualGreedy);
}

StrategyResult boundary_solution(const DiscriminationInstance& inst) {
  inst.validate();
  const double forced = 1.0 - squared_effective_overlap(inst.overlap, inst.n_receivers);
  StrategyResult favour_2 = uniform_strategy(inst, {forced, 1.0}, Strategy::kBoundary);
  StrategyResult favour_1 = uniform_strategy(inst, {1.0, forced}, Strategy::kBoundary);
  return favour_2.joint_success > favour_1.joint_success ? favour_2 : favour_1;
}

}  // namespace jbg

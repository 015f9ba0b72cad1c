#include "jbg/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>
#include <utility>

#include "jbg/errors.hpp"

namespace jbg {

namespace {

constexpr int kMaxBisections = 200;
constexpr double kSbTolerance = 1e-6;
constexpr int kSbScanPoints = 200;

struct Candidate {
  double theta = 0.0;
  SuccessPair pair;
  double joint = 0.0;
};

// One-dimensional view of the reduced problem in theta_1.
class ReducedProblem {
 public:
  explicit ReducedProblem(const DiscriminationInstance& inst)
      : inst_(inst), s_eff_(inst.effective_overlap()), phi_(std::asin(s_eff_)) {}

  double phi() const { return phi_; }

  Candidate evaluate(double theta) const {
    // p2 is derived from the rounded p1 so the stored pair meets the overlap
    // budget to rounding even when p1 sits within a few ulps of 1.
    const double c1 = std::cos(theta);
    const double p1 = c1 * c1;
    Candidate c{theta, {p1, p2_from_p1(p1, s_eff_)}, 0.0};
    const int n = inst_.n_receivers;
    c.joint = inst_.prior_1 * std::pow(c.pair.p1, n) + inst_.prior_2 * std::pow(c.pair.p2, n);
    return c;
  }

  // Stationarity residual at p1 = cos^2(theta). Where p1 rounds to 0 or 1 the
  // same quantity is taken in its angular form, which stays finite there.
  double residual(double theta) const {
    const double c1 = std::cos(theta);
    const double p1 = c1 * c1;
    if (p1 > 0.0 && p1 < 1.0) return stationarity_residual(p1, inst_);
    const int n = inst_.n_receivers;
    return inst_.prior_1 * std::pow(c1, 2 * n - 1) * std::sin(theta) -
           inst_.prior_2 * std::pow(std::cos(phi_ - theta), 2 * n - 1) * std::sin(phi_ - theta);
  }

  // Shrinks [lo, hi], with residual(lo) <= 0 < residual(hi), onto the local maximum.
  double bisect(double lo, double hi, double tolerance) const {
    for (int it = 0; it < kMaxBisections && hi - lo > tolerance; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (residual(mid) <= 0.0) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    return 0.5 * (lo + hi);
  }

 private:
  const DiscriminationInstance& inst_;
  double s_eff_;
  double phi_;
};

const Candidate& pick_best(const std::vector<Candidate>& candidates, double tie_window) {
  double best_joint = candidates.front().joint;
  for (const Candidate& c : candidates) best_joint = std::max(best_joint, c.joint);

  const Candidate* chosen = nullptr;
  for (const Candidate& c : candidates) {
    if (c.joint < best_joint - tie_window) continue;
    if (chosen == nullptr) {
      chosen = &c;
      continue;
    }
    const double asym = std::abs(c.pair.p1 - c.pair.p2);
    const double chosen_asym = std::abs(chosen->pair.p1 - chosen->pair.p2);
    if (asym < chosen_asym || (asym == chosen_asym && c.pair.p1 > chosen->pair.p1)) {
      chosen = &c;
    }
  }
  return *chosen;
}

SuccessPair weighted_helstrom(double w1, double w2, double overlap) {
  const double total = w1 + w2;
  if (total <= 0.0) return {0.5, 0.5};
  const double a1 = w1 / total;
  const double a2 = w2 / total;
  const double t2 = overlap * overlap;
  const double disc = 1.0 - 4.0 * a1 * a2 * t2;
  if (disc <= 0.0) return {0.5, 0.5};
  const double root = std::sqrt(disc);
  return {std::clamp(0.5 * (1.0 + (1.0 - 2.0 * a2 * t2) / root), 0.0, 1.0),
          std::clamp(0.5 * (1.0 + (1.0 - 2.0 * a1 * t2) / root), 0.0, 1.0)};
}

class FullChainSearch {
 public:
  FullChainSearch(const DiscriminationInstance& inst, int resolution)
      : n_(inst.n_receivers), resolution_(resolution) {
    path_.resize(static_cast<std::size_t>(n_));
    overlaps_.resize(static_cast<std::size_t>(n_ - 1));
    descend(0, inst.overlap, inst.prior_1, inst.prior_2);
  }

  FullChainSolution result() const { return best_; }

 private:
  void descend(int stage, double t_in, double w1, double w2) {
    if (stage == n_ - 1) {
      const SuccessPair last = weighted_helstrom(w1, w2, t_in);
      const double value = w1 * last.p1 + w2 * last.p2;
      if (!found_ || value > best_.joint_success) {
        found_ = true;
        path_.back() = last;
        best_.stages = path_;
        best_.intermediate_overlaps = overlaps_;
        best_.joint_success = value;
      }
      return;
    }
    const double last_index = resolution_ - 1;
    for (int i = 0; i < resolution_; ++i) {
      const double t_out = t_in + (1.0 - t_in) * (i / last_index);
      const double ratio = t_out > 0.0 ? std::min(t_in / t_out, 1.0) : 0.0;
      const double phi = std::asin(ratio);
      overlaps_[static_cast<std::size_t>(stage)] = t_out;
      for (int j = 0; j < resolution_; ++j) {
        const double step = phi * (j / last_index);
        // Root theta_1 + theta_2 = phi.
        const double c1 = std::cos(step);
        const double c2 = std::cos(phi - step);
        visit(stage, t_out, w1, w2, {c1 * c1, c2 * c2});
        // Root theta_1 + theta_2 = pi - phi, with theta_1 in [pi/2 - phi, pi/2].
        if (phi > 0.0) {
          const double cb = std::cos(0.5 * std::numbers::pi - phi + step);
          const double p1 = std::clamp(cb * cb, 0.0, 1.0);
          visit(stage, t_out, w1, w2, {p1, detail::p2_from_p1_minus(p1, ratio)});
        }
      }
    }
  }

  void visit(int stage, double t_out, double w1, double w2, SuccessPair pair) {
    path_[static_cast<std::size_t>(stage)] = pair;
    descend(stage + 1, t_out, w1 * pair.p1, w2 * pair.p2);
  }

  int n_;
  int resolution_;
  bool found_ = false;
  std::vector<SuccessPair> path_;
  std::vector<double> overlaps_;
  FullChainSolution best_;
};

}  // namespace

void OptimizerConfig::validate() const {
  if (scan_points < 3) {
    throw DomainError("scan_points must be >= 3, got " + std::to_string(scan_points));
  }
  if (!(refine_tolerance > 0.0) || !(candidate_tolerance > 0.0)) {
    throw DomainError("optimizer tolerances must be positive");
  }
}

StrategyResult optimize_reduced(const DiscriminationInstance& inst, const OptimizerConfig& cfg) {
  inst.validate();
  cfg.validate();

  if (inst.prior_1 < inst.prior_2) {
    StrategyResult mirrored = optimize_reduced(inst.swapped(), cfg);
    for (SuccessPair& pair : mirrored.stages) std::swap(pair.p1, pair.p2);
    mirrored.joint_success = joint_success(inst, mirrored.stages);
    return mirrored;
  }

  const ReducedProblem problem(inst);
  const double phi = problem.phi();
  if (phi == 0.0) {
    return uniform_strategy(inst, {1.0, 1.0}, Strategy::kJbgOptimal);
  }

  const int points = cfg.scan_points;
  std::vector<double> thetas(static_cast<std::size_t>(points));
  std::vector<double> residuals(thetas.size());
  for (int k = 0; k < points; ++k) {
    thetas[k] = k + 1 == points ? phi : phi * (static_cast<double>(k) / (points - 1));
    residuals[k] = problem.residual(thetas[k]);
  }

  std::vector<Candidate> candidates{problem.evaluate(0.0), problem.evaluate(phi)};
  for (int k = 0; k + 1 < points; ++k) {
    if (residuals[k] <= 0.0 && residuals[k + 1] > 0.0) {
      candidates.push_back(
          problem.evaluate(problem.bisect(thetas[k], thetas[k + 1], cfg.refine_tolerance)));
    }
  }
  // With equal priors the symmetric point is stationary; offer it exactly so
  // the tie-break can return it instead of a bisected neighbour.
  if (inst.prior_1 == inst.prior_2) {
    const StrategyResult symmetric = equal_prior_jbg(inst.overlap, inst.n_receivers);
    candidates.push_back({0.5 * phi, symmetric.stages.front(), symmetric.joint_success});
  }

  const Candidate& best = pick_best(candidates, cfg.candidate_tolerance);
  return uniform_strategy(inst, best.pair, Strategy::kJbgOptimal);
}

StrategyResult grid_search_oracle(const DiscriminationInstance& inst, int resolution) {
  inst.validate();
  if (resolution < 10) {
    throw DomainError("grid resolution must be >= 10, got " + std::to_string(resolution));
  }
  const int n = inst.n_receivers;
  const double phi = std::asin(std::pow(inst.overlap, 1.0 / n));
  const double half_pi = 0.5 * std::numbers::pi;

  SuccessPair best{1.0, 1.0};
  double best_joint = -1.0;
  auto consider = [&](double p1, double p2) {
    const double joint = inst.prior_1 * std::pow(p1, n) + inst.prior_2 * std::pow(p2, n);
    if (joint > best_joint) {
      best_joint = joint;
      best = {p1, p2};
    }
  };

  for (int k = 0; k < resolution; ++k) {
    const double theta = half_pi * (static_cast<double>(k) / (resolution - 1));
    const double c1 = std::cos(theta);
    const double p1 = c1 * c1;
    if (theta <= phi) {
      const double c2 = std::cos(phi - theta);
      consider(p1, c2 * c2);
    }
    if (theta >= half_pi - phi) {
      const double c2 = std::cos(phi + theta);
      consider(p1, c2 * c2);
    }
  }
  return uniform_strategy(inst, best, Strategy::kJbgOptimal);
}

FullChainSolution optimize_full_chain(const DiscriminationInstance& inst, int resolution) {
  inst.validate();
  if (inst.n_receivers != 2 && inst.n_receivers != 3) {
    throw UnsupportedReceivers("full-chain search supports N in {2, 3}, got " +
                               std::to_string(inst.n_receivers));
  }
  if (resolution < 20) {
    throw DomainError("full-chain resolution must be >= 20, got " + std::to_string(resolution));
  }
  return FullChainSearch(inst, resolution).result();
}

double find_sb(int n_receivers, const OptimizerConfig& cfg) {
  if (n_receivers < 2) {
    throw UnsupportedReceivers("s_b is defined for N >= 2, got " + std::to_string(n_receivers));
  }
  cfg.validate();
  auto exceeds = [&](double s) {
    const auto inst = DiscriminationInstance::make(s, 0.5, n_receivers);
    const double gap =
        optimize_reduced(inst, cfg).joint_success - equal_prior_jbg(s, n_receivers).joint_success;
    return gap > cfg.candidate_tolerance;
  };

  double lo = 0.0;
  double hi = 1.0;
  for (int j = 1; j <= kSbScanPoints; ++j) {
    const double s = static_cast<double>(j) / kSbScanPoints;
    if (exceeds(s)) {
      hi = s;
      break;
    }
    lo = s;
  }
  while (hi - lo > kSbTolerance) {
    const double mid = 0.5 * (lo + hi);
    if (exceeds(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

StrategyResult solve_strategy(const DiscriminationInstance& inst, Strategy strategy,
                              const OptimizerConfig& cfg) {
  switch (strategy) {
    case Strategy::kJbgOptimal:
      return optimize_reduced(inst, cfg);
    case Strategy::kJbgSymmetricAnalytic: {
      inst.validate();
      const StrategyResult symmetric = equal_prior_jbg(inst.overlap, inst.n_receivers);
      return uniform_strategy(inst, symmetric.stages.front(), Strategy::kJbgSymmetricAnalytic);
    }
    case Strategy::kIndividualGreedy:
      return individual_greedy(inst);
    case Strategy::kBoundary:
      return boundary_solution(inst);
  }
  throw DomainError("unknown strategy");
}

}  // namespace jbg

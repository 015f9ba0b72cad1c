#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "jbg/core_math.hpp"
#include "jbg/errors.hpp"
#include "oracles.hpp"

using namespace jbg;
using doctest::Approx;

TEST_CASE("distinguishability examples") {
  CHECK(distinguishability(1.0, 1.0) == 0.0);
  CHECK(distinguishability(0.5, 0.5) == Approx(1.0).epsilon(1e-15));
  CHECK(distinguishability(1.0, 0.0) == 1.0);
  const double p = 0.5 * (1.0 + std::sqrt(1.0 - 0.25));
  CHECK(distinguishability(p, p) == Approx(0.5).epsilon(1e-14));
  // Six-digit rounded input from the symmetric point.
  CHECK(std::abs(distinguishability(0.933013, 0.933013) - 0.5) < 1e-5);
}

TEST_CASE("distinguishability rejects out-of-range probabilities") {
  CHECK_THROWS_AS(distinguishability(1.1, 0.5), DomainError);
  CHECK_THROWS_AS(distinguishability(0.5, -1e-6), DomainError);
  CHECK_NOTHROW(distinguishability(1.0 + 5e-13, 0.5));
}

TEST_CASE("distinguishability is symmetric and peaks on the diagonal at one half") {
  testing::Sampler rng(11);
  for (int i = 0; i < 1000; ++i) {
    const double a = rng.uniform(0.0, 1.0);
    const double b = rng.uniform(0.0, 1.0);
    CHECK(distinguishability(a, b) == distinguishability(b, a));
    CHECK(distinguishability(a, a) == Approx(2.0 * std::sqrt(a * (1.0 - a))).epsilon(1e-14));
    CHECK(distinguishability(a, a) <= 1.0);
  }
}

TEST_CASE("equal_prior_jbg closed form") {
  SUBCASE("orthogonal states") {
    const StrategyResult r = equal_prior_jbg(0.0, 3);
    CHECK(r.stages.size() == 3);
    for (const SuccessPair& st : r.stages) CHECK(st == SuccessPair{1.0, 1.0});
    CHECK(r.joint_success == 1.0);
  }
  SUBCASE("identical states") {
    const StrategyResult r = equal_prior_jbg(1.0, 2);
    for (const SuccessPair& st : r.stages) CHECK(st == SuccessPair{0.5, 0.5});
    CHECK(r.joint_success == Approx(0.25).epsilon(1e-15));
  }
  SUBCASE("s = 0.25, N = 2") {
    const StrategyResult r = equal_prior_jbg(0.25, 2);
    CHECK(r.stages[0].p1 == Approx(0.9330127018922193).epsilon(1e-14));
    CHECK(r.joint_success == Approx(0.8705127018922193).epsilon(1e-14));
    REQUIRE(r.overlaps.size() == 2);
    CHECK(r.overlaps[0] == 0.25);
    CHECK(r.overlaps[1] == Approx(0.5).epsilon(1e-15));
    CHECK(r.strategy == Strategy::kJbgSymmetricAnalytic);
  }
  SUBCASE("single receiver is Helstrom exactly") {
    for (double s = 0.0; s <= 1.0; s += 0.01) {
      CHECK(equal_prior_jbg(s, 1).joint_success == 0.5 * (1.0 + std::sqrt(1.0 - s * s)));
    }
  }
  SUBCASE("overlaps follow s^((N-k+1)/N)") {
    const StrategyResult r = equal_prior_jbg(0.3, 4);
    for (int k = 1; k <= 4; ++k) {
      CHECK(r.overlaps[k - 1] == Approx(std::pow(0.3, (4.0 - k + 1.0) / 4.0)).epsilon(1e-15));
    }
    CHECK_NOTHROW(validate_result(DiscriminationInstance::make(0.3, 0.5, 4), r));
  }
  CHECK_THROWS_AS(equal_prior_jbg(-0.1, 2), DomainError);
  CHECK_THROWS_AS(equal_prior_jbg(0.5, 0), DomainError);
}

TEST_CASE("p2_from_p1 examples") {
  const double s_eff = 0.5;
  const double sym = 0.5 * (1.0 + std::sqrt(1.0 - s_eff * s_eff));
  CHECK(p2_from_p1(sym, s_eff) == Approx(sym).epsilon(1e-14));
  CHECK(p2_from_p1(1.0, s_eff) == Approx(1.0 - s_eff * s_eff).epsilon(1e-15));

  const double p2 = p2_from_p1(0.9, 0.5);
  CHECK(p2 == Approx(0.9598076211353316).epsilon(1e-14));
  CHECK(std::abs(testing::overlap_budget(0.9, p2) - 0.5) < 1e-10);
  CHECK(p2 == Approx(testing::p2_by_bisection(0.9, 0.5)).epsilon(1e-12));

  CHECK_THROWS_AS(p2_from_p1(1.5, 0.5), DomainError);
  CHECK_THROWS_AS(p2_from_p1(0.5, -0.5), DomainError);
}

TEST_CASE("p2_from_p1 round trip over the feasible region") {
  // The larger root exists only for p1 >= 1 - s_eff^2.
  int checked = 0;
  for (int i = 0; i < 1000; ++i) {
    const double s_eff = (i % 40) / 39.0;
    const double frac = (i / 40) / 24.0;
    const double p1 = 1.0 - s_eff * s_eff * (1.0 - frac);
    const double p2 = p2_from_p1(p1, s_eff);
    CHECK(p2 >= 0.0);
    CHECK(p2 <= 1.0);
    CHECK(std::abs(distinguishability(p1, p2) - s_eff) <= 1e-10);
    ++checked;
  }
  CHECK(checked == 1000);
}

TEST_CASE("minus root of the constraint") {
  // Feasible for p1 <= s_eff^2.
  for (double s_eff : {0.3, 0.6, 0.9}) {
    for (double frac : {0.0, 0.25, 0.5, 1.0}) {
      const double p1 = s_eff * s_eff * frac;
      const double p2 = detail::p2_from_p1_minus(p1, s_eff);
      CHECK(std::abs(testing::overlap_budget(p1, p2) - s_eff) < 1e-10);
      CHECK(p2 <= p2_from_p1(p1, s_eff) + 1e-15);
    }
  }
}

TEST_CASE("stationarity residual") {
  SUBCASE("symmetric point is a root for equal priors") {
    for (int i = 0; i < 100; ++i) {
      const double s = 0.005 + 0.99 * i / 99.0;
      for (int n : {1, 2, 3}) {
        const auto inst = DiscriminationInstance::make(s, 0.5, n);
        const double s_eff = inst.effective_overlap();
        const double p = 0.5 * (1.0 + std::sqrt(1.0 - s_eff * s_eff));
        CHECK(std::abs(stationarity_residual(p, inst)) <= 1e-9);
      }
    }
  }
  SUBCASE("matches the finite-difference slope of the reduced objective") {
    testing::Sampler rng(7);
    for (int i = 0; i < 200; ++i) {
      const double s = rng.uniform(0.05, 0.95);
      const double eta = rng.uniform(0.05, 0.95);
      const int n = rng.integer(1, 4);
      const auto inst = DiscriminationInstance::make(s, eta, n);
      const double phi = std::asin(inst.effective_overlap());
      const double theta = rng.uniform(0.02, 0.98) * phi;
      const double p1 = std::cos(theta) * std::cos(theta);
      const double expected = -testing::objective_slope(theta, s, eta, n) / (2.0 * n);
      const double got = stationarity_residual(p1, inst);
      CHECK(std::abs(got - expected) <= 1e-4 * std::abs(expected));
    }
  }
  SUBCASE("vanishing first prior puts the root at p1 = 1 - s_eff^2") {
    const auto inst = DiscriminationInstance::make(0.5, 0.0, 2);
    const double root = 1.0 - 0.5;
    CHECK(std::abs(stationarity_residual(root, inst)) < 1e-15);
    CHECK(stationarity_residual(root - 0.01, inst) * stationarity_residual(root + 0.01, inst) < 0);
  }
  SUBCASE("open interval only") {
    const auto inst = DiscriminationInstance::make(0.5, 0.5, 2);
    CHECK_THROWS_AS(stationarity_residual(0.0, inst), DomainError);
    CHECK_THROWS_AS(stationarity_residual(1.0, inst), DomainError);
  }
}

TEST_CASE("individual_greedy") {
  SUBCASE("equal priors reduce to the symmetric point") {
    for (double s : {0.1, 0.5, 0.8}) {
      const auto r = individual_greedy(DiscriminationInstance::make(s, 0.5, 2));
      const double p = 0.5 * (1.0 + std::sqrt(1.0 - std::pow(s, 2.0 / 2)));
      CHECK(r.stages[0].p1 == Approx(p).epsilon(1e-14));
      CHECK(r.stages[0].p2 == Approx(p).epsilon(1e-14));
    }
  }
  SUBCASE("certain prior") {
    const auto r = individual_greedy(DiscriminationInstance::make(0.5, 1.0, 2));
    CHECK(r.stages[0].p1 == 1.0);
    CHECK(r.stages[0].p2 == Approx(1.0 - std::pow(0.5, 2.0 / 2)).epsilon(1e-15));
  }
  SUBCASE("s = 0.5, N = 2, eta_1 = 0.3") {
    const auto inst = DiscriminationInstance::make(0.5, 0.3, 2);
    const auto r = individual_greedy(inst);
    // Frozen from the closed form; the average must reproduce Helstrom.
    CHECK(r.stages[0].p1 == Approx(0.6969596492895839).epsilon(1e-13));
    CHECK(r.stages[0].p2 == Approx(0.9595725150090288).epsilon(1e-13));
    const double average = 0.3 * r.stages[0].p1 + 0.7 * r.stages[0].p2;
    CHECK(std::abs(average - testing::helstrom(0.3, std::sqrt(0.5))) <= 1e-12);
    CHECK(std::abs(average - 0.8807886552931954) <= 1e-12);
  }
  SUBCASE("degenerate 0/0 limit") {
    const auto r = individual_greedy(DiscriminationInstance::make(1.0, 0.5, 3));
    CHECK(r.stages[0] == SuccessPair{0.5, 0.5});
  }
  SUBCASE("identical states put all weight on the likelier one, exactly") {
    for (double eta : {0.1578947368421053, 0.3684210526315789, 0.7368421052631579}) {
      const auto r = individual_greedy(DiscriminationInstance::make(1.0, eta, 2));
      const double favoured = eta > 0.5 ? r.stages[0].p1 : r.stages[0].p2;
      const double other = eta > 0.5 ? r.stages[0].p2 : r.stages[0].p1;
      CHECK(favoured + other == 1.0);
      CHECK(other <= 1e-15);
    }
  }
  SUBCASE("exchanging the priors mirrors the pair exactly") {
    testing::Sampler rng(31);
    for (int i = 0; i < 100; ++i) {
      const auto inst = DiscriminationInstance::make(rng.uniform(0.0, 1.0),
                                                     rng.uniform(0.0, 1.0), rng.integer(1, 4));
      const SuccessPair a = individual_greedy(inst).stages[0];
      const SuccessPair b = individual_greedy(inst.swapped()).stages[0];
      CHECK(a.p1 == b.p2);
      CHECK(a.p2 == b.p1);
    }
  }
  SUBCASE("per-stage average is Helstrom across a grid") {
    for (int n = 1; n <= 4; ++n) {
      for (double s = 0.0; s < 1.0; s += 0.07) {
        for (double eta = 0.0; eta <= 1.0; eta += 0.1) {
          const auto inst = DiscriminationInstance::make(s, eta, n);
          const auto r = individual_greedy(inst);
          const double avg = inst.prior_1 * r.stages[0].p1 + inst.prior_2 * r.stages[0].p2;
          CHECK(std::abs(avg - testing::helstrom(eta, std::pow(s, 1.0 / n))) <= 1e-12);
          CHECK_NOTHROW(validate_result(inst, r));
        }
      }
    }
  }
}

TEST_CASE("boundary_solution") {
  CHECK(boundary_solution(DiscriminationInstance::make(0.5, 0.5, 2)).joint_success ==
        Approx(0.625).epsilon(1e-15));
  for (int n = 1; n <= 3; ++n) {
    CHECK(boundary_solution(DiscriminationInstance::make(0.0, 0.3, n)).joint_success == 1.0);
  }
  const auto r = boundary_solution(DiscriminationInstance::make(1.0, 0.3, 1));
  CHECK(r.joint_success == Approx(0.7).epsilon(1e-15));
  CHECK(r.stages[0] == SuccessPair{0.0, 1.0});
  const auto mirror = boundary_solution(DiscriminationInstance::make(0.4, 0.8, 2));
  CHECK(mirror.stages[0].p1 == 1.0);
  CHECK_NOTHROW(validate_result(DiscriminationInstance::make(0.4, 0.8, 2), mirror));
}

TEST_CASE("instance validation") {
  CHECK_THROWS_AS(DiscriminationInstance::make(1.01, 0.5, 2), DomainError);
  CHECK_THROWS_AS(DiscriminationInstance::make(0.5, -0.1, 2), DomainError);
  CHECK_THROWS_AS(DiscriminationInstance::make(0.5, 0.5, 0), DomainError);
  DiscriminationInstance bad{0.5, 0.5, 0.6, 2};
  CHECK_THROWS_AS(bad.validate(), DomainError);
}

TEST_CASE("strategy names") {
  for (Strategy s : {Strategy::kJbgOptimal, Strategy::kJbgSymmetricAnalytic,
                     Strategy::kIndividualGreedy, Strategy::kBoundary}) {
    CHECK(parse_strategy(to_string(s)) == s);
  }
  CHECK_FALSE(parse_strategy("jbg_optimal").has_value());
}

TEST_CASE("validate_result catches inconsistent results") {
  const auto inst = DiscriminationInstance::make(0.25, 0.5, 2);
  StrategyResult r = equal_prior_jbg(0.25, 2);
  r.joint_success += 1e-9;
  CHECK_THROWS_AS(validate_result(inst, r), DomainError);
  r = equal_prior_jbg(0.25, 2);
  r.stages[0].p1 = 0.99;
  r.joint_success = joint_success(inst, r.stages);
  CHECK_THROWS_AS(validate_result(inst, r), DomainError);
}

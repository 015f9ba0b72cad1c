#include "jbg/cli.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "jbg/errors.hpp"
#include "jbg/optimizer.hpp"
#include "jbg/povm.hpp"
#include "jbg/serialize.hpp"
#include "jbg/simulator.hpp"

namespace jbg::cli {

namespace {

constexpr double kZThreshold = 4.0;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Range {
  double start = 0.0;
  double stop = 1.0;
  int points = 0;

  double at(int i) const {
    if (i + 1 == points) return stop;
    return start + (stop - start) * (static_cast<double>(i) / (points - 1));
  }
};

Strategy strategy_from_flag(const std::string& name) {
  const auto strategy = parse_strategy(name);
  if (!strategy) throw UsageError("unknown strategy '" + name + "'");
  return *strategy;
}

std::vector<Strategy> strategies_from_list(const std::string& list) {
  std::vector<Strategy> strategies;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const Strategy s = strategy_from_flag(item);
    if (std::find(strategies.begin(), strategies.end(), s) == strategies.end()) {
      strategies.push_back(s);
    }
  }
  if (strategies.empty()) throw UsageError("--strategies must name at least one strategy");
  return strategies;
}

void require_range(const Range& r, const char* name) {
  if (!(r.start >= 0.0 && r.start <= 1.0 && r.stop >= 0.0 && r.stop <= 1.0)) {
    throw UsageError(std::string(name) + " range must lie within [0,1]");
  }
  if (r.points < 2) throw UsageError(std::string(name) + " points must be >= 2");
}

struct InstanceFlags {
  double overlap = 0.0;
  double prior = 0.5;
  int receivers = 1;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--overlap", overlap, "Overlap s = <psi_1|psi_2>")
        ->required()
        ->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--prior", prior, "Prior eta_1 of the first state")
        ->capture_default_str()
        ->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--receivers", receivers, "Number of receivers N")
        ->required()
        ->check(CLI::Range(1, INT_MAX));
  }

  DiscriminationInstance instance() const {
    return DiscriminationInstance::make(overlap, prior, receivers);
  }
};

int cmd_optimize(const InstanceFlags& flags, const std::string& strategy_name, bool emit_stages,
                 std::ostream& out) {
  const DiscriminationInstance inst = flags.instance();
  const StrategyResult result = solve_strategy(inst, strategy_from_flag(strategy_name));
  std::vector<MeasurementStage> chain;
  if (emit_stages) chain = build_chain(inst, result);
  out << strategy_document(inst, result, chain).dump(2) << '\n';
  return kSuccess;
}

struct SweepFlags {
  std::string variable;
  double overlap = 0.5;
  double prior = 0.5;
  int receivers = 1;
  int points = 101;
  Range overlap_range;
  Range prior_range;
  std::string strategies = "JBG_OPTIMAL";
  std::string out_path;
};

void write_row(std::ostream& csv, std::span<const double> swept,
               const DiscriminationInstance& inst, const std::vector<Strategy>& strategies,
               bool with_gap) {
  bool first = true;
  auto cell = [&](double v) {
    if (!first) csv << ',';
    csv << format_double(v);
    first = false;
  };
  for (double v : swept) cell(v);
  std::optional<double> jbg;
  std::optional<double> greedy;
  for (Strategy s : strategies) {
    const StrategyResult r = solve_strategy(inst, s);
    cell(r.joint_success);
    cell(r.stages.front().p1);
    cell(r.stages.front().p2);
    if (s == Strategy::kJbgOptimal) jbg = r.joint_success;
    if (s == Strategy::kIndividualGreedy) greedy = r.joint_success;
  }
  if (with_gap) cell(std::abs(*jbg - *greedy));
  csv << '\n';
}

int cmd_sweep(SweepFlags flags, std::ostream& err) {
  if (flags.overlap_range.points == 0) flags.overlap_range.points = flags.points;
  if (flags.prior_range.points == 0) flags.prior_range.points = flags.points;
  const bool sweep_overlap = flags.variable != "prior";
  const bool sweep_prior = flags.variable != "overlap";
  if (sweep_overlap) require_range(flags.overlap_range, "overlap");
  if (sweep_prior) require_range(flags.prior_range, "prior");
  const std::vector<Strategy> strategies = strategies_from_list(flags.strategies);
  auto has = [&](Strategy s) {
    return std::find(strategies.begin(), strategies.end(), s) != strategies.end();
  };
  const bool with_gap = has(Strategy::kJbgOptimal) && has(Strategy::kIndividualGreedy);
  // Validate the fixed parameters before touching the filesystem.
  DiscriminationInstance::make(flags.overlap, flags.prior, flags.receivers);

  std::ofstream csv(flags.out_path, std::ios::binary | std::ios::trunc);
  if (!csv) {
    err << "error: cannot open '" << flags.out_path << "' for writing\n";
    return kIoError;
  }

  if (sweep_overlap) csv << "overlap";
  if (sweep_overlap && sweep_prior) csv << ',';
  if (sweep_prior) csv << "prior_1";
  for (Strategy s : strategies) {
    const std::string name(to_string(s));
    csv << ',' << name << "_joint_success," << name << "_p1," << name << "_p2";
  }
  if (with_gap) csv << ",abs_gap_jbg_individual";
  csv << '\n';

  const int outer = sweep_overlap ? flags.overlap_range.points : 1;
  const int inner = sweep_prior ? flags.prior_range.points : 1;
  std::vector<double> swept;
  for (int i = 0; i < outer; ++i) {
    for (int j = 0; j < inner; ++j) {
      const double s = sweep_overlap ? flags.overlap_range.at(i) : flags.overlap;
      const double eta = sweep_prior ? flags.prior_range.at(j) : flags.prior;
      swept.clear();
      if (sweep_overlap) swept.push_back(s);
      if (sweep_prior) swept.push_back(eta);
      write_row(csv, swept, DiscriminationInstance::make(s, eta, flags.receivers), strategies,
                with_gap);
    }
  }
  csv.flush();
  if (!csv) {
    err << "error: failed writing '" << flags.out_path << "'\n";
    return kIoError;
  }
  return kSuccess;
}

int cmd_simulate(const InstanceFlags& flags, const std::string& strategy_name,
                 std::uint64_t trials, std::uint64_t seed, std::ostream& out) {
  const DiscriminationInstance inst = flags.instance();
  const Strategy strategy = strategy_from_flag(strategy_name);
  const StrategyResult result = solve_strategy(inst, strategy);
  const std::vector<MeasurementStage> chain = build_chain(inst, result);
  const SimReport report = run_chain_simulation(inst, chain, {trials, seed, true});
  out << simulation_document(inst, strategy, report).dump(2) << '\n';
  return std::abs(report.z_score) <= kZThreshold ? kSuccess : kStatisticalFailure;
}

int cmd_find_sb(int receivers, std::ostream& out) {
  const double sb = find_sb(receivers);
  const Json doc = {{"schema_version", kSchemaVersion}, {"n", receivers}, {"s_b", sb}};
  out << doc.dump(2) << '\n';
  return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sequential joint-best-guess discrimination of two qubit states", "jbg"};
  app.require_subcommand(1);

  InstanceFlags optimize_flags;
  std::string optimize_strategy = "JBG_OPTIMAL";
  bool emit_stages = false;
  CLI::App* optimize = app.add_subcommand("optimize", "Solve one instance and print the strategy");
  optimize_flags.add_to(optimize);
  optimize->add_option("--strategy", optimize_strategy)->capture_default_str();
  optimize->add_flag("--emit-stages", emit_stages, "Include the detection operators");

  SweepFlags sweep_flags;
  CLI::App* sweep = app.add_subcommand("sweep", "Tabulate strategies over overlap and/or prior");
  sweep->add_option("--variable", sweep_flags.variable)
      ->required()
      ->check(CLI::IsMember({"overlap", "prior", "both"}));
  sweep->add_option("--overlap", sweep_flags.overlap, "Fixed overlap when not swept")
      ->capture_default_str()
      ->check(CLI::Range(0.0, 1.0));
  sweep->add_option("--prior", sweep_flags.prior, "Fixed eta_1 when not swept")
      ->capture_default_str()
      ->check(CLI::Range(0.0, 1.0));
  sweep->add_option("--receivers", sweep_flags.receivers)->required()->check(CLI::Range(1, INT_MAX));
  sweep->add_option("--points", sweep_flags.points, "Points per swept variable")
      ->capture_default_str();
  sweep->add_option("--overlap-start", sweep_flags.overlap_range.start)->capture_default_str();
  sweep->add_option("--overlap-stop", sweep_flags.overlap_range.stop)->capture_default_str();
  sweep->add_option("--overlap-points", sweep_flags.overlap_range.points);
  sweep->add_option("--prior-start", sweep_flags.prior_range.start)->capture_default_str();
  sweep->add_option("--prior-stop", sweep_flags.prior_range.stop)->capture_default_str();
  sweep->add_option("--prior-points", sweep_flags.prior_range.points);
  sweep->add_option("--strategies", sweep_flags.strategies, "Comma-separated strategy names")
      ->capture_default_str();
  sweep->add_option("--out", sweep_flags.out_path, "CSV output path")->required();

  InstanceFlags simulate_flags;
  std::string simulate_strategy = "JBG_OPTIMAL";
  std::uint64_t trials = 1'000'000;
  std::uint64_t seed = 0;
  CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo run of the measurement chain");
  simulate_flags.add_to(simulate);
  simulate->add_option("--strategy", simulate_strategy)->capture_default_str();
  simulate->add_option("--trials", trials)->capture_default_str()->check(CLI::PositiveNumber);
  simulate->add_option("--seed", seed)->required();

  int sb_receivers = 2;
  CLI::App* sb = app.add_subcommand("find-sb", "Overlap where the symmetric solution stops being optimal");
  sb->add_option("--receivers", sb_receivers)->required()->check(CLI::Range(2, INT_MAX));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }

  try {
    if (optimize->parsed()) return cmd_optimize(optimize_flags, optimize_strategy, emit_stages, out);
    if (sweep->parsed()) return cmd_sweep(sweep_flags, err);
    if (simulate->parsed()) {
      return cmd_simulate(simulate_flags, simulate_strategy, trials, seed, out);
    }
    if (sb->parsed()) return cmd_find_sb(sb_receivers, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const UnsupportedReceivers& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }
  return kUsageError;
}

}  // namespace jbg::cli

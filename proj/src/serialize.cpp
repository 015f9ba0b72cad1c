#include "jbg/serialize.hpp"

#include <array>
#include <charconv>
#include <cmath>

#include "jbg/errors.hpp"

namespace jbg {

namespace {

Json complex_pair(const Complex& z) { return Json::array({z.real(), z.imag()}); }

Json state_json(const QubitState& v) {
  return Json::array({complex_pair(v[0]), complex_pair(v[1])});
}

Json matrix_json(const Matrix2& m) {
  Json flat = Json::array();
  for (std::size_t r = 0; r < 2; ++r) {
    for (std::size_t c = 0; c < 2; ++c) flat.push_back(complex_pair(m(r, c)));
  }
  return flat;
}

// z-scores can be infinite; JSON has no representation for that.
Json finite_or_null(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

Json rate_json(const RateEstimate& est) {
  return {
      {"trials", est.trials},       {"successes", est.successes},
      {"empirical", est.empirical}, {"predicted", est.predicted},
      {"std_error", est.std_error}, {"z_score", finite_or_null(est.z_score)},
  };
}

}  // namespace

std::string format_double(double value) {
  std::array<char, 64> buf{};
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), end);
}

Json to_json(const DiscriminationInstance& inst) {
  return {
      {"overlap", inst.overlap},
      {"prior_1", inst.prior_1},
      {"prior_2", inst.prior_2},
      {"n_receivers", inst.n_receivers},
  };
}

Json to_json(const SuccessPair& pair) { return {{"p1", pair.p1}, {"p2", pair.p2}}; }

Json to_json(const MeasurementStage& stage) {
  return {
      {"detectors", Json::array({matrix_json(stage.detectors[0]), matrix_json(stage.detectors[1])})},
      {"inputs", Json::array({state_json(stage.inputs[0]), state_json(stage.inputs[1])})},
      {"outputs", Json::array({state_json(stage.outputs[0]), state_json(stage.outputs[1])})},
      {"success", to_json(stage.success)},
      {"in_overlap", stage.in_overlap},
      {"out_overlap", stage.out_overlap},
  };
}

Json strategy_document(const DiscriminationInstance& inst, const StrategyResult& result,
                       const std::vector<MeasurementStage>& chain) {
  Json stages = Json::array();
  for (const SuccessPair& pair : result.stages) stages.push_back(to_json(pair));
  Json doc = {
      {"schema_version", kSchemaVersion},
      {"instance", to_json(inst)},
      {"strategy", std::string(to_string(result.strategy))},
      {"joint_success", result.joint_success},
      {"stages", std::move(stages)},
      {"overlaps", result.overlaps},
  };
  if (!chain.empty()) {
    Json measurement = Json::array();
    for (const MeasurementStage& stage : chain) measurement.push_back(to_json(stage));
    doc["measurement_stages"] = std::move(measurement);
  }
  return doc;
}

Json simulation_document(const DiscriminationInstance& inst, Strategy strategy,
                         const SimReport& report) {
  Json receivers = Json::array();
  for (std::size_t k = 0; k < report.per_receiver.size(); ++k) {
    const auto& given = report.per_receiver[k].given_state;
    receivers.push_back({
        {"receiver", k + 1},
        {"given_state_1", rate_json(given[0])},
        {"given_state_2", rate_json(given[1])},
    });
  }
  Json doc = {
      {"schema_version", kSchemaVersion},
      {"instance", to_json(inst)},
      {"strategy", std::string(to_string(strategy))},
      {"rng",
       {
           {"algorithm", report.rng_algorithm},
           {"stream_rule", "trial t draws from state mix64(seed ^ mix64(t + 1))"},
           {"seed", report.seed},
       }},
      {"trials", report.trials},
      {"joint_successes", report.joint_successes},
      {"empirical_joint", report.empirical_joint},
      {"std_error", report.std_error},
      {"predicted_joint", report.predicted_joint},
      {"z_score", finite_or_null(report.z_score)},
      {"per_state_counts", report.per_state_counts},
  };
  if (!report.per_receiver.empty()) doc["per_receiver"] = std::move(receivers);
  return doc;
}

ParsedStrategy parse_strategy_document(const Json& doc) {
  if (doc.at("schema_version").get<int>() != kSchemaVersion) {
    throw DomainError("unsupported schema_version");
  }
  ParsedStrategy parsed;
  const Json& inst = doc.at("instance");
  parsed.instance.overlap = inst.at("overlap").get<double>();
  parsed.instance.prior_1 = inst.at("prior_1").get<double>();
  parsed.instance.prior_2 = inst.at("prior_2").get<double>();
  parsed.instance.n_receivers = inst.at("n_receivers").get<int>();

  const auto label = doc.at("strategy").get<std::string>();
  const auto strategy = parse_strategy(label);
  if (!strategy) throw DomainError("unknown strategy '" + label + "'");
  parsed.result.strategy = *strategy;
  parsed.result.joint_success = doc.at("joint_success").get<double>();
  parsed.result.overlaps = doc.at("overlaps").get<std::vector<double>>();
  for (const Json& stage : doc.at("stages")) {
    parsed.result.stages.push_back({stage.at("p1").get<double>(), stage.at("p2").get<double>()});
  }
  return parsed;
}

}  // namespace jbg

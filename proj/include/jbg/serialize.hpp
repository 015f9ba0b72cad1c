#pragma once

// JSON and CSV encodings used by the command-line tool. All JSON documents
// carry "schema_version": 1. Doubles are written in shortest round-trip form.

#include <string>

#include "json.hpp"
#include "jbg/core_math.hpp"
#include "jbg/povm.hpp"
#include "jbg/simulator.hpp"

namespace jbg {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// Shortest decimal string that parses back to exactly `value`.
std::string format_double(double value);

Json to_json(const DiscriminationInstance& inst);
Json to_json(const SuccessPair& pair);

/// Matrices are flattened row-major as [[re, im], [re, im], [re, im], [re, im]];
/// states as [[re, im], [re, im]].
Json to_json(const MeasurementStage& stage);

/// Document printed by `optimize`. `chain` is emitted as "measurement_stages"
/// when non-empty.
Json strategy_document(const DiscriminationInstance& inst, const StrategyResult& result,
                       const std::vector<MeasurementStage>& chain = {});

/// Document printed by `simulate`.
Json simulation_document(const DiscriminationInstance& inst, Strategy strategy,
                         const SimReport& report);

struct ParsedStrategy {
  DiscriminationInstance instance;
  StrategyResult result;
};

/// Reads back a strategy_document. Throws nlohmann::json::exception on schema
/// mismatch and DomainError on an unknown strategy label.
ParsedStrategy parse_strategy_document(const Json& doc);

}  // namespace jbg

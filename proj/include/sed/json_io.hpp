#pragma once

#include <vector>

#include "json.hpp"

#include "sed/elicitation.hpp"
#include "sed/fusion.hpp"
#include "sed/resolution.hpp"

namespace sed::json_io {

using nlohmann::json;

// Subsets travel as arrays of hypothesis labels.
json to_json(const Frame& frame, Subset s);
Subset subset_from_json(const Frame& frame, const json& j);

json to_json(const Frame& frame, const ExceptionCondition& e);
ExceptionCondition exception_from_json(const Frame& frame, const json& j);

json to_json(const Frame& frame, const Argument& arg);
Argument argument_from_json(const Frame& frame, const json& j);

json to_json(const EvidenceItem& item);

json to_json(const MassFunction& m);
MassFunction mass_from_json(const FramePtr& frame, const json& j);
/// Per-hypothesis belief/plausibility rows.
json belief_table(const MassFunction& m);

json to_json(const Frame& frame, const AssumptionRecord& r);
json to_json(const Ledger& ledger);

json to_json(const FusionResult& result);
json to_json(const CulpabilityReport& report);
json to_json(const ResolutionStep& step);
json to_json(const ResolutionTrace& trace);
json to_json(const QuestionValue& value);
json to_json(const ElicitationSession& session);

/// Question files: {"answers": [{"probability": p, "argument": {...}}, ...]}; answer 0 is the positive one.
std::vector<Answer> question_from_json(const Frame& frame, const json& j);

}  // namespace sed::json_io

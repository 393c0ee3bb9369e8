#include "sed/json_io.hpp"

#include "sed/errors.hpp"

namespace sed::json_io {

namespace {

const json& field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) {
        throw Error(ErrorCode::ValidationFailed, std::string("missing field '") + key + "'");
    }
    return j.at(key);
}

template <typename T>
T get(const json& j, const char* key) {
    try {
        return field(j, key).get<T>();
    } catch (const json::exception& e) {
        throw Error(ErrorCode::ValidationFailed, std::string("field '") + key + "': " + e.what());
    }
}

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
    if (!j.is_object() || !j.contains(key)) return fallback;
    return get<T>(j, key);
}

}  // namespace

json to_json(const Frame& frame, Subset s) { return frame.labels_of(s); }

Subset subset_from_json(const Frame& frame, const json& j) {
    if (j.is_string()) return frame.parse(j.get<std::string>());
    if (!j.is_array()) throw Error(ErrorCode::ValidationFailed, "a subset must be an array of labels");
    std::vector<std::string> labels;
    for (const auto& item : j) {
        if (!item.is_string()) throw Error(ErrorCode::ValidationFailed, "subset labels must be strings");
        labels.push_back(item.get<std::string>());
    }
    return frame.subset(labels);
}

json to_json(const Frame& frame, const ExceptionCondition& e) {
    json impact = {{"kind", to_string(e.impact.kind)}};
    if (e.impact.kind == ImpactKind::Rebut) impact["target"] = to_json(frame, e.impact.target);
    return {{"id", e.id},
            {"description", e.description},
            {"probability", e.probability},
            {"impact", impact},
            {"status", to_string(e.status)}};
}

ExceptionCondition exception_from_json(const Frame& frame, const json& j) {
    ExceptionCondition e;
    e.id = get<std::string>(j, "id");
    e.description = get_or<std::string>(j, "description", "");
    e.probability = get<double>(j, "probability");
    const auto& impact = field(j, "impact");
    e.impact.kind = parse_impact_kind(get<std::string>(impact, "kind"));
    if (e.impact.kind == ImpactKind::Rebut) e.impact.target = subset_from_json(frame, field(impact, "target"));
    e.status = parse_exception_status(get_or<std::string>(j, "status", "ASSUMED_FALSE"));
    return e;
}

json to_json(const Frame& frame, const Argument& arg) {
    json exceptions = json::array();
    for (const auto& e : arg.exceptions) exceptions.push_back(to_json(frame, e));
    return {{"id", arg.id},
            {"evidence", arg.evidence_id},
            {"core", to_json(frame, arg.core_position)},
            {"base_support", arg.base_support},
            {"exceptions", exceptions}};
}

Argument argument_from_json(const Frame& frame, const json& j) {
    Argument arg;
    arg.id = get<std::string>(j, "id");
    arg.evidence_id = get_or<std::string>(j, "evidence", "");
    arg.core_position = subset_from_json(frame, field(j, "core"));
    arg.base_support = get_or<double>(j, "base_support", 1.0);
    if (j.contains("exceptions")) {
        const auto& list = j.at("exceptions");
        if (!list.is_array()) throw Error(ErrorCode::ValidationFailed, "'exceptions' must be an array");
        for (const auto& e : list) arg.exceptions.push_back(exception_from_json(frame, e));
    }
    validate_argument(frame, arg);
    return arg;
}

json to_json(const EvidenceItem& item) {
    return {{"id", item.id}, {"description", item.description}, {"reported_at", item.reported_at}};
}

json to_json(const MassFunction& m) {
    json out = json::array();
    for (const auto& [subset, value] : m.focal()) {
        out.push_back({{"set", to_json(m.frame(), subset)}, {"mass", value}});
    }
    return out;
}

MassFunction mass_from_json(const FramePtr& frame, const json& j) {
    if (!j.is_array()) throw Error(ErrorCode::ValidationFailed, "a mass function must be an array of {set, mass}");
    std::vector<std::pair<Subset, double>> assignments;
    for (const auto& item : j) assignments.emplace_back(subset_from_json(*frame, field(item, "set")), get<double>(item, "mass"));
    return mass_new(frame, assignments);
}

json belief_table(const MassFunction& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.frame().size(); ++i) {
        auto s = Subset::singleton(i);
        rows.push_back({{"hypothesis", m.frame().label(i)}, {"belief", belief(m, s)}, {"plausibility", plausibility(m, s)}});
    }
    return rows;
}

json to_json(const Frame& frame, const AssumptionRecord& r) {
    json out = {{"id", r.id}, {"kind", to_string(r.kind)}, {"state", to_string(r.state)}, {"amount", r.amount}};
    if (r.kind == AssumptionKind::BottomUp) {
        out["from"] = to_json(frame, r.source_set);
        out["to"] = to_json(frame, r.committed_set);
    } else {
        out["precise"] = to_json(frame, r.committed_set);
        out["fallback"] = to_json(frame, r.source_set);
        out["fraction"] = r.fraction;
    }
    return out;
}

json to_json(const Ledger& ledger) {
    json records = json::array();
    for (const auto& r : ledger.records()) records.push_back(to_json(ledger.frame(), r));
    return {{"base", to_json(ledger.base())}, {"records", records}, {"effective", to_json(effective_mass(ledger))}};
}

json to_json(const FusionResult& result) {
    json out;
    out["conflict"] = result.conflict;
    out["total_conflict"] = result.total_conflict();
    if (result.fused) {
        out["fused"] = to_json(*result.fused);
        out["beliefs"] = belief_table(*result.fused);
        out["favored"] = favored_hypothesis(*result.fused);
    } else {
        out["fused"] = nullptr;
        out["beliefs"] = json::array();
        out["favored"] = nullptr;
    }
    json pairs = json::array();
    for (const auto& [key, k] : result.pairwise_conflict) pairs.push_back({{"a", key.first}, {"b", key.second}, {"conflict", k}});
    out["pairwise_conflict"] = pairs;
    out["contributing_arguments"] = result.contributing_arguments;
    return out;
}

json to_json(const CulpabilityReport& report) {
    json entries = json::array();
    for (const auto& e : report.entries) {
        entries.push_back({{"item", e.item}, {"culpability", e.culpability}, {"conflict_if_retracted", e.conflict_if_retracted}});
    }
    return {{"conflict", report.conflict}, {"entries", entries}};
}

json to_json(const ResolutionStep& step) {
    return {{"index", step.index},
            {"conflict_before", step.conflict_before},
            {"retracted", step.retracted},
            {"culpability", step.culpability},
            {"conflict_after", step.conflict_after}};
}

json to_json(const ResolutionTrace& trace) {
    json steps = json::array();
    for (const auto& s : trace.steps) steps.push_back(to_json(s));
    json out = {{"steps", steps}, {"terminal", to_string(trace.terminal)}, {"final", to_json(trace.final)}};
    out["report"] = trace.report ? to_json(*trace.report) : json(nullptr);
    return out;
}

json to_json(const QuestionValue& value) {
    return {{"flip_probability", value.flip_probability}, {"congruence", value.congruence}, {"favored", value.favored}};
}

json to_json(const ElicitationSession& s) {
    json transcript = json::array();
    for (const auto& t : s.transcript) transcript.push_back({{"prompt", t.prompt}, {"response", t.response}});
    return {{"argument", s.argument_id},
            {"state", s.state == ElicitationState::AwaitingResponse ? "AWAITING_RESPONSE" : "CLOSED"},
            {"round", s.round},
            {"max_rounds", s.max_rounds},
            {"prompt", s.prompt},
            {"transcript", transcript}};
}

std::vector<Answer> question_from_json(const Frame& frame, const json& j) {
    const auto& answers = field(j, "answers");
    if (!answers.is_array()) throw Error(ErrorCode::ValidationFailed, "'answers' must be an array");
    std::vector<Answer> out;
    for (const auto& a : answers) out.push_back({get<double>(a, "probability"), argument_from_json(frame, field(a, "argument"))});
    return out;
}

}  // namespace sed::json_io

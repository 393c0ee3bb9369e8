#include "sed/journal.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <chrono>
#include <cstring>
#include <ctime>
#include <fstream>
#include <sstream>

#include "sed/errors.hpp"
#include "sed/json_io.hpp"

namespace sed {

using nlohmann::json;

namespace {

constexpr std::pair<RecordKind, std::string_view> kKindNames[] = {
    {RecordKind::SessionCreated, "SESSION_CREATED"},
    {RecordKind::EvidenceAdded, "EVIDENCE_ADDED"},
    {RecordKind::ArgumentAdded, "ARGUMENT_ADDED"},
    {RecordKind::ExceptionAdded, "EXCEPTION_ADDED"},
    {RecordKind::StatusChanged, "STATUS_CHANGED"},
    {RecordKind::LedgerCommitted, "LEDGER_COMMITTED"},
    {RecordKind::LedgerRetracted, "LEDGER_RETRACTED"},
    {RecordKind::FusionSnapshot, "FUSION_SNAPSHOT"},
    {RecordKind::ResolutionStep, "RESOLUTION_STEP"},
    {RecordKind::ElicitationPrompt, "ELICITATION_PROMPT"},
    {RecordKind::ElicitationResponse, "ELICITATION_RESPONSE"},
};

[[noreturn]] void invalid(const std::string& reason) { throw Error(ErrorCode::ValidationFailed, reason); }

const json& need(const json& payload, const char* key) {
    if (!payload.is_object() || !payload.contains(key)) invalid(std::string("payload lacks '") + key + "'");
    return payload.at(key);
}

std::string need_string(const json& payload, const char* key) {
    const auto& v = need(payload, key);
    if (!v.is_string()) invalid(std::string("'") + key + "' must be a string");
    return v.get<std::string>();
}

double need_number(const json& payload, const char* key) {
    const auto& v = need(payload, key);
    if (!v.is_number()) invalid(std::string("'") + key + "' must be a number");
    return v.get<double>();
}

Argument* find_argument_mut(SessionState& state, std::string_view id) {
    for (auto& a : state.workspace.arguments) {
        if (a.id == id) return &a;
    }
    return nullptr;
}

// A new exception may reuse an existing id only if it denotes the same underlying condition.
void check_exception_identity(const SessionState& state, const ExceptionCondition& e) {
    if (state.workspace.ledger && state.ledger().find(e.id)) invalid("id '" + e.id + "' already names a ledger record");
    for (const auto& arg : state.workspace.arguments) {
        if (const auto* other = arg.find_exception(e.id); other && !other->same_condition(e)) {
            invalid("exception '" + e.id + "' is already defined with a different probability, impact kind or status");
        }
    }
}

void apply_created(SessionState& state, const json& payload) {
    if (state.frame) invalid("session already created");
    const auto& version = need(payload, "format_version");
    if (!version.is_number_integer() || version.get<int>() != kJournalFormatVersion) {
        throw Error(ErrorCode::VersionUnsupported, "journal format version " + version.dump() + " is not supported");
    }
    const auto& labels = need(payload, "frame");
    if (!labels.is_array()) invalid("'frame' must be an array of labels");
    std::vector<std::string> names;
    for (const auto& l : labels) {
        if (!l.is_string()) invalid("frame labels must be strings");
        names.push_back(l.get<std::string>());
    }
    state.session_id = payload.value("session_id", std::string("session"));
    state.frame = make_frame(state.session_id, names);
    state.workspace.frame = state.frame;
    auto base = payload.contains("base") && !payload.at("base").is_null()
                    ? json_io::mass_from_json(state.frame, payload.at("base"))
                    : MassFunction::vacuous(state.frame);
    state.workspace.ledger.emplace(std::move(base));
}

void apply_evidence(SessionState& state, const json& payload, std::uint64_t seq) {
    EvidenceItem item{need_string(payload, "id"), payload.value("description", std::string()), seq};
    if (item.id.empty()) invalid("evidence id must be nonempty");
    if (state.find_evidence(item.id)) invalid("evidence '" + item.id + "' already exists");
    state.evidence.push_back(std::move(item));
}

void apply_argument(SessionState& state, const json& payload) {
    auto arg = json_io::argument_from_json(*state.frame, need(payload, "argument"));
    if (state.find_argument(arg.id)) invalid("argument '" + arg.id + "' already exists");
    if (!state.find_evidence(arg.evidence_id)) invalid("argument '" + arg.id + "' references unknown evidence '" + arg.evidence_id + "'");
    for (const auto& e : arg.exceptions) check_exception_identity(state, e);
    state.workspace.arguments.push_back(std::move(arg));
}

void apply_exception(SessionState& state, const json& payload) {
    auto arg_id = need_string(payload, "argument");
    auto* arg = find_argument_mut(state, arg_id);
    if (!arg) throw Error(ErrorCode::UnknownArgument, "no argument '" + arg_id + "'");
    auto e = json_io::exception_from_json(*state.frame, need(payload, "exception"));
    check_exception_identity(state, e);
    Argument updated = *arg;
    updated.exceptions.push_back(std::move(e));
    validate_argument(*state.frame, updated);
    *arg = std::move(updated);
}

void apply_status(SessionState& state, const json& payload) {
    auto id = need_string(payload, "exception");
    auto status = parse_exception_status(need_string(payload, "status"));
    propagate_exception_status(state.workspace.arguments, id, status);
}

void apply_commit(SessionState& state, const json& payload) {
    const Frame& frame = *state.frame;
    auto id = payload.value("id", std::string());
    if (!id.empty()) {
        for (const auto& arg : state.workspace.arguments) {
            if (arg.find_exception(id)) invalid("id '" + id + "' already names an exception");
        }
    }
    auto kind = need_string(payload, "kind");
    if (kind == "BOTTOM_UP") {
        auto [ledger, _] = commit_bottom_up(state.ledger(), json_io::subset_from_json(frame, need(payload, "from")),
                                            json_io::subset_from_json(frame, need(payload, "to")),
                                            need_number(payload, "amount"), id);
        state.workspace.ledger = std::move(ledger);
    } else if (kind == "TOP_DOWN") {
        auto [ledger, _] = declare_fallback(state.ledger(), json_io::subset_from_json(frame, need(payload, "precise")),
                                            json_io::subset_from_json(frame, need(payload, "fallback")),
                                            need_number(payload, "fraction"), id);
        state.workspace.ledger = std::move(ledger);
    } else {
        invalid("unknown ledger record kind '" + kind + "'");
    }
}

void apply_prompt(SessionState& state, const json& payload) {
    auto arg_id = need_string(payload, "argument");
    const auto* arg = state.find_argument(arg_id);
    if (!arg) throw Error(ErrorCode::UnknownArgument, "no argument '" + arg_id + "'");
    const auto* evidence = state.find_evidence(arg->evidence_id);
    EvidenceItem fallback{arg->evidence_id, arg->evidence_id, 0};
    auto max_rounds = payload.value("max_rounds", kDefaultMaxRounds);
    if (max_rounds == 0) invalid("max_rounds must be positive");
    auto session = start_elicitation(*state.frame, *arg, evidence ? *evidence : fallback, max_rounds);
    if (payload.contains("prompt") && payload.at("prompt") != session.prompt) {
        invalid("recorded prompt differs from the protocol prompt for '" + arg_id + "'");
    }
    // Starting again closes any open dialogue on the same argument.
    state.elicitations[arg_id] = std::move(session);
}

void apply_response(SessionState& state, const json& payload) {
    auto arg_id = need_string(payload, "argument");
    auto it = state.elicitations.find(arg_id);
    if (it == state.elicitations.end()) throw Error(ErrorCode::SessionClosed, "no elicitation for '" + arg_id + "'");
    auto response = need_string(payload, "response");
    if (response == "PASS") {
        pass(it->second);
        return;
    }
    if (response != "QUALIFICATION") invalid("response must be PASS or QUALIFICATION");
    Qualification q;
    q.description = payload.value("description", std::string());
    q.probability = need_number(payload, "probability");
    const auto& impact = need(payload, "impact");
    q.impact.kind = parse_impact_kind(need_string(impact, "kind"));
    if (q.impact.kind == ImpactKind::Rebut) q.impact.target = json_io::subset_from_json(*state.frame, need(impact, "target"));
    q.exception_id = payload.value("exception_id", std::string());
    auto* arg = find_argument_mut(state, arg_id);
    if (!arg) throw Error(ErrorCode::UnknownArgument, "no argument '" + arg_id + "'");
    if (!q.exception_id.empty()) {
        ExceptionCondition probe{q.exception_id, q.description, q.probability, q.impact, ExceptionStatus::AssumedFalse};
        check_exception_identity(state, probe);
    }
    auto session = it->second;
    Argument updated = *arg;
    auto id = submit_qualification(session, updated, *state.frame, q);
    if (q.exception_id.empty()) {
        ExceptionCondition probe{id, q.description, q.probability, q.impact, ExceptionStatus::AssumedFalse};
        check_exception_identity(state, probe);
    }
    *arg = std::move(updated);
    it->second = std::move(session);
}

std::string line_error(const std::filesystem::path& origin, std::size_t line, std::optional<std::uint64_t> seq,
                       const std::string& reason) {
    std::string where = origin.empty() ? "journal" : origin.string();
    std::string out = where + ":" + std::to_string(line);
    if (seq) out += " (seq " + std::to_string(*seq) + ")";
    return out + ": " + reason;
}

}  // namespace

std::string_view to_string(RecordKind kind) noexcept {
    for (const auto& [k, name] : kKindNames) {
        if (k == kind) return name;
    }
    return "SESSION_CREATED";
}

std::optional<RecordKind> parse_record_kind(std::string_view text) noexcept {
    for (const auto& [k, name] : kKindNames) {
        if (name == text) return k;
    }
    return std::nullopt;
}

const EvidenceItem* SessionState::find_evidence(std::string_view id) const {
    for (const auto& e : evidence) {
        if (e.id == id) return &e;
    }
    return nullptr;
}

const Argument* SessionState::find_argument(std::string_view id) const {
    for (const auto& a : workspace.arguments) {
        if (a.id == id) return &a;
    }
    return nullptr;
}

void apply_record(SessionState& state, RecordKind kind, const json& payload, std::uint64_t seq) {
    if (!payload.is_object()) invalid("payload must be a JSON object");
    if (kind != RecordKind::SessionCreated && !state.frame) {
        throw Error(ErrorCode::MissingHeader, "first record must be SESSION_CREATED");
    }
    SessionState next = state;
    switch (kind) {
        case RecordKind::SessionCreated: apply_created(next, payload); break;
        case RecordKind::EvidenceAdded: apply_evidence(next, payload, seq); break;
        case RecordKind::ArgumentAdded: apply_argument(next, payload); break;
        case RecordKind::ExceptionAdded: apply_exception(next, payload); break;
        case RecordKind::StatusChanged: apply_status(next, payload); break;
        case RecordKind::LedgerCommitted: apply_commit(next, payload); break;
        case RecordKind::LedgerRetracted:
            next.workspace.ledger = retract(next.ledger(), need_string(payload, "id"));
            break;
        case RecordKind::FusionSnapshot: break;
        case RecordKind::ResolutionStep:
            next.workspace = with_retracted(next.workspace, need_string(payload, "retracted"));
            break;
        case RecordKind::ElicitationPrompt: apply_prompt(next, payload); break;
        case RecordKind::ElicitationResponse: apply_response(next, payload); break;
    }
    next.version = seq;
    state = std::move(next);
}

std::pair<RecordKind, json> retraction_record(const SessionState& state, const std::string& item) {
    for (const auto& arg : state.workspace.arguments) {
        if (const auto* e = arg.find_exception(item)) {
            if (!e->retractable()) {
                throw Error(ErrorCode::NotRetractable, "exception '" + item + "' is " + std::string(to_string(e->status)));
            }
            return {RecordKind::StatusChanged, {{"exception", item}, {"status", "ACTIVE"}}};
        }
    }
    if (state.workspace.ledger && state.ledger().find(item)) return {RecordKind::LedgerRetracted, {{"id", item}}};
    throw Error(ErrorCode::NotRetractable, "'" + item + "' is neither an exception nor a ledger record");
}

json state_to_json(const SessionState& state) {
    const Frame& frame = *state.frame;
    json evidence = json::array();
    for (const auto& e : state.evidence) evidence.push_back(json_io::to_json(e));
    json arguments = json::array();
    for (const auto& a : state.workspace.arguments) arguments.push_back(json_io::to_json(frame, a));
    json elicitations = json::array();
    for (const auto& [_, s] : state.elicitations) elicitations.push_back(json_io::to_json(s));

    json out = {{"session_id", state.session_id},
                {"version", state.version},
                {"frame", frame.labels()},
                {"evidence", evidence},
                {"arguments", arguments},
                {"ledger", json_io::to_json(state.ledger())},
                {"elicitations", elicitations},
                {"retractable", retractable_items(state.workspace)}};
    try {
        out["fusion"] = json_io::to_json(evaluate(state.workspace, true));
    } catch (const Error& e) {
        out["fusion"] = {{"error", to_string(e.code())}, {"detail", e.detail()}};
    }
    return out;
}

std::string iso8601_now() {
    auto now = std::chrono::system_clock::now();
    std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string Journal::serialize(const JournalRecord& record) {
    json line = record.extra.is_object() ? record.extra : json::object();
    line["seq"] = record.seq;
    line["kind"] = to_string(record.kind);
    line["at"] = record.at;
    line["payload"] = record.payload;
    return line.dump();
}

Journal Journal::create(const std::filesystem::path& path, const std::string& session_id,
                        const std::vector<std::string>& frame_labels, const json& base, const json& extra_payload) {
    if (!path.empty() && std::filesystem::exists(path)) {
        throw Error(ErrorCode::StorageError, "'" + path.string() + "' already exists");
    }
    Journal journal;
    json payload = extra_payload.is_object() ? extra_payload : json::object();
    payload["format_version"] = kJournalFormatVersion;
    payload["frame"] = frame_labels;
    payload["session_id"] = session_id;
    if (!base.is_null()) payload["base"] = base;
    journal.path_ = path;
    journal.append(RecordKind::SessionCreated, std::move(payload));
    return journal;
}

const JournalRecord& Journal::append(RecordKind kind, json payload) {
    JournalRecord record;
    record.seq = version() + 1;
    record.kind = kind;
    record.at = iso8601_now();
    record.payload = std::move(payload);

    SessionState next = state_;
    try {
        apply_record(next, kind, record.payload, record.seq);
    } catch (const Error& e) {
        if (e.code() == ErrorCode::ValidationFailed || is_storage_error(e.code())) throw;
        throw Error(ErrorCode::ValidationFailed, std::string(to_string(e.code())) + ": " + e.detail(), e.code());
    }

    if (!path_.empty()) {
        std::string line = serialize(record) + "\n";
        int fd = ::open(path_.c_str(), O_WRONLY | O_APPEND | O_CREAT, 0644);
        if (fd < 0) throw Error(ErrorCode::StorageError, "cannot open '" + path_.string() + "': " + std::strerror(errno));
        const char* data = line.data();
        std::size_t left = line.size();
        while (left > 0) {
            ssize_t n = ::write(fd, data, left);
            if (n < 0) {
                if (errno == EINTR) continue;
                int err = errno;
                ::close(fd);
                throw Error(ErrorCode::StorageError, "write to '" + path_.string() + "' failed: " + std::strerror(err));
            }
            data += n;
            left -= static_cast<std::size_t>(n);
        }
        ::fsync(fd);
        ::close(fd);
    }
    records_.push_back(std::move(record));
    state_ = std::move(next);
    return records_.back();
}

Journal Journal::load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::StorageError, "cannot open '" + path.string() + "'");
    auto journal = parse(in, path);
    journal.path_ = path;
    return journal;
}

Journal Journal::parse(std::istream& in, const std::filesystem::path& origin) {
    Journal journal;
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (text.empty()) throw Error(ErrorCode::MissingHeader, (origin.empty() ? "journal" : origin.string()) + " is empty");

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        ++line_no;
        auto end = text.find('\n', pos);
        bool terminated = end != std::string::npos;
        std::string line = text.substr(pos, terminated ? end - pos : std::string::npos);
        pos = terminated ? end + 1 : text.size();

        json parsed;
        try {
            parsed = json::parse(line);
        } catch (const json::parse_error& e) {
            std::string reason = terminated ? "malformed JSON" : "truncated final line";
            throw Error(ErrorCode::CorruptRecord, line_error(origin, line_no, std::nullopt, reason));
        }
        std::optional<std::uint64_t> seq;
        if (parsed.is_object() && parsed.contains("seq") && parsed["seq"].is_number_unsigned()) {
            seq = parsed["seq"].get<std::uint64_t>();
        }
        auto corrupt = [&](const std::string& reason) {
            return Error(ErrorCode::CorruptRecord, line_error(origin, line_no, seq, reason));
        };
        if (!parsed.is_object()) throw corrupt("record is not a JSON object");
        if (!seq) throw corrupt("missing or invalid 'seq'");
        if (!parsed.contains("kind") || !parsed["kind"].is_string()) throw corrupt("missing 'kind'");
        auto kind = parse_record_kind(parsed["kind"].get<std::string>());
        if (!kind) throw corrupt("unknown record kind '" + parsed["kind"].get<std::string>() + "'");
        if (line_no == 1 && *kind != RecordKind::SessionCreated) {
            throw Error(ErrorCode::MissingHeader, line_error(origin, line_no, seq, "first record must be SESSION_CREATED"));
        }
        if (*seq != journal.version() + 1) {
            throw corrupt("expected seq " + std::to_string(journal.version() + 1));
        }
        if (!parsed.contains("payload") || !parsed["payload"].is_object()) throw corrupt("missing 'payload' object");

        JournalRecord record;
        record.seq = *seq;
        record.kind = *kind;
        record.at = parsed.value("at", std::string());
        record.payload = parsed["payload"];
        for (auto& [key, value] : parsed.items()) {
            if (key != "seq" && key != "kind" && key != "at" && key != "payload") record.extra[key] = value;
        }
        try {
            apply_record(journal.state_, record.kind, record.payload, record.seq);
        } catch (const Error& e) {
            if (e.code() == ErrorCode::VersionUnsupported) throw;
            throw corrupt(std::string(to_string(e.code())) + ": " + e.detail());
        }
        journal.records_.push_back(std::move(record));
    }
    return journal;
}

void Journal::write(std::ostream& out) const {
    for (const auto& r : records_) out << serialize(r) << "\n";
}

void Journal::save_as(const std::filesystem::path& path) const {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::StorageError, "cannot write '" + path.string() + "'");
    write(out);
    if (!out.flush()) throw Error(ErrorCode::StorageError, "write to '" + path.string() + "' failed");
}

// ---------------------------------------------------------------------------
// Shipped scenarios

namespace {

json exception_json(const std::string& id, const std::string& description, double p, const char* status,
                    const std::vector<std::string>& rebut_target = {}) {
    json impact = rebut_target.empty() ? json{{"kind", "UNDERCUT"}} : json{{"kind", "REBUT"}, {"target", rebut_target}};
    return {{"id", id}, {"description", description}, {"probability", p}, {"impact", impact}, {"status", status}};
}

json argument_json(const std::string& id, const std::string& evidence, const std::vector<std::string>& core,
                   double support, json exceptions = json::array()) {
    return {{"id", id}, {"evidence", evidence}, {"core", core}, {"base_support", support}, {"exceptions", exceptions}};
}

void add_evidence(Journal& j, const std::string& id, const std::string& description) {
    j.append(RecordKind::EvidenceAdded, {{"id", id}, {"description", description}});
}

void add_argument(Journal& j, json argument) { j.append(RecordKind::ArgumentAdded, {{"argument", std::move(argument)}}); }

Journal zadeh_pathology(const std::filesystem::path& path) {
    auto j = Journal::create(path, "zadeh-pathology", {"S1", "S2", "S3"});
    add_evidence(j, "E1", "Source 1 report: strongly supports S1, allows a very small chance of S2");
    add_evidence(j, "E2", "Source 2 report: strongly supports S3, allows a very small chance of S2");
    add_argument(j, argument_json("A1", "E1", {"S1"}, 1.0,
                                  json::array({exception_json("A1.alt-S2", "Source 1 is wrong and S2 holds", 0.01,
                                                              "ACTIVE", {"S2"})})));
    add_argument(j, argument_json("A2", "E2", {"S3"}, 1.0,
                                  json::array({exception_json("A2.alt-S2", "Source 2 is wrong and S2 holds", 0.01,
                                                              "ACTIVE", {"S2"})})));
    return j;
}

Journal extreme_odds(const std::filesystem::path& path) {
    auto j = Journal::create(path, "extreme-odds", {"S", "not-S"});
    add_evidence(j, "E1", "Argument 1: not-S is impossible");
    add_evidence(j, "E2", "Argument 2: not-S is favored 10^10 to 1");
    add_argument(j, argument_json("A1", "E1", {"S"}, 1.0));
    add_argument(j, argument_json("A2", "E2", {"not-S"}, 1.0,
                                  json::array({exception_json("A2.long-shot", "The 1 in 10^10 chance that S holds",
                                                              1.0 / (1e10 + 1.0), "ACTIVE", {"S"})})));
    return j;
}

Journal attack_schema(const std::filesystem::path& path) {
    json reference = json::array({
        {{"label", "stochastic update"}, {"prior", 0.9}, {"like_given_h", 0.2}, {"like_given_not_h", 0.8}},
        {{"label", "epistemic reassessment"}, {"prior", 0.99}, {"like_given_h", 0.4}, {"like_given_not_h", 0.6}},
    });
    auto j = Journal::create(path, "attack-schema", {"S", "not-S"}, nullptr,
                             {{"schema", "S: enemy plan to attack"}, {"reference_assessments", reference}});
    add_evidence(j, "A", "Radar reports of trucks moving toward front-line areas (increased logistical activity in a particular sector)");
    add_evidence(j, "not-B", "No sign of artillery being moved up in that sector");
    add_argument(j, argument_json("logistics", "A", {"S"}, 0.9,
                                  json::array({
                                      exception_json("civilian-traffic", "Could the radar blips represent civilian traffic?", 0.2, "ASSUMED_FALSE"),
                                      exception_json("statistical-accident", "Is the apparent increase in activity a statistical accident?", 0.1, "ASSUMED_FALSE"),
                                      exception_json("replenish-defense", "Could increased logistical activity be intended to replenish a degraded defensive unit?", 0.15, "ASSUMED_FALSE", {"not-S"}),
                                  })));
    add_argument(j, argument_json("no-artillery", "not-B", {"not-S"}, 0.6,
                                  json::array({
                                      exception_json("omit-barrage", "Does the enemy plan to omit the initial artillery barrage for purposes of surprise?", 0.3, "ASSUMED_FALSE"),
                                      exception_json("artillery-unavailable", "Is required artillery equipment unavailable or not in working order?", 0.5, "ASSUMED_FALSE"),
                                      exception_json("masked-artillery", "Could weather, foliage, or camouflage have masked the location of artillery?", 0.6, "ASSUMED_FALSE"),
                                  })));
    return j;
}

Journal crystal_ball_8(const std::filesystem::path& path) {
    static const char* kQualifications[] = {
        "The convoy is a scheduled rotation of rear-area units",
        "The source misidentified the type of units observed",
        "The activity is a deliberate deception operation",
        "The build-up supports a defensive posture",
        "The report is stale and the units have since withdrawn",
        "Weather forced a temporary relocation of depots",
        "The observed equipment consists of decoys",
        "Ongoing negotiations have suspended offensive plans",
    };
    auto j = Journal::create(path, "crystal-ball-8", {"attack", "no-attack"});
    add_evidence(j, "E1", "Intelligence report of preparations in the northern sector");
    add_argument(j, argument_json("A1", "E1", {"attack"}, 1.0));
    auto session = start_elicitation(*j.state().frame, *j.state().find_argument("A1"), *j.state().find_evidence("E1"));
    j.append(RecordKind::ElicitationPrompt, {{"argument", "A1"}, {"max_rounds", kDefaultMaxRounds}, {"prompt", session.prompt}});
    for (const char* q : kQualifications) {
        j.append(RecordKind::ElicitationResponse, {{"argument", "A1"},
                                                   {"response", "QUALIFICATION"},
                                                   {"description", q},
                                                   {"probability", 0.31},
                                                   {"impact", {{"kind", "UNDERCUT"}}}});
    }
    j.append(RecordKind::ElicitationResponse, {{"argument", "A1"}, {"response", "PASS"}});
    return j;
}

}  // namespace

const std::vector<std::string>& scenario_names() {
    static const std::vector<std::string> names = {"attack-schema", "zadeh-pathology", "extreme-odds", "crystal-ball-8"};
    return names;
}

Journal create_scenario(const std::string& name, const std::filesystem::path& path) {
    if (name == "zadeh-pathology") return zadeh_pathology(path);
    if (name == "extreme-odds") return extreme_odds(path);
    if (name == "attack-schema") return attack_schema(path);
    if (name == "crystal-ball-8") return crystal_ball_8(path);
    throw Error(ErrorCode::UnknownScenario, "no scenario named '" + name + "'");
}

SessionState load_scenario(const std::string& name) { return create_scenario(name).state(); }

}  // namespace sed

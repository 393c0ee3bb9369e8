#include "sed/service.hpp"

#include <regex>
#include <utility>

#include "httplib.h"
#include "sed/errors.hpp"
#include "sed/json_io.hpp"
#include "sed/resolution.hpp"

namespace sed {

using nlohmann::json;

struct WorkbenchService::Server {
    httplib::Server http;
};

namespace {

bool valid_session_id(const std::string& id) {
    static const std::regex pattern("[A-Za-z0-9][A-Za-z0-9_.-]{0,63}");
    return std::regex_match(id, pattern);
}

int status_for(ErrorCode code) {
    switch (code) {
        case ErrorCode::ValidationFailed:
        case ErrorCode::UnknownHypothesis:
        case ErrorCode::InvalidFrame:
            return 400;
        case ErrorCode::UnknownSession:
        case ErrorCode::UnknownScenario:
        case ErrorCode::UnknownArgument:
        case ErrorCode::UnknownRecord:
        case ErrorCode::UnknownException:
            return 404;
        case ErrorCode::VersionConflict:
            return 409;
        default:
            return is_storage_error(code) ? 500 : 422;
    }
}

ServiceResponse error_response(const Error& e) {
    json body = {{"error", std::string(to_string(e.code()))}, {"detail", e.detail()}};
    int status = status_for(e.code());
    if (e.cause()) {
        body["cause"] = std::string(to_string(*e.cause()));
        status = status_for(*e.cause());
    }
    return {status, std::move(body)};
}

std::vector<std::string> split_path(const std::string& path) {
    std::vector<std::string> parts;
    std::string current;
    for (char c : path.substr(0, path.find('?'))) {
        if (c == '/') {
            if (!current.empty()) parts.push_back(std::move(current));
            current.clear();
        } else {
            current.push_back(c);
        }
    }
    if (!current.empty()) parts.push_back(std::move(current));
    return parts;
}

std::uint64_t expected_version(const json& body) {
    if (!body.contains("expected_version") || !body.at("expected_version").is_number_unsigned()) {
        throw Error(ErrorCode::ValidationFailed, "mutations require a non-negative integer 'expected_version'");
    }
    return body.at("expected_version").get<std::uint64_t>();
}

json field(const json& body, const char* key) {
    if (!body.contains(key)) throw Error(ErrorCode::ValidationFailed, std::string("request lacks '") + key + "'");
    return body.at(key);
}

json session_view(const Journal& journal) { return state_to_json(journal.state()); }

}  // namespace

WorkbenchService::WorkbenchService(std::filesystem::path directory) : directory_(std::move(directory)) {
    std::error_code ec;
    std::filesystem::create_directories(directory_, ec);
    if (!std::filesystem::is_directory(directory_)) {
        throw Error(ErrorCode::StorageError, "session directory '" + directory_.string() + "' is unusable");
    }
}

std::shared_ptr<WorkbenchService::Session> WorkbenchService::open(const std::string& id) {
    if (!valid_session_id(id)) throw Error(ErrorCode::UnknownSession, "no session '" + id + "'");
    std::lock_guard lock(registry_guard_);
    if (auto it = sessions_.find(id); it != sessions_.end()) return it->second;
    auto path = directory_ / (id + ".sedj");
    if (!std::filesystem::exists(path)) throw Error(ErrorCode::UnknownSession, "no session '" + id + "'");
    auto session = std::make_shared<Session>();
    session->snapshot = std::make_shared<const Journal>(Journal::load(path));
    sessions_.emplace(id, session);
    return session;
}

std::shared_ptr<WorkbenchService::Session> WorkbenchService::create(const json& body) {
    std::string id = body.value("session_id", std::string());
    if (!valid_session_id(id)) throw Error(ErrorCode::ValidationFailed, "'session_id' must be 1-64 characters of [A-Za-z0-9_.-]");
    std::lock_guard lock(registry_guard_);
    auto path = directory_ / (id + ".sedj");
    if (sessions_.count(id) || std::filesystem::exists(path)) {
        throw Error(ErrorCode::ValidationFailed, "session '" + id + "' already exists");
    }
    std::shared_ptr<const Journal> journal;
    if (body.contains("scenario")) {
        journal = std::make_shared<const Journal>(create_scenario(body.at("scenario").get<std::string>(), path));
    } else {
        auto frame = field(body, "frame");
        std::vector<std::string> labels;
        if (frame.is_string()) {
            std::stringstream ss(frame.get<std::string>());
            for (std::string l; std::getline(ss, l, ',');) labels.push_back(l);
        } else if (frame.is_array()) {
            for (const auto& l : frame) {
                if (!l.is_string()) throw Error(ErrorCode::ValidationFailed, "frame labels must be strings");
                labels.push_back(l.get<std::string>());
            }
        } else {
            throw Error(ErrorCode::ValidationFailed, "'frame' must be a list of labels");
        }
        journal = std::make_shared<const Journal>(Journal::create(path, id, labels, body.value("base", json(nullptr))));
    }
    auto session = std::make_shared<Session>();
    session->snapshot = std::move(journal);
    sessions_.emplace(id, session);
    return session;
}

ServiceResponse WorkbenchService::handle(const std::string& method, const std::string& path, const std::string& body_text) {
    try {
        json body = json::object();
        if (!body_text.empty()) {
            try {
                body = json::parse(body_text);
            } catch (const json::exception& e) {
                throw Error(ErrorCode::ValidationFailed, std::string("request body is not JSON: ") + e.what());
            }
            if (!body.is_object()) throw Error(ErrorCode::ValidationFailed, "request body must be a JSON object");
        }
        const auto parts = split_path(path);
        const auto not_found = [&] {
            return ServiceResponse{404, {{"error", "UnknownRoute"}, {"detail", method + " " + path}}};
        };
        if (parts.empty() || parts[0] != "sessions") return not_found();

        if (parts.size() == 1) {
            if (method != "POST") return not_found();
            auto session = create(body);
            return {201, session_view(*session->current())};
        }

        auto session = open(parts[1]);
        const std::vector<std::string> rest(parts.begin() + 2, parts.end());
        auto is = [&](const std::string& m, std::initializer_list<const char*> shape) {
            if (m != method || rest.size() != shape.size()) return false;
            std::size_t i = 0;
            for (const char* s : shape) {
                if (std::string_view(s) != "*" && rest[i] != s) return false;
                ++i;
            }
            return true;
        };

        // Read-only routes work on a snapshot.
        if (is("GET", {})) return {200, session_view(*session->current())};
        if (is("GET", {"fusion"})) {
            auto snap = session->current();
            auto j = json_io::to_json(fuse(snap->state().workspace));
            j["version"] = snap->version();
            return {200, j};
        }
        if (is("GET", {"culpability"})) {
            auto snap = session->current();
            auto j = json_io::to_json(culpability(snap->state().workspace));
            j["version"] = snap->version();
            return {200, j};
        }
        if (is("POST", {"whatif"})) {
            auto snap = session->current();
            Workspace ws = snap->state().workspace;
            auto items = field(body, "retract");
            if (!items.is_array()) throw Error(ErrorCode::ValidationFailed, "'retract' must be a list of ids");
            for (const auto& item : items) ws = with_retracted(ws, item.get<std::string>());
            auto j = json_io::to_json(evaluate(ws, true));
            j["version"] = snap->version();
            return {200, j};
        }
        if (is("POST", {"voi"})) {
            auto snap = session->current();
            auto answers = json_io::question_from_json(*snap->state().frame, body);
            auto j = json_io::to_json(value_of_question(snap->state().workspace, answers));
            j["version"] = snap->version();
            return {200, j};
        }

        // Mutations: one writer per session, checked against the caller's version.
        std::lock_guard writer(session->writer);
        auto base = session->current();
        const auto expected = expected_version(body);
        if (expected != base->version()) {
            return error_response(Error(ErrorCode::VersionConflict, "expected version " + std::to_string(expected) +
                                                                        " but the session is at " +
                                                                        std::to_string(base->version())));
        }
        Journal next = *base;
        const SessionState& st = base->state();
        json extra = json::object();

        if (is("POST", {"evidence"})) {
            next.append(RecordKind::EvidenceAdded, {{"id", field(body, "id")}, {"description", body.value("description", "")}});
        } else if (is("POST", {"arguments"})) {
            next.append(RecordKind::ArgumentAdded, {{"argument", field(body, "argument")}});
        } else if (is("POST", {"arguments", "*", "exceptions"})) {
            next.append(RecordKind::ExceptionAdded, {{"argument", rest[1]}, {"exception", field(body, "exception")}});
        } else if (is("POST", {"exceptions", "*", "status"})) {
            next.append(RecordKind::StatusChanged, {{"exception", rest[1]}, {"status", field(body, "status")}});
        } else if (is("POST", {"arguments", "*", "elicitation"})) {
            const auto* arg = st.find_argument(rest[1]);
            if (!arg) throw Error(ErrorCode::UnknownArgument, "no argument '" + rest[1] + "'");
            std::size_t rounds = body.value("max_rounds", kDefaultMaxRounds);
            auto opening = start_elicitation(*st.frame, *arg, *st.find_evidence(arg->evidence_id), rounds);
            next.append(RecordKind::ElicitationPrompt, {{"argument", rest[1]}, {"max_rounds", rounds}, {"prompt", opening.prompt}});
        } else if (is("POST", {"arguments", "*", "elicitation", "response"})) {
            json payload = {{"argument", rest[1]},
                            {"response", "QUALIFICATION"},
                            {"description", body.value("description", "")},
                            {"probability", field(body, "probability")},
                            {"impact", field(body, "impact")}};
            if (body.contains("exception_id")) payload["exception_id"] = body.at("exception_id");
            next.append(RecordKind::ElicitationResponse, payload);
        } else if (is("POST", {"arguments", "*", "elicitation", "pass"})) {
            next.append(RecordKind::ElicitationResponse, {{"argument", rest[1]}, {"response", "PASS"}});
        } else if (is("POST", {"ledger", "commit"})) {
            json payload = body;
            payload.erase("expected_version");
            if (!payload.contains("id")) payload["id"] = "L" + std::to_string(st.ledger().records().size() + 1);
            next.append(RecordKind::LedgerCommitted, payload);
        } else if (is("POST", {"ledger", "*", "retract"})) {
            next.append(RecordKind::LedgerRetracted, {{"id", rest[1]}});
        } else if (is("POST", {"resolve", "step"})) {
            ResolutionPolicy policy;
            policy.tau = body.value("tau", policy.tau);
            validate_policy(policy);
            Workspace ws = st.workspace;
            std::size_t index = 1;
            for (const auto& r : base->records()) index += r.kind == RecordKind::ResolutionStep;
            auto outcome = step(ws, policy, index);
            if (outcome.event) {
                next.append(RecordKind::ResolutionStep, json_io::to_json(*outcome.event));
                extra["step"] = json_io::to_json(*outcome.event);
                extra["terminal"] = nullptr;
            } else {
                extra["step"] = nullptr;
                extra["terminal"] = std::string(to_string(*outcome.done));
            }
            extra["report"] = outcome.report ? json_io::to_json(*outcome.report) : json(nullptr);
        } else {
            return not_found();
        }

        auto published = std::make_shared<const Journal>(std::move(next));
        session->publish(published);
        json out = session_view(*published);
        for (auto& [k, v] : extra.items()) out[k] = v;
        return {200, out};
    } catch (const Error& e) {
        return error_response(e);
    } catch (const json::exception& e) {
        return {400, {{"error", "ValidationFailed"}, {"detail", e.what()}}};
    }
}

namespace {

void install_routes(httplib::Server& http, WorkbenchService& service) {
    auto bridge = [&service](const httplib::Request& req, httplib::Response& res) {
        auto r = service.handle(req.method, req.path, req.body);
        res.status = r.status;
        res.set_content(r.body.dump(), "application/json");
    };
    http.Get(".*", bridge);
    http.Post(".*", bridge);
}

}  // namespace

void WorkbenchService::serve(const std::string& host, int port) {
    server_ = std::make_shared<Server>();
    install_routes(server_->http, *this);
    if (!server_->http.bind_to_port(host, port)) {
        throw Error(ErrorCode::StorageError, "cannot bind " + host + ":" + std::to_string(port));
    }
    server_->http.listen_after_bind();
}

int WorkbenchService::bind_any(const std::string& host) {
    server_ = std::make_shared<Server>();
    install_routes(server_->http, *this);
    int port = server_->http.bind_to_any_port(host);
    if (port < 0) throw Error(ErrorCode::StorageError, "cannot bind " + host);
    return port;
}

void WorkbenchService::serve_bound() { server_->http.listen_after_bind(); }

void WorkbenchService::stop() {
    if (server_) server_->http.stop();
}

}  // namespace sed

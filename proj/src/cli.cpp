#include "sed/cli.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <cstring>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "sed/errors.hpp"
#include "sed/journal.hpp"
#include "sed/json_io.hpp"
#include "sed/resolution.hpp"

namespace sed::cli {

namespace {

using nlohmann::json;

// Advisory lock on the session file for the duration of one command.
class SessionLock {
public:
    explicit SessionLock(const std::string& path) {
        fd_ = ::open(path.c_str(), O_RDONLY);
        if (fd_ < 0) throw Error(ErrorCode::StorageError, "cannot open '" + path + "': " + std::strerror(errno));
        if (::flock(fd_, LOCK_EX | LOCK_NB) != 0) {
            ::close(fd_);
            throw Error(ErrorCode::StorageError, "'" + path + "' is in use by another process");
        }
    }
    SessionLock(const SessionLock&) = delete;
    SessionLock& operator=(const SessionLock&) = delete;
    ~SessionLock() {
        ::flock(fd_, LOCK_UN);
        ::close(fd_);
    }

private:
    int fd_ = -1;
};

std::string fixed(double v) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(6) << v;
    return os.str();
}

std::string canonical_status(std::string text) {
    for (auto& c : text) c = c == '-' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return text;
}

void print_fusion(std::ostream& out, const Frame& frame, const FusionResult& r) {
    out << "conflict K = " << fixed(r.conflict) << "\n";
    if (r.total_conflict()) {
        out << "total conflict: no normalized belief\n";
    } else {
        std::size_t width = 12;
        for (const auto& l : frame.labels()) width = std::max(width, l.size() + 2);
        out << std::left << std::setw(static_cast<int>(width)) << "hypothesis" << "belief    plausibility\n";
        for (std::size_t i = 0; i < frame.size(); ++i) {
            auto s = Subset::singleton(i);
            out << std::left << std::setw(static_cast<int>(width)) << frame.label(i) << fixed(belief(*r.fused, s)) << "  "
                << fixed(plausibility(*r.fused, s)) << "\n";
        }
        out << "favored: " << favored_hypothesis(*r.fused) << "\n";
    }
    for (const auto& [key, k] : r.pairwise_conflict) out << "pairwise " << key.first << " x " << key.second << ": " << fixed(k) << "\n";
}

void print_report(std::ostream& out, const CulpabilityReport& report) {
    out << "conflict K = " << fixed(report.conflict) << "\n";
    for (const auto& e : report.entries) {
        out << "  " << e.item << "  culpability " << (e.culpability >= 0 ? " " : "") << fixed(e.culpability)
            << "  conflict if retracted " << fixed(e.conflict_if_retracted) << "\n";
    }
}

void print_step(std::ostream& out, const ResolutionStep& s) {
    out << "step " << s.index << ": retract " << s.retracted << " (culpability " << fixed(s.culpability) << "), conflict "
        << fixed(s.conflict_before) << " -> " << fixed(s.conflict_after) << "\n";
}

json step_payload(const ResolutionStep& s) { return json_io::to_json(s); }

// Shared plumbing for commands that open an existing session.
struct Context {
    std::istream& in;
    std::ostream& out;
    std::ostream& err;
    bool json_output = false;
};

template <typename Fn>
void with_session(const std::string& path, Fn&& fn) {
    SessionLock lock(path);
    auto journal = Journal::load(path);
    fn(journal);
}

void report_mutation(Context& ctx, const Journal& journal, const std::string& message) {
    if (ctx.json_output) {
        ctx.out << json{{"version", journal.version()}, {"record", to_string(journal.records().back().kind)}}.dump(2) << "\n";
    } else {
        ctx.out << message << " (version " << journal.version() << ")\n";
    }
}

std::vector<std::string> split_tokens(const std::string& line) {
    std::istringstream is(line);
    std::vector<std::string> out;
    std::string tok;
    while (is >> tok) out.push_back(tok);
    return out;
}

// Parses one elicitation reply: "pass", "undercut P TEXT" or "rebut TARGETS P TEXT".
std::optional<json> parse_reply(const std::string& line, const std::string& argument) {
    auto tokens = split_tokens(line);
    if (tokens.empty()) return std::nullopt;
    std::string verb = tokens[0];
    std::transform(verb.begin(), verb.end(), verb.begin(), [](unsigned char c) { return std::tolower(c); });
    if (verb == "pass" && tokens.size() == 1) return json{{"argument", argument}, {"response", "PASS"}};

    std::size_t prob_index = verb == "undercut" ? 1 : verb == "rebut" ? 2 : 0;
    if (prob_index == 0 || tokens.size() <= prob_index + 1) return std::nullopt;
    double p = 0.0;
    try {
        std::size_t used = 0;
        p = std::stod(tokens[prob_index], &used);
        if (used != tokens[prob_index].size()) return std::nullopt;
    } catch (const std::exception&) {
        return std::nullopt;
    }
    // Description: everything after the probability token, verbatim.
    std::istringstream is(line);
    std::string skip;
    for (std::size_t i = 0; i <= prob_index; ++i) is >> skip;
    std::string description;
    std::getline(is >> std::ws, description);
    json impact = verb == "undercut" ? json{{"kind", "UNDERCUT"}} : json{{"kind", "REBUT"}, {"target", tokens[1]}};
    return json{{"argument", argument}, {"response", "QUALIFICATION"}, {"description", description}, {"probability", p}, {"impact", impact}};
}

int exit_code_for(const Error& e) { return is_storage_error(e.code()) ? kStorage : kDomain; }

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    Context ctx{in, out, err};
    CLI::App app{"Evidential database for analysts: arguments, assumptions, conflict and its resolution", "sed-analyst"};
    app.require_subcommand(1);
    std::function<void()> action;

    auto add_json = [&](CLI::App* cmd) { cmd->add_flag("--json", ctx.json_output, "Machine-readable output"); };

    // init
    std::string session;
    std::string frame_text, session_id;
    std::vector<std::string> base_specs;
    auto* init = app.add_subcommand("init", "Create a new session file");
    init->add_option("session", session, "Session file")->required();
    init->add_option("--frame", frame_text, "Comma-separated hypotheses")->required();
    init->add_option("--id", session_id, "Session id (defaults to the file stem)");
    init->add_option("--base", base_specs, "Firm belief, e.g. --base S1,S2=0.6 (repeatable)");
    add_json(init);
    init->callback([&] {
        action = [&] {
            std::vector<std::string> labels;
            std::stringstream ss(frame_text);
            for (std::string l; std::getline(ss, l, ',');) {
                l.erase(0, l.find_first_not_of(" \t"));
                l.erase(l.find_last_not_of(" \t") + 1);
                labels.push_back(l);
            }
            json base = nullptr;
            if (!base_specs.empty()) {
                base = json::array();
                for (const auto& spec : base_specs) {
                    auto eq = spec.rfind('=');
                    if (eq == std::string::npos) throw Error(ErrorCode::ValidationFailed, "--base expects SET=MASS");
                    base.push_back({{"set", spec.substr(0, eq)}, {"mass", std::stod(spec.substr(eq + 1))}});
                }
            }
            if (session_id.empty()) session_id = std::filesystem::path(session).stem().string();
            auto journal = Journal::create(session, session_id, labels, base);
            report_mutation(ctx, journal, "created session '" + session_id + "' with frame " +
                                              journal.state().frame->describe(journal.state().frame->full()));
        };
    });

    // evidence add
    std::string id, description;
    auto* evidence = app.add_subcommand("evidence", "Manage evidence items");
    evidence->require_subcommand(1);
    auto* evidence_add = evidence->add_subcommand("add", "Record a new evidence item");
    evidence_add->add_option("session", session)->required();
    evidence_add->add_option("--id", id)->required();
    evidence_add->add_option("--desc", description, "Description");
    add_json(evidence_add);
    evidence_add->callback([&] {
        action = [&] {
            with_session(session, [&](Journal& j) {
                j.append(RecordKind::EvidenceAdded, {{"id", id}, {"description", description}});
                report_mutation(ctx, j, "added evidence '" + id + "'");
            });
        };
    });

    // argument add
    std::string evidence_id, core;
    double support = 1.0;
    auto* argument = app.add_subcommand("argument", "Manage arguments");
    argument->require_subcommand(1);
    auto* argument_add = argument->add_subcommand("add", "Add an argument from evidence to a core position");
    argument_add->add_option("session", session)->required();
    argument_add->add_option("--id", id)->required();
    argument_add->add_option("--evidence", evidence_id)->required();
    argument_add->add_option("--core", core, "Comma-separated core position")->required();
    argument_add->add_option("--support", support, "Base support in [0,1]");
    add_json(argument_add);
    argument_add->callback([&] {
        action = [&] {
            with_session(session, [&](Journal& j) {
                json arg = {{"id", id}, {"evidence", evidence_id}, {"core", core}, {"base_support", support}, {"exceptions", json::array()}};
                j.append(RecordKind::ArgumentAdded, {{"argument", arg}});
                report_mutation(ctx, j, "added argument '" + id + "'");
            });
        };
    });

    // exception add / status
    std::string argument_id, rebut_target, status_text = "ASSUMED_FALSE";
    double probability = 0.0;
    bool undercut = false;
    auto* exception = app.add_subcommand("exception", "Manage exception conditions");
    exception->require_subcommand(1);
    auto* exception_add = exception->add_subcommand("add", "Attach an exception condition to an argument");
    exception_add->add_option("session", session)->required();
    exception_add->add_option("--argument", argument_id)->required();
    exception_add->add_option("--id", id)->required();
    exception_add->add_option("--desc", description);
    exception_add->add_option("--prob", probability, "Chance the exception holds")->required();
    auto* undercut_flag = exception_add->add_flag("--undercut", undercut, "Exception voids the argument");
    auto* rebut_opt = exception_add->add_option("--rebut", rebut_target, "Exception redirects support to these hypotheses");
    undercut_flag->excludes(rebut_opt);
    exception_add->add_option("--status", status_text, "ASSUMED_FALSE, ACTIVE or CONFIRMED_TRUE");
    add_json(exception_add);
    exception_add->callback([&] {
        action = [&] {
            if (!undercut && rebut_target.empty()) throw Error(ErrorCode::ValidationFailed, "give --undercut or --rebut TARGET");
            with_session(session, [&](Journal& j) {
                json impact = undercut ? json{{"kind", "UNDERCUT"}} : json{{"kind", "REBUT"}, {"target", rebut_target}};
                json e = {{"id", id}, {"description", description}, {"probability", probability}, {"impact", impact},
                          {"status", canonical_status(status_text)}};
                j.append(RecordKind::ExceptionAdded, {{"argument", argument_id}, {"exception", e}});
                report_mutation(ctx, j, "added exception '" + id + "' to '" + argument_id + "'");
            });
        };
    });
    std::string new_status;
    auto* exception_status = exception->add_subcommand("status", "Change an exception's status everywhere it appears");
    exception_status->add_option("session", session)->required();
    exception_status->add_option("--id", id)->required();
    exception_status->add_option("--to", new_status, "ASSUMED_FALSE, ACTIVE or CONFIRMED_TRUE")->required();
    add_json(exception_status);
    exception_status->callback([&] {
        action = [&] {
            with_session(session, [&](Journal& j) {
                j.append(RecordKind::StatusChanged, {{"exception", id}, {"status", canonical_status(new_status)}});
                report_mutation(ctx, j, "exception '" + id + "' is now " + canonical_status(new_status));
            });
        };
    });

    // ledger
    std::string from_set, to_set;
    double amount = 0.0;
    auto* ledger = app.add_subcommand("ledger", "Manage retractable belief commitments");
    ledger->require_subcommand(1);
    auto* commit = ledger->add_subcommand("commit", "Bottom-up: move belief to a more precise subset");
    commit->add_option("session", session)->required();
    commit->add_option("--from", from_set)->required();
    commit->add_option("--to", to_set)->required();
    commit->add_option("--amount", amount)->required();
    commit->add_option("--id", id, "Record id (default L<n>)");
    add_json(commit);
    commit->callback([&] {
        action = [&] {
            with_session(session, [&](Journal& j) {
                json payload = {{"kind", "BOTTOM_UP"}, {"from", from_set}, {"to", to_set}, {"amount", amount}};
                payload["id"] = id.empty() ? "L" + std::to_string(j.state().ledger().records().size() + 1) : id;
                j.append(RecordKind::LedgerCommitted, payload);
                report_mutation(ctx, j, "committed '" + payload["id"].get<std::string>() + "'");
            });
        };
    });
    auto* fallback = ledger->add_subcommand("fallback", "Top-down: mark belief as retractable toward a superset");
    fallback->add_option("session", session)->required();
    fallback->add_option("--precise", from_set)->required();
    fallback->add_option("--fallback", to_set)->required();
    fallback->add_option("--fraction", amount)->required();
    fallback->add_option("--id", id);
    add_json(fallback);
    fallback->callback([&] {
        action = [&] {
            with_session(session, [&](Journal& j) {
                json payload = {{"kind", "TOP_DOWN"}, {"precise", from_set}, {"fallback", to_set}, {"fraction", amount}};
                payload["id"] = id.empty() ? "L" + std::to_string(j.state().ledger().records().size() + 1) : id;
                j.append(RecordKind::LedgerCommitted, payload);
                report_mutation(ctx, j, "declared fallback '" + payload["id"].get<std::string>() + "'");
            });
        };
    });
    auto* ledger_retract = ledger->add_subcommand("retract", "Retract a ledger record");
    ledger_retract->add_option("session", session)->required();
    ledger_retract->add_option("--id", id)->required();
    add_json(ledger_retract);
    ledger_retract->callback([&] {
        action = [&] {
            with_session(session, [&](Journal& j) {
                j.append(RecordKind::LedgerRetracted, {{"id", id}});
                report_mutation(ctx, j, "retracted '" + id + "'");
            });
        };
    });

    // elicit
    std::size_t max_rounds = kDefaultMaxRounds;
    auto* elicit = app.add_subcommand("elicit", "Crystal-ball dialogue that grows an argument's exception list");
    elicit->add_option("session", session)->required();
    elicit->add_option("--argument", argument_id)->required();
    elicit->add_option("--max-rounds", max_rounds);
    elicit->callback([&] {
        action = [&] {
            with_session(session, [&](Journal& j) {
                const auto* arg = j.state().find_argument(argument_id);
                if (!arg) throw Error(ErrorCode::UnknownArgument, "no argument '" + argument_id + "'");
                const auto* ev = j.state().find_evidence(arg->evidence_id);
                auto opening = start_elicitation(*j.state().frame, *arg, *ev, max_rounds);
                j.append(RecordKind::ElicitationPrompt,
                         {{"argument", argument_id}, {"max_rounds", max_rounds}, {"prompt", opening.prompt}});
                while (true) {
                    const auto& s = j.state().elicitations.at(argument_id);
                    if (s.state == ElicitationState::Closed) break;
                    if (s.round >= s.max_rounds) {
                        ctx.out << "round limit reached\n";
                        j.append(RecordKind::ElicitationResponse, {{"argument", argument_id}, {"response", "PASS"}});
                        break;
                    }
                    ctx.out << s.prompt << "\n> " << std::flush;
                    std::string line;
                    if (!std::getline(ctx.in, line)) {
                        ctx.out << "\n";
                        j.append(RecordKind::ElicitationResponse, {{"argument", argument_id}, {"response", "PASS"}});
                        break;
                    }
                    auto reply = parse_reply(line, argument_id);
                    if (!reply) {
                        ctx.out << "? expected: pass | undercut P TEXT | rebut TARGETS P TEXT\n";
                        continue;
                    }
                    try {
                        j.append(RecordKind::ElicitationResponse, *reply);
                    } catch (const Error& e) {
                        ctx.out << "? " << e.detail() << "\n";
                    }
                }
                const auto& s = j.state().elicitations.at(argument_id);
                ctx.out << "elicitation closed after " << s.round << " qualification(s) (version " << j.version() << ")\n";
            });
        };
    });

    // status
    auto* status = app.add_subcommand("status", "Show the session");
    status->add_option("session", session)->required();
    add_json(status);
    status->callback([&] {
        action = [&] {
            with_session(session, [&](Journal& j) {
                const auto& st = j.state();
                if (ctx.json_output) {
                    ctx.out << state_to_json(st).dump(2) << "\n";
                    return;
                }
                const Frame& frame = *st.frame;
                ctx.out << "session " << st.session_id << " (version " << st.version << ")\n";
                ctx.out << "frame " << frame.describe(frame.full()) << "\n";
                ctx.out << "evidence: " << st.evidence.size() << ", arguments: " << st.workspace.arguments.size()
                        << ", ledger records: " << st.ledger().records().size() << "\n";
                for (const auto& a : st.workspace.arguments) {
                    ctx.out << "  argument " << a.id << " <- " << a.evidence_id << ": core " << frame.describe(a.core_position)
                            << ", support " << fixed(a.base_support) << "\n";
                    for (const auto& e : a.exceptions) {
                        ctx.out << "    " << e.id << " [" << to_string(e.impact.kind);
                        if (e.impact.kind == ImpactKind::Rebut) ctx.out << " " << frame.describe(e.impact.target);
                        ctx.out << ", p=" << fixed(e.probability) << ", " << to_string(e.status) << "] " << e.description << "\n";
                    }
                }
                for (const auto& r : st.ledger().records()) {
                    ctx.out << "  ledger " << r.id << " " << to_string(r.kind) << " " << frame.describe(r.source_set) << " / "
                            << frame.describe(r.committed_set) << " amount " << fixed(r.amount) << " " << to_string(r.state) << "\n";
                }
                try {
                    print_fusion(ctx.out, frame, evaluate(st.workspace, true));
                } catch (const Error& e) {
                    ctx.out << "fusion unavailable: " << e.what() << "\n";
                }
            });
        };
    });

    // fuse
    bool snapshot = false;
    auto* fuse_cmd = app.add_subcommand("fuse", "Fuse all arguments and report conflict");
    fuse_cmd->add_option("session", session)->required();
    fuse_cmd->add_flag("--snapshot", snapshot, "Journal the result as a FUSION_SNAPSHOT record");
    add_json(fuse_cmd);
    fuse_cmd->callback([&] {
        action = [&] {
            with_session(session, [&](Journal& j) {
                auto result = fuse(j.state().workspace);
                if (snapshot) j.append(RecordKind::FusionSnapshot, {{"fusion", json_io::to_json(result)}});
                if (ctx.json_output) {
                    ctx.out << json_io::to_json(result).dump(2) << "\n";
                } else {
                    print_fusion(ctx.out, *j.state().frame, result);
                }
            });
        };
    });

    // culpability
    std::vector<std::string> items;
    auto* culp = app.add_subcommand("culpability", "Rank retractable assumptions by their share of the conflict");
    culp->add_option("session", session)->required();
    culp->add_option("--item", items, "Restrict to these items (repeatable)");
    add_json(culp);
    culp->callback([&] {
        action = [&] {
            with_session(session, [&](Journal& j) {
                auto report = culpability(j.state().workspace, items.empty() ? std::nullopt : std::optional(items));
                if (ctx.json_output) {
                    ctx.out << json_io::to_json(report).dump(2) << "\n";
                } else {
                    print_report(ctx.out, report);
                }
            });
        };
    });

    // resolve
    ResolutionPolicy policy;
    bool single_step = false, strict = false;
    auto* resolve_cmd = app.add_subcommand("resolve", "Retract the most culpable assumptions until conflict is acceptable");
    resolve_cmd->add_option("session", session)->required();
    resolve_cmd->add_flag("--step", single_step, "Perform one iteration only");
    resolve_cmd->add_option("--tau", policy.tau, "Acceptable conflict level")->check(CLI::Range(0.0, 1.0));
    resolve_cmd->add_option("--max-steps", policy.max_steps)->check(CLI::PositiveNumber);
    resolve_cmd->add_flag("--strict", strict, "Exit with status 2 on FIRM_CONFLICT");
    add_json(resolve_cmd);
    int resolve_exit = kOk;
    resolve_cmd->callback([&] {
        action = [&] {
            with_session(session, [&](Journal& j) {
                ResolutionTrace trace;
                bool finished = false;
                const std::size_t limit = single_step ? 1 : policy.max_steps;
                while (trace.steps.size() < limit) {
                    Workspace ws = j.state().workspace;
                    auto outcome = step(ws, policy, trace.steps.size() + 1);
                    if (outcome.done) {
                        trace.terminal = *outcome.done;
                        trace.report = std::move(outcome.report);
                        finished = true;
                        break;
                    }
                    j.append(RecordKind::ResolutionStep, step_payload(*outcome.event));
                    trace.steps.push_back(*outcome.event);
                }
                trace.final = evaluate(j.state().workspace, true);
                if (!finished) {
                    Workspace ws = j.state().workspace;
                    auto probe = step(ws, policy, trace.steps.size() + 1);
                    if (probe.done) {
                        trace.terminal = *probe.done;
                        trace.report = std::move(probe.report);
                    } else {
                        trace.terminal = Terminal::StepLimit;
                    }
                }
                if (ctx.json_output) {
                    ctx.out << json_io::to_json(trace).dump(2) << "\n";
                } else {
                    for (const auto& s : trace.steps) print_step(ctx.out, s);
                    ctx.out << "terminal: " << to_string(trace.terminal) << "\n";
                    print_fusion(ctx.out, *j.state().frame, trace.final);
                    if (trace.report) print_report(ctx.out, *trace.report);
                }
                if (strict && trace.terminal == Terminal::FirmConflict) resolve_exit = kDomain;
            });
        };
    });

    // whatif
    std::vector<std::string> retractions;
    auto* whatif = app.add_subcommand("whatif", "Preview fusion with assumptions retracted; never journals");
    whatif->add_option("session", session)->required();
    whatif->add_option("--retract", retractions, "Item to retract (repeatable)")->required();
    add_json(whatif);
    whatif->callback([&] {
        action = [&] {
            with_session(session, [&](Journal& j) {
                Workspace ws = j.state().workspace;
                for (const auto& item : retractions) ws = with_retracted(ws, item);
                auto result = evaluate(ws, true);
                if (ctx.json_output) {
                    ctx.out << json_io::to_json(result).dump(2) << "\n";
                } else {
                    print_fusion(ctx.out, *j.state().frame, result);
                }
            });
        };
    });

    // voi
    std::string question_file;
    auto* voi = app.add_subcommand("voi", "Value of a question: flip probability and congruence");
    voi->add_option("session", session)->required();
    voi->add_option("--question", question_file, "Question file")->required()->check(CLI::ExistingFile);
    add_json(voi);
    voi->callback([&] {
        action = [&] {
            with_session(session, [&](Journal& j) {
                std::ifstream qf(question_file);
                json q;
                try {
                    q = json::parse(qf);
                } catch (const json::exception& e) {
                    throw Error(ErrorCode::ValidationFailed, "question file: " + std::string(e.what()));
                }
                auto answers = json_io::question_from_json(*j.state().frame, q);
                auto value = value_of_question(j.state().workspace, answers);
                if (ctx.json_output) {
                    ctx.out << json_io::to_json(value).dump(2) << "\n";
                } else {
                    ctx.out << "favored hypothesis: " << value.favored << "\n"
                            << "flip probability:   " << fixed(value.flip_probability) << "\n"
                            << "congruence:         " << fixed(value.congruence) << "\n";
                }
            });
        };
    });

    // scenario
    std::string scenario_name;
    auto* scenario = app.add_subcommand("scenario", "Shipped demonstration scenarios");
    scenario->require_subcommand(1);
    auto* scenario_load = scenario->add_subcommand("load", "Write a scenario into a new session file");
    scenario_load->add_option("name", scenario_name)->required();
    scenario_load->add_option("session", session)->required();
    add_json(scenario_load);
    scenario_load->callback([&] {
        action = [&] {
            auto journal = create_scenario(scenario_name, session);
            report_mutation(ctx, journal, "loaded scenario '" + scenario_name + "'");
        };
    });
    auto* scenario_list = scenario->add_subcommand("list", "List scenario names");
    scenario_list->callback([&] {
        action = [&] {
            for (const auto& n : scenario_names()) ctx.out << n << "\n";
        };
    });

    // export
    std::string output;
    auto* export_cmd = app.add_subcommand("export", "Write the journal, preserving unknown fields");
    export_cmd->add_option("session", session)->required();
    export_cmd->add_option("--output,-o", output, "Destination file (default: standard output)");
    export_cmd->callback([&] {
        action = [&] {
            with_session(session, [&](Journal& j) {
                if (output.empty()) {
                    j.write(ctx.out);
                } else {
                    j.save_as(output);
                }
            });
        };
    });

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return kUsage;
    }
    try {
        if (action) action();
        return resolve_exit;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kDomain;
    }
}

}  // namespace sed::cli

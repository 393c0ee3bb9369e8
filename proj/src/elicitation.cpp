#include "sed/elicitation.hpp"

#include <sstream>

#include "sed/errors.hpp"

namespace sed {

std::string crystal_ball_prompt(const std::string& argument_id, const std::string& core_text,
                                const std::string& evidence_text, const std::vector<std::string>& negated) {
    std::ostringstream out;
    out << "CRYSTAL BALL [argument " << argument_id << ", round " << negated.size() << "]\n";
    out << "The Core Position " << core_text << " is FALSE.\n";
    out << "The evidence is TRUE: " << evidence_text << "\n";
    if (!negated.empty()) {
        out << "These qualifications are also FALSE:\n";
        for (std::size_t i = 0; i < negated.size(); ++i) out << "  Q" << (i + 1) << ". " << negated[i] << "\n";
    }
    out << "How else could the Core Position be false? Give a new qualification, or pass.";
    return out.str();
}

ElicitationSession start_elicitation(const Frame& frame, const Argument& arg, const EvidenceItem& evidence,
                                     std::size_t max_rounds) {
    ElicitationSession s;
    s.argument_id = arg.id;
    s.core_text = frame.describe(arg.core_position);
    s.evidence_text = evidence.description.empty() ? evidence.id : evidence.description;
    for (const auto& e : arg.exceptions) s.negated.push_back(e.description.empty() ? e.id : e.description);
    s.round = s.negated.size();
    s.max_rounds = max_rounds;
    s.prompt = crystal_ball_prompt(s.argument_id, s.core_text, s.evidence_text, s.negated);
    return s;
}

std::string describe_response(const Frame& frame, const Qualification& q) {
    std::ostringstream out;
    out << to_string(q.impact.kind);
    if (q.impact.kind == ImpactKind::Rebut) out << " " << frame.describe(q.impact.target);
    out << " p=" << q.probability << ": " << q.description;
    return out.str();
}

std::string submit_qualification(ElicitationSession& session, Argument& arg, const Frame& frame,
                                 const Qualification& q) {
    if (session.state != ElicitationState::AwaitingResponse) {
        throw Error(ErrorCode::SessionClosed, "the elicitation for '" + session.argument_id + "' is closed");
    }
    if (arg.id != session.argument_id) {
        throw Error(ErrorCode::UnknownArgument, "session belongs to '" + session.argument_id + "', not '" + arg.id + "'");
    }
    if (!(q.probability >= 0.0 && q.probability <= 1.0)) {
        throw Error(ErrorCode::BadProbability, "qualification probability must lie in [0,1]");
    }
    if (session.round >= session.max_rounds) {
        throw Error(ErrorCode::RoundLimit, "round limit " + std::to_string(session.max_rounds) + " reached");
    }

    std::string id = q.exception_id;
    if (id.empty()) {
        std::size_t n = session.round + 1;
        do {
            id = arg.id + ".Q" + std::to_string(n++);
        } while (arg.find_exception(id));
    }
    ExceptionCondition e{id, q.description, q.probability, q.impact, ExceptionStatus::AssumedFalse};
    Argument updated = arg;
    updated.exceptions.push_back(e);
    validate_argument(frame, updated);
    arg = std::move(updated);

    session.transcript.push_back({session.prompt, describe_response(frame, q)});
    session.negated.push_back(q.description.empty() ? id : q.description);
    ++session.round;
    session.prompt = crystal_ball_prompt(session.argument_id, session.core_text, session.evidence_text, session.negated);
    return id;
}

void pass(ElicitationSession& session) {
    if (session.state != ElicitationState::AwaitingResponse) {
        throw Error(ErrorCode::SessionClosed, "the elicitation for '" + session.argument_id + "' is closed");
    }
    session.transcript.push_back({session.prompt, "PASS"});
    session.state = ElicitationState::Closed;
}

}  // namespace sed

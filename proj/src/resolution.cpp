#include "sed/resolution.hpp"

#include "sed/errors.hpp"

namespace sed {

std::string_view to_string(Terminal terminal) noexcept {
    switch (terminal) {
        case Terminal::Resolved: return "RESOLVED";
        case Terminal::FirmConflict: return "FIRM_CONFLICT";
        case Terminal::StepLimit: return "STEP_LIMIT";
    }
    return "RESOLVED";
}

void validate_policy(const ResolutionPolicy& policy) {
    if (!(policy.tau >= 0.0 && policy.tau <= 1.0)) throw Error(ErrorCode::InvalidArgument, "tau must lie in [0,1]");
    if (policy.max_steps == 0) throw Error(ErrorCode::InvalidArgument, "max_steps must be positive");
}

StepOutcome step(Workspace& ws, const ResolutionPolicy& policy, std::size_t index) {
    validate_policy(policy);
    if (ws.arguments.empty()) throw Error(ErrorCode::EmptySession, "nothing to resolve: the session has no arguments");

    StepOutcome out;
    const double before = evaluate(ws, false).conflict;
    if (before <= policy.tau) {
        out.done = Terminal::Resolved;
        return out;
    }
    if (retractable_items(ws).empty()) {
        out.done = Terminal::FirmConflict;
        return out;
    }
    auto report = culpability(ws);
    const auto& top = report.entries.front();
    // Items whose retraction would not reduce conflict are left for the analyst.
    if (!(top.culpability > 0.0)) {
        out.done = Terminal::FirmConflict;
        out.report = std::move(report);
        return out;
    }
    ws = with_retracted(ws, top.item);
    out.event = ResolutionStep{index, before, top.item, top.culpability, top.conflict_if_retracted};
    return out;
}

ResolutionTrace resolve(Workspace& ws, const ResolutionPolicy& policy) {
    validate_policy(policy);
    ResolutionTrace trace;
    while (true) {
        if (trace.steps.size() >= policy.max_steps) {
            trace.terminal = Terminal::StepLimit;
            break;
        }
        auto outcome = step(ws, policy, trace.steps.size() + 1);
        if (outcome.done) {
            trace.terminal = *outcome.done;
            trace.report = std::move(outcome.report);
            break;
        }
        trace.steps.push_back(std::move(*outcome.event));
    }
    trace.final = evaluate(ws, true);
    // A step limit reached exactly when conflict fell to tau still counts as resolved.
    if (trace.terminal == Terminal::StepLimit && trace.final.conflict <= policy.tau) trace.terminal = Terminal::Resolved;
    return trace;
}

Workspace replay(Workspace initial, const ResolutionTrace& trace) {
    for (const auto& s : trace.steps) initial = with_retracted(initial, s.retracted);
    return initial;
}

}  // namespace sed

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sed/fusion.hpp"

namespace sed {

struct ResolutionPolicy {
    /// Conflict at or below this level counts as chance disagreement.
    double tau = 0.05;
    std::size_t max_steps = 100;
};

enum class Terminal { Resolved, FirmConflict, StepLimit };

std::string_view to_string(Terminal terminal) noexcept;

struct ResolutionStep {
    std::size_t index = 0;
    double conflict_before = 0.0;
    std::string retracted;
    double culpability = 0.0;
    double conflict_after = 0.0;
};

struct ResolutionTrace {
    std::vector<ResolutionStep> steps;
    Terminal terminal = Terminal::Resolved;
    FusionResult final;
    /// Culpability ranking that led to a FIRM_CONFLICT stop, when one was computed.
    std::optional<CulpabilityReport> report;
};

/// Result of one control-loop iteration: either a retraction event or a terminal classification.
struct StepOutcome {
    std::optional<ResolutionStep> event;
    std::optional<Terminal> done;
    std::optional<CulpabilityReport> report;
};

/// Validates the policy; throws InvalidArgument for tau outside [0,1] or max_steps == 0.
void validate_policy(const ResolutionPolicy& policy);

/// One iteration: fuse, stop if conflict <= tau, otherwise retract the most culpable item.
/// `index` is recorded on the emitted step.
StepOutcome step(Workspace& ws, const ResolutionPolicy& policy, std::size_t index = 1);

/// Greedy retraction loop. All retractions are applied to `ws`.
ResolutionTrace resolve(Workspace& ws, const ResolutionPolicy& policy = {});

/// Re-applies the recorded retractions to `initial`.
Workspace replay(Workspace initial, const ResolutionTrace& trace);

}  // namespace sed

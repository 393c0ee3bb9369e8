#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "sed/argument.hpp"

namespace sed {

inline constexpr std::size_t kDefaultMaxRounds = 12;

enum class ElicitationState { AwaitingResponse, Closed };

/// Which conclusion the crystal ball negates. Only the core-position direction is implemented;
/// the enum exists so a disconfirmation variant can be added without changing the session type.
enum class ElicitationDirection { CoreFalse };

struct TranscriptEntry {
    std::string prompt;
    std::string response;
    friend bool operator==(const TranscriptEntry&, const TranscriptEntry&) = default;
};

struct Qualification {
    std::string description;
    double probability = 0.0;
    Impact impact;
    /// Optional id for the new exception; defaults to "<argument>.Q<n>".
    std::string exception_id;
};

/// Crystal-ball dialogue for one argument. Each round the oracle declares the core position
/// false, the evidence true, and every qualification named so far false.
struct ElicitationSession {
    std::string argument_id;
    std::string core_text;
    std::string evidence_text;
    std::vector<std::string> negated;
    std::vector<TranscriptEntry> transcript;
    std::string prompt;
    ElicitationState state = ElicitationState::AwaitingResponse;
    std::size_t round = 0;
    std::size_t max_rounds = kDefaultMaxRounds;
    ElicitationDirection direction = ElicitationDirection::CoreFalse;
};

/// Fixed prompt template; a pure function of its inputs.
std::string crystal_ball_prompt(const std::string& argument_id, const std::string& core_text,
                                const std::string& evidence_text, const std::vector<std::string>& negated);

/// Opens a dialogue. Existing exceptions seed the negation stack and count as rounds.
ElicitationSession start_elicitation(const Frame& frame, const Argument& arg, const EvidenceItem& evidence,
                                     std::size_t max_rounds = kDefaultMaxRounds);

/// Appends the qualification to `arg` as an ASSUMED_FALSE exception and advances the prompt.
/// Returns the id given to the new exception.
std::string submit_qualification(ElicitationSession& session, Argument& arg, const Frame& frame,
                                 const Qualification& q);

void pass(ElicitationSession& session);

std::string describe_response(const Frame& frame, const Qualification& q);

}  // namespace sed

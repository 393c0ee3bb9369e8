#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sed/argument.hpp"
#include "sed/ledger.hpp"

namespace sed {

/// Hard cap on exceptions shared between arguments (2^16 joint assignments).
inline constexpr std::size_t kMaxSharedExceptions = 16;

/// Everything that takes part in a fusion: the frame, the arguments and an optional ledger.
struct Workspace {
    FramePtr frame;
    std::vector<Argument> arguments;
    std::optional<Ledger> ledger;
};

struct FusionResult {
    /// Normalized fused belief; empty only when the combination is in total conflict.
    std::optional<MassFunction> fused;
    /// Pre-normalization mass on the empty set.
    double conflict = 0.0;
    std::map<std::pair<std::string, std::string>, double> pairwise_conflict;
    std::vector<std::string> contributing_arguments;

    bool total_conflict() const noexcept { return !fused.has_value(); }
};

struct CulpabilityEntry {
    std::string item;
    double culpability = 0.0;
    double conflict_if_retracted = 0.0;
};

/// Sorted by descending culpability, then ascending id. Culpability may be negative
/// when retracting an item would create conflict (possible with rebutters).
struct CulpabilityReport {
    double conflict = 0.0;
    std::vector<CulpabilityEntry> entries;
};

struct Answer {
    double probability = 0.0;
    Argument argument;
};

struct QuestionValue {
    double flip_probability = 0.0;
    double congruence = 0.0;
    std::string favored;
};

/// Exceptions appearing in two or more arguments with an uncertain effective probability.
std::vector<std::string> shared_free_exceptions(std::span<const Argument> arguments);

/// Unnormalized joint combination with exact conditioning on shared exceptions.
/// The mass left on the empty subset is the conflict K.
MassFunction fuse_unnormalized(const Workspace& ws);

/// Full fusion; throws TotalConflict when K reaches 1.
FusionResult fuse(const Workspace& ws);

/// Same as `fuse` but reports total conflict through an empty `fused` instead of throwing.
/// Pairwise conflicts are skipped unless requested.
FusionResult evaluate(const Workspace& ws, bool with_pairwise = true);

/// Ids that can be retracted right now: ASSUMED_FALSE exceptions and unblocked in-force ledger records.
std::vector<std::string> retractable_items(const Workspace& ws);

/// Copy of `ws` with one item retracted (exception -> ACTIVE everywhere it appears, or ledger record retracted).
Workspace with_retracted(const Workspace& ws, const std::string& item);

/// Culpability of each item: the share of K removed when only that item is retracted.
/// Pass std::nullopt to score every retractable item.
CulpabilityReport culpability(const Workspace& ws, const std::optional<std::vector<std::string>>& items = std::nullopt);

/// Singleton hypothesis with the largest belief; ties go to the lexicographically smallest label.
std::string favored_hypothesis(const MassFunction& fused);

/// Chance that the answer to a question changes the favored hypothesis, plus the probability
/// of the designated positive answer (index 0).
QuestionValue value_of_question(const Workspace& ws, std::span<const Answer> answers);

}  // namespace sed

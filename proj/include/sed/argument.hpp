#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sed/belief.hpp"

namespace sed {

/// Hard cap on exceptions enumerated inside one compiled argument (2^20 assignments).
inline constexpr std::size_t kMaxFreeExceptions = 20;

struct EvidenceItem {
    std::string id;
    std::string description;
    std::uint64_t reported_at = 0;
};

enum class ImpactKind { Undercut, Rebut };

/// How an exception disrupts its argument: an undercutter voids the argument,
/// a rebutter redirects its support to `target`.
struct Impact {
    ImpactKind kind = ImpactKind::Undercut;
    Subset target;

    static Impact undercut() { return {}; }
    static Impact rebut(Subset target) { return {ImpactKind::Rebut, target}; }

    friend bool operator==(const Impact&, const Impact&) = default;
};

enum class ExceptionStatus { AssumedFalse, Active, ConfirmedTrue };

std::string_view to_string(ImpactKind kind) noexcept;
std::string_view to_string(ExceptionStatus status) noexcept;
ImpactKind parse_impact_kind(std::string_view text);
ExceptionStatus parse_exception_status(std::string_view text);

struct ExceptionCondition {
    std::string id;
    std::string description;
    double probability = 0.0;
    Impact impact;
    ExceptionStatus status = ExceptionStatus::AssumedFalse;

    /// Only default-false exceptions can be retracted (moved to Active).
    bool retractable() const noexcept { return status == ExceptionStatus::AssumedFalse; }

    /// Chance the exception holds under its current status.
    double effective_probability() const noexcept {
        switch (status) {
            case ExceptionStatus::AssumedFalse: return 0.0;
            case ExceptionStatus::Active: return probability;
            case ExceptionStatus::ConfirmedTrue: return 1.0;
        }
        return 0.0;
    }

    /// Two arguments may reference one condition only if these fields agree.
    bool same_condition(const ExceptionCondition& other) const noexcept {
        return probability == other.probability && impact.kind == other.impact.kind && status == other.status;
    }
};

struct Argument {
    std::string id;
    std::string evidence_id;
    Subset core_position;
    double base_support = 1.0;
    std::vector<ExceptionCondition> exceptions;

    const ExceptionCondition* find_exception(std::string_view exception_id) const;
    ExceptionCondition* find_exception(std::string_view exception_id);
};

/// Truth values forced on exceptions, keyed by exception id.
using PinnedAssignment = std::map<std::string, bool, std::less<>>;

/// Throws InvalidArgument / BadProbability when the argument breaks its invariants on `frame`.
void validate_argument(const Frame& frame, const Argument& arg);

/// Conclusion drawn by an argument when exactly the exceptions flagged in `truth` hold.
/// `truth[i]` refers to `arg.exceptions[i]`.
Subset argument_conclusion(const Frame& frame, const Argument& arg, const std::vector<bool>& truth);

/// Marginalizes the argument's independent exceptions into a normalized mass function.
MassFunction compile_argument(const FramePtr& frame, const Argument& arg, const PinnedAssignment& pinned = {});

bool is_legal_transition(ExceptionStatus from, ExceptionStatus to) noexcept;

/// Returns a copy of `arg` with the exception moved to `status`.
Argument set_exception_status(const Argument& arg, std::string_view exception_id, ExceptionStatus status);

/// Applies the transition to every argument that shares the exception id.
void propagate_exception_status(std::vector<Argument>& arguments, std::string_view exception_id, ExceptionStatus status);

}  // namespace sed

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace sed {

enum class ErrorCode {
    // belief core
    InvalidFrame,
    UnknownHypothesis,
    NegativeMass,
    MassExceedsOne,
    EmptySubsetAssignment,
    ForeignSubset,
    FrameMismatch,
    TotalConflict,
    ZeroDenominator,
    BadProbability,
    // arguments
    InvalidArgument,
    TooManyFreeExceptions,
    UnknownPinnedId,
    UnknownException,
    IllegalTransition,
    // ledger
    NotProperSubset,
    NotProperSuperset,
    InsufficientMass,
    NonPositiveAmount,
    NoMassToMark,
    UnknownRecord,
    AlreadyRetracted,
    RetractionBlocked,
    // fusion / resolution
    TooManySharedExceptions,
    InconsistentSharedException,
    NoConflict,
    NotRetractable,
    BadAnswerDistribution,
    EmptySession,
    // elicitation
    UnknownArgument,
    SessionClosed,
    RoundLimit,
    // session store
    ValidationFailed,
    StorageError,
    CorruptRecord,
    MissingHeader,
    VersionUnsupported,
    UnknownScenario,
    UnknownSession,
    VersionConflict,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& detail, std::optional<ErrorCode> cause = std::nullopt)
        : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code), detail_(detail), cause_(cause) {}

    ErrorCode code() const noexcept { return code_; }
    const std::string& detail() const noexcept { return detail_; }
    /// Underlying domain error when a journal append rejected a record.
    std::optional<ErrorCode> cause() const noexcept { return cause_; }

private:
    ErrorCode code_;
    std::string detail_;
    std::optional<ErrorCode> cause_;
};

/// Storage-class errors map to exit status 3 in the CLI; everything else is a domain error.
bool is_storage_error(ErrorCode code) noexcept;

}  // namespace sed

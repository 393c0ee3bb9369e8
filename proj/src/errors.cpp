#include "sed/errors.hpp"

namespace sed {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::InvalidFrame: return "InvalidFrame";
        case ErrorCode::UnknownHypothesis: return "UnknownHypothesis";
        case ErrorCode::NegativeMass: return "NegativeMass";
        case ErrorCode::MassExceedsOne: return "MassExceedsOne";
        case ErrorCode::EmptySubsetAssignment: return "EmptySubsetAssignment";
        case ErrorCode::ForeignSubset: return "ForeignSubset";
        case ErrorCode::FrameMismatch: return "FrameMismatch";
        case ErrorCode::TotalConflict: return "TotalConflict";
        case ErrorCode::ZeroDenominator: return "ZeroDenominator";
        case ErrorCode::BadProbability: return "BadProbability";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::TooManyFreeExceptions: return "TooManyFreeExceptions";
        case ErrorCode::UnknownPinnedId: return "UnknownPinnedId";
        case ErrorCode::UnknownException: return "UnknownException";
        case ErrorCode::IllegalTransition: return "IllegalTransition";
        case ErrorCode::NotProperSubset: return "NotProperSubset";
        case ErrorCode::NotProperSuperset: return "NotProperSuperset";
        case ErrorCode::InsufficientMass: return "InsufficientMass";
        case ErrorCode::NonPositiveAmount: return "NonPositiveAmount";
        case ErrorCode::NoMassToMark: return "NoMassToMark";
        case ErrorCode::UnknownRecord: return "UnknownRecord";
        case ErrorCode::AlreadyRetracted: return "AlreadyRetracted";
        case ErrorCode::RetractionBlocked: return "RetractionBlocked";
        case ErrorCode::TooManySharedExceptions: return "TooManySharedExceptions";
        case ErrorCode::InconsistentSharedException: return "InconsistentSharedException";
        case ErrorCode::NoConflict: return "NoConflict";
        case ErrorCode::NotRetractable: return "NotRetractable";
        case ErrorCode::BadAnswerDistribution: return "BadAnswerDistribution";
        case ErrorCode::EmptySession: return "EmptySession";
        case ErrorCode::UnknownArgument: return "UnknownArgument";
        case ErrorCode::SessionClosed: return "SessionClosed";
        case ErrorCode::RoundLimit: return "RoundLimit";
        case ErrorCode::ValidationFailed: return "ValidationFailed";
        case ErrorCode::StorageError: return "StorageError";
        case ErrorCode::CorruptRecord: return "CorruptRecord";
        case ErrorCode::MissingHeader: return "MissingHeader";
        case ErrorCode::VersionUnsupported: return "VersionUnsupported";
        case ErrorCode::UnknownScenario: return "UnknownScenario";
        case ErrorCode::UnknownSession: return "UnknownSession";
        case ErrorCode::VersionConflict: return "VersionConflict";
    }
    return "Unknown";
}

bool is_storage_error(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::StorageError:
        case ErrorCode::CorruptRecord:
        case ErrorCode::MissingHeader:
        case ErrorCode::VersionUnsupported:
            return true;
        default:
            return false;
    }
}

}  // namespace sed

#include "sed/argument.hpp"

#include <set>

#include "sed/errors.hpp"

namespace sed {

std::string_view to_string(ImpactKind kind) noexcept { return kind == ImpactKind::Undercut ? "UNDERCUT" : "REBUT"; }

std::string_view to_string(ExceptionStatus status) noexcept {
    switch (status) {
        case ExceptionStatus::AssumedFalse: return "ASSUMED_FALSE";
        case ExceptionStatus::Active: return "ACTIVE";
        case ExceptionStatus::ConfirmedTrue: return "CONFIRMED_TRUE";
    }
    return "ASSUMED_FALSE";
}

ImpactKind parse_impact_kind(std::string_view text) {
    if (text == "UNDERCUT") return ImpactKind::Undercut;
    if (text == "REBUT") return ImpactKind::Rebut;
    throw Error(ErrorCode::InvalidArgument, "unknown impact kind '" + std::string(text) + "'");
}

ExceptionStatus parse_exception_status(std::string_view text) {
    if (text == "ASSUMED_FALSE") return ExceptionStatus::AssumedFalse;
    if (text == "ACTIVE") return ExceptionStatus::Active;
    if (text == "CONFIRMED_TRUE") return ExceptionStatus::ConfirmedTrue;
    throw Error(ErrorCode::InvalidArgument, "unknown exception status '" + std::string(text) + "'");
}

const ExceptionCondition* Argument::find_exception(std::string_view exception_id) const {
    for (const auto& e : exceptions) {
        if (e.id == exception_id) return &e;
    }
    return nullptr;
}

ExceptionCondition* Argument::find_exception(std::string_view exception_id) {
    for (auto& e : exceptions) {
        if (e.id == exception_id) return &e;
    }
    return nullptr;
}

void validate_argument(const Frame& frame, const Argument& arg) {
    if (arg.id.empty()) throw Error(ErrorCode::InvalidArgument, "argument id must be nonempty");
    if (arg.core_position.empty()) throw Error(ErrorCode::InvalidArgument, "argument '" + arg.id + "' has an empty core position");
    if (!frame.contains(arg.core_position)) {
        throw Error(ErrorCode::FrameMismatch, "core position of '" + arg.id + "' lies outside frame '" + frame.id() + "'");
    }
    if (!(arg.base_support >= 0.0 && arg.base_support <= 1.0)) {
        throw Error(ErrorCode::BadProbability, "base support of '" + arg.id + "' must lie in [0,1]");
    }
    std::set<std::string_view> ids;
    for (const auto& e : arg.exceptions) {
        if (e.id.empty()) throw Error(ErrorCode::InvalidArgument, "exception id must be nonempty");
        if (!ids.insert(e.id).second) {
            throw Error(ErrorCode::InvalidArgument, "exception '" + e.id + "' appears twice in argument '" + arg.id + "'");
        }
        if (!(e.probability >= 0.0 && e.probability <= 1.0)) {
            throw Error(ErrorCode::BadProbability, "exception '" + e.id + "' probability must lie in [0,1]");
        }
        if (e.impact.kind == ImpactKind::Rebut) {
            if (e.impact.target.empty()) {
                throw Error(ErrorCode::InvalidArgument, "rebutting exception '" + e.id + "' needs a nonempty target");
            }
            if (!frame.contains(e.impact.target)) {
                throw Error(ErrorCode::FrameMismatch, "rebut target of '" + e.id + "' lies outside the frame");
            }
        }
    }
}

Subset argument_conclusion(const Frame& frame, const Argument& arg, const std::vector<bool>& truth) {
    bool any_rebut = false;
    Subset rebutted = frame.full();
    for (std::size_t i = 0; i < arg.exceptions.size(); ++i) {
        if (!truth[i]) continue;
        const auto& impact = arg.exceptions[i].impact;
        if (impact.kind == ImpactKind::Undercut) return frame.full();
        any_rebut = true;
        rebutted = rebutted & impact.target;
    }
    if (!any_rebut) return arg.core_position;
    return rebutted.empty() ? frame.full() : rebutted;
}

MassFunction compile_argument(const FramePtr& frame, const Argument& arg, const PinnedAssignment& pinned) {
    validate_argument(*frame, arg);
    for (const auto& [id, _] : pinned) {
        if (!arg.find_exception(id)) {
            throw Error(ErrorCode::UnknownPinnedId, "'" + id + "' is not an exception of argument '" + arg.id + "'");
        }
    }

    // Undercutters only matter through the chance that none of them holds;
    // rebutters are enumerated because their targets intersect.
    const Subset full = frame->full();
    double survival = 1.0;
    bool undercut_certain = false;
    bool any_fixed_rebut = false;
    Subset fixed_rebut = full;
    std::vector<std::pair<double, Subset>> free_rebutters;
    std::size_t free_count = 0;

    for (const auto& e : arg.exceptions) {
        double p = e.effective_probability();
        if (auto it = pinned.find(e.id); it != pinned.end()) p = it->second ? 1.0 : 0.0;
        if (p > 0.0 && p < 1.0) ++free_count;
        if (p == 0.0) continue;
        if (e.impact.kind == ImpactKind::Undercut) {
            if (p == 1.0) undercut_certain = true;
            survival *= 1.0 - p;
        } else if (p == 1.0) {
            any_fixed_rebut = true;
            fixed_rebut = fixed_rebut & e.impact.target;
        } else {
            free_rebutters.emplace_back(p, e.impact.target);
        }
    }
    if (free_count > kMaxFreeExceptions) {
        throw Error(ErrorCode::TooManyFreeExceptions, "argument '" + arg.id + "' has " + std::to_string(free_count) +
                                                          " uncertain exceptions (limit 20)");
    }
    if (undercut_certain) survival = 0.0;

    MassFunction::FocalMap focal;
    const double supported = arg.base_support * survival;
    if (supported > 0.0) {
        const std::size_t r = free_rebutters.size();
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << r); ++mask) {
            double weight = 1.0;
            bool any = any_fixed_rebut;
            Subset target = fixed_rebut;
            for (std::size_t i = 0; i < r; ++i) {
                const auto& [p, t] = free_rebutters[i];
                if ((mask >> i) & 1u) {
                    weight *= p;
                    any = true;
                    target = target & t;
                } else {
                    weight *= 1.0 - p;
                }
            }
            Subset conclusion = !any ? arg.core_position : (target.empty() ? full : target);
            focal[conclusion] += supported * weight;
        }
    }
    const double ignorance = arg.base_support * (1.0 - survival) + (1.0 - arg.base_support);
    if (ignorance > 0.0) focal[full] += ignorance;
    return MassFunction(frame, std::move(focal), true);
}

bool is_legal_transition(ExceptionStatus from, ExceptionStatus to) noexcept {
    using S = ExceptionStatus;
    return (from == S::AssumedFalse && (to == S::Active || to == S::ConfirmedTrue)) ||
           (from == S::Active && (to == S::ConfirmedTrue || to == S::AssumedFalse));
}

Argument set_exception_status(const Argument& arg, std::string_view exception_id, ExceptionStatus status) {
    Argument out = arg;
    auto* e = out.find_exception(exception_id);
    if (!e) throw Error(ErrorCode::UnknownException, "'" + std::string(exception_id) + "' is not an exception of '" + arg.id + "'");
    if (!is_legal_transition(e->status, status)) {
        throw Error(ErrorCode::IllegalTransition, "exception '" + e->id + "' cannot move from " +
                                                      std::string(to_string(e->status)) + " to " +
                                                      std::string(to_string(status)));
    }
    e->status = status;
    return out;
}

void propagate_exception_status(std::vector<Argument>& arguments, std::string_view exception_id, ExceptionStatus status) {
    std::vector<Argument> updated = arguments;
    bool found = false;
    for (auto& arg : updated) {
        if (arg.find_exception(exception_id)) {
            arg = set_exception_status(arg, exception_id, status);
            found = true;
        }
    }
    if (!found) throw Error(ErrorCode::UnknownException, "no argument has exception '" + std::string(exception_id) + "'");
    arguments = std::move(updated);
}

}  // namespace sed

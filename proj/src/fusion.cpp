#include "sed/fusion.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "sed/errors.hpp"

namespace sed {

namespace {

void check_workspace(const Workspace& ws) {
    if (!ws.frame) throw Error(ErrorCode::InvalidFrame, "workspace without a frame");
    for (const auto& arg : ws.arguments) validate_argument(*ws.frame, arg);
    if (ws.ledger && !same_frame(ws.ledger->frame(), *ws.frame)) {
        throw Error(ErrorCode::FrameMismatch, "ledger frame '" + ws.ledger->frame().id() + "' differs from '" +
                                                  ws.frame->id() + "'");
    }
    std::map<std::string_view, const ExceptionCondition*> seen;
    for (const auto& arg : ws.arguments) {
        for (const auto& e : arg.exceptions) {
            auto [it, inserted] = seen.emplace(e.id, &e);
            if (!inserted && !it->second->same_condition(e)) {
                throw Error(ErrorCode::InconsistentSharedException,
                            "exception '" + e.id + "' is shared but its probability, impact kind or status differ");
            }
        }
    }
}

bool is_free(double p) noexcept { return p > 0.0 && p < 1.0; }

}  // namespace

std::vector<std::string> shared_free_exceptions(std::span<const Argument> arguments) {
    std::vector<std::string> order;
    std::map<std::string, std::size_t, std::less<>> count;
    for (const auto& arg : arguments) {
        for (const auto& e : arg.exceptions) {
            if (!is_free(e.effective_probability())) continue;
            if (count[e.id]++ == 0) order.push_back(e.id);
        }
    }
    std::vector<std::string> shared;
    for (const auto& id : order) {
        if (count[id] >= 2) shared.push_back(id);
    }
    return shared;
}

MassFunction fuse_unnormalized(const Workspace& ws) {
    check_workspace(ws);
    const auto shared = shared_free_exceptions(ws.arguments);
    if (shared.size() > kMaxSharedExceptions) {
        throw Error(ErrorCode::TooManySharedExceptions,
                    std::to_string(shared.size()) + " shared uncertain exceptions (limit 16)");
    }

    std::vector<double> shared_p;
    for (const auto& id : shared) {
        for (const auto& arg : ws.arguments) {
            if (const auto* e = arg.find_exception(id)) {
                shared_p.push_back(e->effective_probability());
                break;
            }
        }
    }

    // Which shared exceptions each argument holds; arguments without any compile once.
    std::vector<std::vector<std::size_t>> holds(ws.arguments.size());
    std::vector<std::optional<MassFunction>> fixed(ws.arguments.size());
    for (std::size_t a = 0; a < ws.arguments.size(); ++a) {
        for (std::size_t g = 0; g < shared.size(); ++g) {
            if (ws.arguments[a].find_exception(shared[g])) holds[a].push_back(g);
        }
        if (holds[a].empty()) fixed[a] = compile_argument(ws.frame, ws.arguments[a]);
    }
    std::optional<MassFunction> ledger_mass;
    if (ws.ledger) ledger_mass = effective_mass(*ws.ledger);

    MassFunction::FocalMap acc;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << shared.size()); ++mask) {
        double weight = 1.0;
        for (std::size_t g = 0; g < shared.size(); ++g) {
            weight *= ((mask >> g) & 1u) ? shared_p[g] : 1.0 - shared_p[g];
        }
        std::optional<MassFunction> joint;
        for (std::size_t a = 0; a < ws.arguments.size(); ++a) {
            MassFunction m = [&] {
                if (fixed[a]) return *fixed[a];
                PinnedAssignment pinned;
                for (auto g : holds[a]) pinned.emplace(shared[g], ((mask >> g) & 1u) != 0);
                return compile_argument(ws.frame, ws.arguments[a], pinned);
            }();
            joint = joint ? combine_conjunctive(*joint, m) : std::move(m);
        }
        if (ledger_mass) joint = joint ? combine_conjunctive(*joint, *ledger_mass) : *ledger_mass;
        if (!joint) joint = MassFunction::vacuous(ws.frame);
        for (const auto& [subset, value] : joint->focal()) acc[subset] += weight * value;
    }
    return MassFunction(ws.frame, std::move(acc), false);
}

FusionResult evaluate(const Workspace& ws, bool with_pairwise) {
    FusionResult result;
    auto joint = fuse_unnormalized(ws);
    result.conflict = std::clamp(joint.conflict_mass(), 0.0, 1.0);
    double surviving = 0.0;
    for (const auto& [subset, value] : joint.focal()) {
        if (!subset.empty()) surviving += value;
    }
    if (surviving > kIdentityTolerance) result.fused = normalize(joint);

    for (const auto& arg : ws.arguments) result.contributing_arguments.push_back(arg.id);
    std::sort(result.contributing_arguments.begin(), result.contributing_arguments.end());

    if (with_pairwise) {
        for (std::size_t i = 0; i < ws.arguments.size(); ++i) {
            for (std::size_t j = i + 1; j < ws.arguments.size(); ++j) {
                Workspace pair{ws.frame, {ws.arguments[i], ws.arguments[j]}, std::nullopt};
                double k = std::clamp(fuse_unnormalized(pair).conflict_mass(), 0.0, 1.0);
                auto key = std::minmax(ws.arguments[i].id, ws.arguments[j].id);
                result.pairwise_conflict[{key.first, key.second}] = k;
            }
        }
    }
    return result;
}

FusionResult fuse(const Workspace& ws) {
    auto result = evaluate(ws, true);
    if (result.total_conflict()) {
        throw Error(ErrorCode::TotalConflict, "the arguments are in total conflict (K = " + std::to_string(result.conflict) + ")");
    }
    return result;
}

std::vector<std::string> retractable_items(const Workspace& ws) {
    std::set<std::string> items;
    for (const auto& arg : ws.arguments) {
        for (const auto& e : arg.exceptions) {
            if (e.retractable()) items.insert(e.id);
        }
    }
    if (ws.ledger) {
        for (auto& id : ws.ledger->retractable_records()) items.insert(std::move(id));
    }
    return {items.begin(), items.end()};
}

Workspace with_retracted(const Workspace& ws, const std::string& item) {
    Workspace out = ws;
    bool is_exception = std::any_of(ws.arguments.begin(), ws.arguments.end(),
                                    [&](const Argument& a) { return a.find_exception(item) != nullptr; });
    if (is_exception) {
        for (const auto& arg : ws.arguments) {
            const auto* e = arg.find_exception(item);
            if (e && !e->retractable()) {
                throw Error(ErrorCode::NotRetractable, "exception '" + item + "' is " + std::string(to_string(e->status)));
            }
        }
        propagate_exception_status(out.arguments, item, ExceptionStatus::Active);
        return out;
    }
    if (ws.ledger) {
        if (const auto* r = ws.ledger->find(item)) {
            if (r->state != AssumptionState::InForce) {
                throw Error(ErrorCode::NotRetractable, "ledger record '" + item + "' is already retracted");
            }
            out.ledger = retract(*ws.ledger, item);
            return out;
        }
    }
    throw Error(ErrorCode::NotRetractable, "'" + item + "' is neither an exception nor a ledger record");
}

CulpabilityReport culpability(const Workspace& ws, const std::optional<std::vector<std::string>>& items) {
    CulpabilityReport report;
    report.conflict = std::clamp(fuse_unnormalized(ws).conflict_mass(), 0.0, 1.0);
    if (!(report.conflict > 0.0)) throw Error(ErrorCode::NoConflict, "the arguments do not conflict");

    const auto retractable = retractable_items(ws);
    const auto& chosen = items ? *items : retractable;
    for (const auto& item : chosen) {
        if (!std::binary_search(retractable.begin(), retractable.end(), item)) {
            throw Error(ErrorCode::NotRetractable, "'" + item + "' is not a retractable assumption");
        }
        double k = std::clamp(fuse_unnormalized(with_retracted(ws, item)).conflict_mass(), 0.0, 1.0);
        report.entries.push_back({item, (report.conflict - k) / report.conflict, k});
    }
    std::sort(report.entries.begin(), report.entries.end(), [](const auto& a, const auto& b) {
        if (a.culpability != b.culpability) return a.culpability > b.culpability;
        return a.item < b.item;
    });
    return report;
}

std::string favored_hypothesis(const MassFunction& fused) {
    const auto& frame = fused.frame();
    std::size_t best = 0;
    double best_bel = -1.0;
    for (std::size_t i = 0; i < frame.size(); ++i) {
        double bel = belief(fused, Subset::singleton(i));
        if (bel > best_bel || (bel == best_bel && frame.label(i) < frame.label(best))) {
            best = i;
            best_bel = bel;
        }
    }
    return frame.label(best);
}

QuestionValue value_of_question(const Workspace& ws, std::span<const Answer> answers) {
    if (answers.empty()) throw Error(ErrorCode::BadAnswerDistribution, "a question needs at least one answer");
    double total = 0.0;
    for (const auto& a : answers) {
        if (!(a.probability >= 0.0 && a.probability <= 1.0)) {
            throw Error(ErrorCode::BadAnswerDistribution, "answer probability outside [0,1]");
        }
        total += a.probability;
        validate_argument(*ws.frame, a.argument);
    }
    if (std::abs(total - 1.0) > kMassTolerance) {
        throw Error(ErrorCode::BadAnswerDistribution, "answer probabilities sum to " + std::to_string(total));
    }

    auto current = evaluate(ws, false);
    if (current.total_conflict()) throw Error(ErrorCode::TotalConflict, "current evidence is in total conflict");

    QuestionValue value;
    value.favored = favored_hypothesis(*current.fused);
    value.congruence = answers.front().probability;
    for (const auto& a : answers) {
        if (a.probability == 0.0) continue;
        Workspace extended = ws;
        extended.arguments.push_back(a.argument);
        auto after = evaluate(extended, false);
        if (after.total_conflict() || favored_hypothesis(*after.fused) != value.favored) {
            value.flip_probability += a.probability;
        }
    }
    return value;
}

}  // namespace sed

#include "sed/ledger.hpp"

#include <cmath>

#include "sed/errors.hpp"

namespace sed {

namespace {

constexpr double kNegativeSlack = 1e-12;
constexpr double kDust = 1e-14;

// Applies the records in order. Returns false if any intermediate mass goes negative.
bool apply_records(const MassFunction& base, const std::vector<AssumptionRecord>& records,
                   MassFunction::FocalMap& out) {
    out = base.focal();
    auto transfer = [&out](Subset from, Subset to, double amount) {
        double& source = out[from];
        source -= amount;
        if (source < -kNegativeSlack) return false;
        if (std::abs(source) <= kDust) out.erase(from);
        out[to] += amount;
        return true;
    };
    for (const auto& r : records) {
        bool ok = true;
        if (r.kind == AssumptionKind::BottomUp && r.state == AssumptionState::InForce) {
            ok = transfer(r.source_set, r.committed_set, r.amount);
        } else if (r.kind == AssumptionKind::TopDown && r.state == AssumptionState::Retracted) {
            ok = transfer(r.committed_set, r.source_set, r.amount);
        }
        if (!ok) return false;
    }
    for (auto it = out.begin(); it != out.end();) {
        it = it->second <= kDust ? out.erase(it) : std::next(it);
    }
    return true;
}

void require_in_frame(const Frame& frame, Subset s) {
    if (s.empty()) throw Error(ErrorCode::EmptySubsetAssignment, "ledger sets must be nonempty");
    if (!frame.contains(s)) throw Error(ErrorCode::ForeignSubset, "ledger set lies outside frame '" + frame.id() + "'");
}

}  // namespace

std::string_view to_string(AssumptionKind kind) noexcept { return kind == AssumptionKind::BottomUp ? "BOTTOM_UP" : "TOP_DOWN"; }

std::string_view to_string(AssumptionState state) noexcept { return state == AssumptionState::InForce ? "IN_FORCE" : "RETRACTED"; }

Ledger::Ledger(MassFunction base) : base_(std::move(base)) {
    if (!base_.normalized()) throw Error(ErrorCode::InvalidArgument, "ledger base must be a normalized mass function");
}

const AssumptionRecord* Ledger::find(std::string_view id) const {
    for (const auto& r : records_) {
        if (r.id == id) return &r;
    }
    return nullptr;
}

std::string Ledger::next_id() const {
    std::size_t n = records_.size() + 1;
    while (find("L" + std::to_string(n))) ++n;
    return "L" + std::to_string(n);
}

std::vector<std::string> Ledger::retractable_records() const {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < records_.size(); ++i) {
        if (records_[i].state != AssumptionState::InForce) continue;
        auto trial = records_;
        trial[i].state = AssumptionState::Retracted;
        MassFunction::FocalMap scratch;
        if (apply_records(base_, trial, scratch)) out.push_back(records_[i].id);
    }
    return out;
}

std::pair<Ledger, std::string> commit_bottom_up(const Ledger& ledger, Subset from, Subset to, double amount,
                                                std::string id) {
    require_in_frame(ledger.frame(), from);
    require_in_frame(ledger.frame(), to);
    if (!to.is_proper_subset_of(from)) {
        throw Error(ErrorCode::NotProperSubset, ledger.frame().describe(to) + " is not a proper subset of " +
                                                    ledger.frame().describe(from));
    }
    if (!(amount > 0.0)) throw Error(ErrorCode::NonPositiveAmount, "commitment amount must be positive");
    double available = effective_mass(ledger).mass(from);
    if (amount > available + kNegativeSlack) {
        throw Error(ErrorCode::InsufficientMass, "only " + std::to_string(available) + " is committed to " +
                                                     ledger.frame().describe(from));
    }
    if (!id.empty() && ledger.find(id)) throw Error(ErrorCode::InvalidArgument, "ledger record '" + id + "' already exists");
    Ledger out = ledger;
    if (id.empty()) id = ledger.next_id();
    out.records_.push_back({id, AssumptionKind::BottomUp, from, to, amount, 1.0, AssumptionState::InForce});
    return {std::move(out), id};
}

std::pair<Ledger, std::string> declare_fallback(const Ledger& ledger, Subset precise, Subset fallback, double fraction,
                                                std::string id) {
    require_in_frame(ledger.frame(), precise);
    require_in_frame(ledger.frame(), fallback);
    if (!precise.is_proper_subset_of(fallback)) {
        throw Error(ErrorCode::NotProperSuperset, ledger.frame().describe(fallback) + " is not a proper superset of " +
                                                      ledger.frame().describe(precise));
    }
    if (!(fraction > 0.0 && fraction <= 1.0)) throw Error(ErrorCode::BadProbability, "fallback fraction must lie in (0,1]");
    double current = effective_mass(ledger).mass(precise);
    if (!(current > 0.0)) {
        throw Error(ErrorCode::NoMassToMark, "no mass is committed to " + ledger.frame().describe(precise));
    }
    if (!id.empty() && ledger.find(id)) throw Error(ErrorCode::InvalidArgument, "ledger record '" + id + "' already exists");
    Ledger out = ledger;
    if (id.empty()) id = ledger.next_id();
    out.records_.push_back(
        {id, AssumptionKind::TopDown, fallback, precise, fraction * current, fraction, AssumptionState::InForce});
    return {std::move(out), id};
}

Ledger retract(const Ledger& ledger, std::string_view id) {
    Ledger out = ledger;
    AssumptionRecord* record = nullptr;
    for (auto& r : out.records_) {
        if (r.id == id) record = &r;
    }
    if (!record) throw Error(ErrorCode::UnknownRecord, "no ledger record '" + std::string(id) + "'");
    if (record->state == AssumptionState::Retracted) {
        throw Error(ErrorCode::AlreadyRetracted, "ledger record '" + std::string(id) + "' is already retracted");
    }
    record->state = AssumptionState::Retracted;
    MassFunction::FocalMap scratch;
    if (!apply_records(out.base_, out.records_, scratch)) {
        throw Error(ErrorCode::RetractionBlocked, "a later in-force record draws on the mass of '" + std::string(id) +
                                                      "'; retract it first");
    }
    return out;
}

MassFunction effective_mass(const Ledger& ledger) {
    MassFunction::FocalMap focal;
    if (!apply_records(ledger.base(), ledger.records(), focal)) {
        throw Error(ErrorCode::NegativeMass, "ledger records drive a mass negative");
    }
    return MassFunction(ledger.base().frame_ptr(), std::move(focal), true);
}

}  // namespace sed

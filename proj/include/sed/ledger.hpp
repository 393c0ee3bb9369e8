#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sed/belief.hpp"

namespace sed {

enum class AssumptionKind { BottomUp, TopDown };
enum class AssumptionState { InForce, Retracted };

std::string_view to_string(AssumptionKind kind) noexcept;
std::string_view to_string(AssumptionState state) noexcept;

/// A retractable transfer of belief between two nested sets.
///
/// Bottom-up records move `amount` from `source_set` down to the more precise
/// `committed_set` while in force. Top-down records mark `amount` (a `fraction`
/// of the mass on `committed_set` at declaration time) as retractable toward
/// the less precise `source_set`; the mass only moves once the record is retracted.
struct AssumptionRecord {
    std::string id;
    AssumptionKind kind = AssumptionKind::BottomUp;
    Subset source_set;
    Subset committed_set;
    double amount = 0.0;
    double fraction = 1.0;
    AssumptionState state = AssumptionState::InForce;
};

/// Firm belief plus the ordered list of assumptions layered on top of it.
class Ledger {
public:
    explicit Ledger(MassFunction base);

    const MassFunction& base() const noexcept { return base_; }
    const std::vector<AssumptionRecord>& records() const noexcept { return records_; }
    const AssumptionRecord* find(std::string_view id) const;
    const Frame& frame() const noexcept { return base_.frame(); }

    /// In-force records whose retraction would not drive any mass negative.
    std::vector<std::string> retractable_records() const;

    friend std::pair<Ledger, std::string> commit_bottom_up(const Ledger&, Subset, Subset, double, std::string);
    friend std::pair<Ledger, std::string> declare_fallback(const Ledger&, Subset, Subset, double, std::string);
    friend Ledger retract(const Ledger&, std::string_view);

private:
    std::string next_id() const;

    MassFunction base_;
    std::vector<AssumptionRecord> records_;
};

/// Moves `amount` of the effective mass on `from` to the proper subset `to`.
/// An empty `id` requests an automatically numbered record ("L1", "L2", ...).
std::pair<Ledger, std::string> commit_bottom_up(const Ledger& ledger, Subset from, Subset to, double amount,
                                                std::string id = {});

/// Marks `fraction` of the current mass on `precise` as retractable toward `fallback`.
std::pair<Ledger, std::string> declare_fallback(const Ledger& ledger, Subset precise, Subset fallback, double fraction,
                                                std::string id = {});

Ledger retract(const Ledger& ledger, std::string_view id);

/// Firm belief with every in-force commitment and every retracted fallback applied in declaration order.
MassFunction effective_mass(const Ledger& ledger);

}  // namespace sed

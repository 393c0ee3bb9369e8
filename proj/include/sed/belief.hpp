#pragma once

#include <bit>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace sed {

/// Tolerance for sum/positivity invariants of mass functions.
inline constexpr double kMassTolerance = 1e-9;
/// Tolerance for arithmetic identities (duality, exact round trips).
inline constexpr double kIdentityTolerance = 1e-12;
inline constexpr std::size_t kMaxHypotheses = 24;

/// A set of hypotheses, encoded as a bit mask over the frame's label order.
class Subset {
public:
    constexpr Subset() noexcept = default;
    constexpr explicit Subset(std::uint32_t bits) noexcept : bits_(bits) {}

    static constexpr Subset singleton(std::size_t index) noexcept { return Subset(std::uint32_t{1} << index); }

    constexpr std::uint32_t bits() const noexcept { return bits_; }
    constexpr bool empty() const noexcept { return bits_ == 0; }
    constexpr int size() const noexcept { return std::popcount(bits_); }
    constexpr bool contains(std::size_t index) const noexcept { return (bits_ >> index) & 1u; }
    constexpr bool is_subset_of(Subset other) const noexcept { return (bits_ & ~other.bits_) == 0; }
    constexpr bool is_proper_subset_of(Subset other) const noexcept { return is_subset_of(other) && bits_ != other.bits_; }
    constexpr bool intersects(Subset other) const noexcept { return (bits_ & other.bits_) != 0; }

    friend constexpr Subset operator&(Subset a, Subset b) noexcept { return Subset(a.bits_ & b.bits_); }
    friend constexpr Subset operator|(Subset a, Subset b) noexcept { return Subset(a.bits_ | b.bits_); }
    friend constexpr bool operator==(Subset a, Subset b) noexcept = default;
    friend constexpr auto operator<=>(Subset a, Subset b) noexcept = default;

private:
    std::uint32_t bits_ = 0;
};

/// Frame of discernment: a fixed, ordered list of mutually exclusive hypotheses.
class Frame {
public:
    Frame(std::string id, std::vector<std::string> labels);

    const std::string& id() const noexcept { return id_; }
    const std::vector<std::string>& labels() const noexcept { return labels_; }
    std::size_t size() const noexcept { return labels_.size(); }
    const std::string& label(std::size_t index) const { return labels_.at(index); }

    Subset full() const noexcept { return Subset(static_cast<std::uint32_t>((std::uint64_t{1} << labels_.size()) - 1)); }
    bool contains(Subset s) const noexcept { return s.is_subset_of(full()); }
    Subset complement(Subset s) const noexcept { return Subset(full().bits() & ~s.bits()); }

    std::optional<std::size_t> index_of(std::string_view label) const;
    /// Throws UnknownHypothesis for labels outside the frame.
    Subset subset(std::span<const std::string> labels) const;
    Subset subset(std::initializer_list<std::string_view> labels) const;
    /// Parses a comma-separated label list such as "S1,S2".
    Subset parse(std::string_view text) const;

    std::vector<std::string> labels_of(Subset s) const;
    /// "{S1, S2}" in frame order; the full frame is rendered the same way.
    std::string describe(Subset s) const;

    friend bool operator==(const Frame& a, const Frame& b) { return a.id_ == b.id_ && a.labels_ == b.labels_; }

private:
    std::string id_;
    std::vector<std::string> labels_;
};

using FramePtr = std::shared_ptr<const Frame>;

FramePtr make_frame(std::string id, std::vector<std::string> labels);
bool same_frame(const Frame& a, const Frame& b) noexcept;

/// Allocation of unit belief over subsets of a frame. Zero-mass entries are never stored.
/// Unnormalized functions may carry the conflict mass on the empty subset.
class MassFunction {
public:
    using FocalMap = std::map<Subset, double>;

    /// Validates positivity and the unit sum; entries with mass exactly 0 are dropped.
    MassFunction(FramePtr frame, FocalMap focal, bool normalized);

    static MassFunction vacuous(FramePtr frame);

    const Frame& frame() const noexcept { return *frame_; }
    const FramePtr& frame_ptr() const noexcept { return frame_; }
    const FocalMap& focal() const noexcept { return focal_; }
    bool normalized() const noexcept { return normalized_; }

    double mass(Subset s) const noexcept;
    double conflict_mass() const noexcept { return mass(Subset{}); }
    double total() const noexcept;

private:
    FramePtr frame_;
    FocalMap focal_;
    bool normalized_;
};

/// Builds a normalized mass function; the residual 1 - sum goes to the full frame.
MassFunction mass_new(FramePtr frame, std::span<const std::pair<Subset, double>> assignments);
MassFunction mass_new(FramePtr frame, std::initializer_list<std::pair<Subset, double>> assignments);

double belief(const MassFunction& m, Subset a);
double plausibility(const MassFunction& m, Subset a);

struct Combination {
    MassFunction mass;
    double conflict;
};

/// Product-intersection combination. With normalize=false the conflict stays on the empty subset.
Combination combine_dempster(const MassFunction& m1, const MassFunction& m2, bool normalize = true);

/// Unnormalized conjunctive product of two mass functions (operands may themselves be unnormalized).
MassFunction combine_conjunctive(const MassFunction& m1, const MassFunction& m2);

/// Divides the nonempty masses by (1 - conflict). Throws TotalConflict when nothing survives.
MassFunction normalize(const MassFunction& m);

double bayes_posterior(double prior, double like_given_h, double like_given_not_h);

}  // namespace sed

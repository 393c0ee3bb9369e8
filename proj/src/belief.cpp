#include "sed/belief.hpp"

#include <cmath>
#include <set>

#include "sed/errors.hpp"

namespace sed {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

void require_same_frame(const MassFunction& a, const MassFunction& b) {
    if (!same_frame(a.frame(), b.frame())) {
        throw Error(ErrorCode::FrameMismatch, "mass functions are defined on frames '" + a.frame().id() + "' and '" +
                                                  b.frame().id() + "'");
    }
}

}  // namespace

Frame::Frame(std::string id, std::vector<std::string> labels) : id_(std::move(id)), labels_(std::move(labels)) {
    if (labels_.empty() || labels_.size() > kMaxHypotheses) {
        throw Error(ErrorCode::InvalidFrame, "a frame needs between 1 and 24 hypotheses, got " +
                                                 std::to_string(labels_.size()));
    }
    std::set<std::string_view> seen;
    for (const auto& label : labels_) {
        if (label.empty()) throw Error(ErrorCode::InvalidFrame, "hypothesis labels must be nonempty");
        if (label.find(',') != std::string::npos) {
            throw Error(ErrorCode::InvalidFrame, "hypothesis label '" + label + "' contains a comma");
        }
        if (!seen.insert(label).second) throw Error(ErrorCode::InvalidFrame, "duplicate hypothesis label '" + label + "'");
    }
}

std::optional<std::size_t> Frame::index_of(std::string_view label) const {
    for (std::size_t i = 0; i < labels_.size(); ++i) {
        if (labels_[i] == label) return i;
    }
    return std::nullopt;
}

Subset Frame::subset(std::span<const std::string> labels) const {
    Subset s;
    for (const auto& label : labels) {
        auto idx = index_of(label);
        if (!idx) throw Error(ErrorCode::UnknownHypothesis, "'" + label + "' is not in frame '" + id_ + "'");
        s = s | Subset::singleton(*idx);
    }
    return s;
}

Subset Frame::subset(std::initializer_list<std::string_view> labels) const {
    std::vector<std::string> copy(labels.begin(), labels.end());
    return subset(copy);
}

Subset Frame::parse(std::string_view text) const {
    std::vector<std::string> parts;
    while (true) {
        auto comma = text.find(',');
        auto part = trim(text.substr(0, comma));
        if (!part.empty()) parts.emplace_back(part);
        if (comma == std::string_view::npos) break;
        text.remove_prefix(comma + 1);
    }
    return subset(parts);
}

std::vector<std::string> Frame::labels_of(Subset s) const {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < labels_.size(); ++i) {
        if (s.contains(i)) out.push_back(labels_[i]);
    }
    return out;
}

std::string Frame::describe(Subset s) const {
    std::string out = "{";
    bool first = true;
    for (const auto& label : labels_of(s)) {
        if (!first) out += ", ";
        out += label;
        first = false;
    }
    return out + "}";
}

FramePtr make_frame(std::string id, std::vector<std::string> labels) {
    return std::make_shared<const Frame>(std::move(id), std::move(labels));
}

bool same_frame(const Frame& a, const Frame& b) noexcept { return &a == &b || a == b; }

MassFunction::MassFunction(FramePtr frame, FocalMap focal, bool normalized)
    : frame_(std::move(frame)), normalized_(normalized) {
    if (!frame_) throw Error(ErrorCode::InvalidFrame, "mass function without a frame");
    double sum = 0.0;
    for (const auto& [subset, value] : focal) {
        if (!frame_->contains(subset)) {
            throw Error(ErrorCode::ForeignSubset, "focal element outside frame '" + frame_->id() + "'");
        }
        if (!(value >= 0.0)) throw Error(ErrorCode::NegativeMass, "negative mass " + std::to_string(value));
        if (value == 0.0) continue;
        if (normalized_ && subset.empty()) {
            throw Error(ErrorCode::EmptySubsetAssignment, "normalized mass function with mass on the empty set");
        }
        focal_.emplace(subset, value);
        sum += value;
    }
    if (std::abs(sum - 1.0) > kMassTolerance) {
        throw Error(sum > 1.0 ? ErrorCode::MassExceedsOne : ErrorCode::InvalidArgument,
                    "masses sum to " + std::to_string(sum) + ", expected 1");
    }
}

MassFunction MassFunction::vacuous(FramePtr frame) {
    auto full = frame->full();
    return MassFunction(std::move(frame), FocalMap{{full, 1.0}}, true);
}

double MassFunction::mass(Subset s) const noexcept {
    auto it = focal_.find(s);
    return it == focal_.end() ? 0.0 : it->second;
}

double MassFunction::total() const noexcept {
    double sum = 0.0;
    for (const auto& [_, value] : focal_) sum += value;
    return sum;
}

MassFunction mass_new(FramePtr frame, std::span<const std::pair<Subset, double>> assignments) {
    MassFunction::FocalMap focal;
    double sum = 0.0;
    for (const auto& [subset, value] : assignments) {
        if (subset.empty()) throw Error(ErrorCode::EmptySubsetAssignment, "mass assigned to the empty subset");
        if (!frame->contains(subset)) {
            throw Error(ErrorCode::ForeignSubset, "subset is not part of frame '" + frame->id() + "'");
        }
        if (!(value >= 0.0)) throw Error(ErrorCode::NegativeMass, "negative mass " + std::to_string(value));
        if (value > 1.0) throw Error(ErrorCode::MassExceedsOne, "mass " + std::to_string(value) + " exceeds 1");
        focal[subset] += value;
        sum += value;
    }
    if (sum > 1.0 + kMassTolerance) {
        throw Error(ErrorCode::MassExceedsOne, "assigned masses sum to " + std::to_string(sum));
    }
    double residual = 1.0 - sum;
    if (residual > 0.0) focal[frame->full()] += residual;
    return MassFunction(std::move(frame), std::move(focal), true);
}

MassFunction mass_new(FramePtr frame, std::initializer_list<std::pair<Subset, double>> assignments) {
    return mass_new(std::move(frame), std::span<const std::pair<Subset, double>>(assignments.begin(), assignments.size()));
}

double belief(const MassFunction& m, Subset a) {
    if (!m.frame().contains(a)) throw Error(ErrorCode::FrameMismatch, "query subset outside the mass function's frame");
    double sum = 0.0;
    for (const auto& [subset, value] : m.focal()) {
        if (!subset.empty() && subset.is_subset_of(a)) sum += value;
    }
    return sum;
}

double plausibility(const MassFunction& m, Subset a) {
    if (!m.frame().contains(a)) throw Error(ErrorCode::FrameMismatch, "query subset outside the mass function's frame");
    double sum = 0.0;
    for (const auto& [subset, value] : m.focal()) {
        if (subset.intersects(a)) sum += value;
    }
    return sum;
}

MassFunction combine_conjunctive(const MassFunction& m1, const MassFunction& m2) {
    require_same_frame(m1, m2);
    MassFunction::FocalMap out;
    for (const auto& [a, ma] : m1.focal()) {
        for (const auto& [b, mb] : m2.focal()) out[a & b] += ma * mb;
    }
    return MassFunction(m1.frame_ptr(), std::move(out), false);
}

MassFunction normalize(const MassFunction& m) {
    // Dividing by the surviving mass instead of 1 - K avoids cancellation when K is close to 1.
    double surviving = 0.0;
    for (const auto& [subset, value] : m.focal()) {
        if (!subset.empty()) surviving += value;
    }
    if (surviving <= kIdentityTolerance) {
        throw Error(ErrorCode::TotalConflict, "conflict mass " + std::to_string(m.conflict_mass()) +
                                                  " leaves nothing to normalize");
    }
    MassFunction::FocalMap out;
    for (const auto& [subset, value] : m.focal()) {
        if (!subset.empty()) out.emplace(subset, value / surviving);
    }
    return MassFunction(m.frame_ptr(), std::move(out), true);
}

Combination combine_dempster(const MassFunction& m1, const MassFunction& m2, bool normalize_result) {
    auto product = combine_conjunctive(m1, m2);
    double conflict = product.conflict_mass();
    if (!normalize_result) return {std::move(product), conflict};
    return {normalize(product), conflict};
}

double bayes_posterior(double prior, double like_given_h, double like_given_not_h) {
    for (double p : {prior, like_given_h, like_given_not_h}) {
        if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorCode::BadProbability, "probability " + std::to_string(p) + " outside [0,1]");
    }
    double numerator = prior * like_given_h;
    double denominator = numerator + (1.0 - prior) * like_given_not_h;
    if (!(denominator > 0.0)) throw Error(ErrorCode::ZeroDenominator, "evidence has zero probability under both hypotheses");
    return numerator / denominator;
}

}  // namespace sed

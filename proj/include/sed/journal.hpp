#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

#include "sed/elicitation.hpp"
#include "sed/fusion.hpp"

namespace sed {

inline constexpr int kJournalFormatVersion = 1;

enum class RecordKind {
    SessionCreated,
    EvidenceAdded,
    ArgumentAdded,
    ExceptionAdded,
    StatusChanged,
    LedgerCommitted,
    LedgerRetracted,
    FusionSnapshot,
    ResolutionStep,
    ElicitationPrompt,
    ElicitationResponse,
};

std::string_view to_string(RecordKind kind) noexcept;
std::optional<RecordKind> parse_record_kind(std::string_view text) noexcept;

/// Live state reconstructed by folding journal records in order.
struct SessionState {
    std::string session_id;
    FramePtr frame;
    std::vector<EvidenceItem> evidence;
    Workspace workspace;
    /// Most recent elicitation per argument id.
    std::map<std::string, ElicitationSession> elicitations;
    std::uint64_t version = 0;

    const EvidenceItem* find_evidence(std::string_view id) const;
    const Argument* find_argument(std::string_view id) const;
    const Ledger& ledger() const { return *workspace.ledger; }
};

struct JournalRecord {
    std::uint64_t seq = 0;
    RecordKind kind = RecordKind::SessionCreated;
    std::string at;
    nlohmann::json payload;
    /// Top-level fields this version does not know about; written back unchanged.
    nlohmann::json extra = nlohmann::json::object();
};

/// Applies one record to `state`, validating it first. Throws on invalid records without
/// modifying `state`.
void apply_record(SessionState& state, RecordKind kind, const nlohmann::json& payload, std::uint64_t seq);

/// Append-only evidential journal. Each record is one JSON line; replaying the lines in order
/// reconstructs the session. A journal with an empty path lives in memory only.
class Journal {
public:
    static Journal create(const std::filesystem::path& path, const std::string& session_id,
                          const std::vector<std::string>& frame_labels, const nlohmann::json& base = nullptr,
                          const nlohmann::json& extra_payload = nlohmann::json::object());
    static Journal load(const std::filesystem::path& path);
    /// Parses journal text; `origin` names the source in error messages.
    static Journal parse(std::istream& in, const std::filesystem::path& origin = {});

    /// Validates against the replayed state, assigns the next seq and persists the line.
    /// Domain failures surface as ValidationFailed with the underlying code in the detail.
    const JournalRecord& append(RecordKind kind, nlohmann::json payload);

    const SessionState& state() const noexcept { return state_; }
    std::uint64_t version() const noexcept { return records_.empty() ? 0 : records_.back().seq; }
    const std::vector<JournalRecord>& records() const noexcept { return records_; }
    const std::filesystem::path& path() const noexcept { return path_; }

    /// Writes every record, preserving unknown fields.
    void write(std::ostream& out) const;
    void save_as(const std::filesystem::path& path) const;

    static std::string serialize(const JournalRecord& record);

private:
    Journal() = default;

    std::filesystem::path path_;
    std::vector<JournalRecord> records_;
    SessionState state_;
};

/// Journal record for retracting `item` outside the resolver: STATUS_CHANGED for an
/// exception, LEDGER_RETRACTED for a ledger record.
std::pair<RecordKind, nlohmann::json> retraction_record(const SessionState& state, const std::string& item);

/// Snapshot used by `status` and the service's session view: frame, evidence, arguments,
/// ledger, elicitations and the current fusion.
nlohmann::json state_to_json(const SessionState& state);

/// Names accepted by `load_scenario`.
const std::vector<std::string>& scenario_names();

/// Journals one of the shipped scenarios into `path` (empty path: in memory).
Journal create_scenario(const std::string& name, const std::filesystem::path& path = {});
SessionState load_scenario(const std::string& name);

std::string iso8601_now();

}  // namespace sed

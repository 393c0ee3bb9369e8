#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "json.hpp"

#include "sed/journal.hpp"

namespace sed {

struct ServiceResponse {
    int status = 200;
    nlohmann::json body;
};

/// HTTP-facing session server. Each session is a journal file `<dir>/<id>.sedj`.
///
/// Mutations on one session are serialized and must carry the caller's `expected_version`;
/// a stale version is answered with 409 and nothing is written. Reads work on an immutable
/// snapshot of the journal and never wait for a writer.
class WorkbenchService {
public:
    explicit WorkbenchService(std::filesystem::path directory);

    /// Routes one request. Exposed separately from `serve` so it can be driven without sockets.
    ServiceResponse handle(const std::string& method, const std::string& path, const std::string& body);

    /// Blocks serving HTTP until `stop` is called. Throws StorageError if the bind fails.
    void serve(const std::string& host, int port);
    /// Binds to an ephemeral port and returns it; `serve_bound` then runs the loop.
    int bind_any(const std::string& host);
    void serve_bound();
    void stop();

private:
    struct Session {
        std::mutex writer;
        mutable std::mutex snapshot_guard;
        std::shared_ptr<const Journal> snapshot;

        std::shared_ptr<const Journal> current() const {
            std::lock_guard lock(snapshot_guard);
            return snapshot;
        }
        void publish(std::shared_ptr<const Journal> next) {
            std::lock_guard lock(snapshot_guard);
            snapshot = std::move(next);
        }
    };

    std::shared_ptr<Session> open(const std::string& id);
    std::shared_ptr<Session> create(const nlohmann::json& body);

    std::filesystem::path directory_;
    std::mutex registry_guard_;
    std::map<std::string, std::shared_ptr<Session>> sessions_;

    struct Server;
    std::shared_ptr<Server> server_;
};

}  // namespace sed

#include <unistd.h>

#include <atomic>
#include <thread>

#include "doctest.h"
#include "httplib.h"
#include "sed/service.hpp"

using nlohmann::json;
using sed::WorkbenchService;

namespace {

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        static int counter = 0;
        path = std::filesystem::temp_directory_path() / ("sed-svc-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
        std::filesystem::remove_all(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
};

sed::ServiceResponse post(WorkbenchService& s, const std::string& path, const json& body) {
    return s.handle("POST", path, body.dump());
}

std::uint64_t version_of(WorkbenchService& s, const std::string& id) {
    return s.handle("GET", "/sessions/" + id, "").body["version"].get<std::uint64_t>();
}

}  // namespace

TEST_SUITE("service") {

TEST_CASE("fresh session is vacuous at version 1") {
    TempDir dir;
    WorkbenchService s(dir.path);
    auto created = post(s, "/sessions", {{"session_id", "fresh"}, {"frame", {"S1", "S2"}}});
    CHECK(created.status == 201);
    auto got = s.handle("GET", "/sessions/fresh", "");
    CHECK(got.status == 200);
    CHECK(got.body["version"] == 1);
    for (const auto& row : got.body["fusion"]["beliefs"]) CHECK(row["belief"] == 0.0);
    CHECK(std::filesystem::exists(dir.path / "fresh.sedj"));
}

TEST_CASE("full endpoint walk") {
    TempDir dir;
    WorkbenchService s(dir.path);
    REQUIRE(post(s, "/sessions", {{"session_id", "w"}, {"frame", "S,not-S"}}).status == 201);
    auto v = [&] { return version_of(s, "w"); };

    CHECK(post(s, "/sessions/w/evidence", {{"expected_version", v()}, {"id", "E1"}, {"description", "logistics"}}).status == 200);
    CHECK(post(s, "/sessions/w/evidence", {{"expected_version", v()}, {"id", "E2"}, {"description", "no artillery"}}).status == 200);
    json a1 = {{"id", "A1"}, {"evidence", "E1"}, {"core", {"S"}}, {"base_support", 0.5}, {"exceptions", json::array()}};
    json a2 = {{"id", "A2"}, {"evidence", "E2"}, {"core", {"not-S"}}, {"base_support", 0.4}, {"exceptions", json::array()}};
    CHECK(post(s, "/sessions/w/arguments", {{"expected_version", v()}, {"argument", a1}}).status == 200);
    CHECK(post(s, "/sessions/w/arguments", {{"expected_version", v()}, {"argument", a2}}).status == 200);

    auto opened = post(s, "/sessions/w/arguments/A2/elicitation", {{"expected_version", v()}});
    REQUIRE(opened.status == 200);
    CHECK(opened.body["elicitations"][0]["prompt"].get<std::string>().rfind("CRYSTAL BALL [argument A2, round 0]", 0) == 0);
    auto answered = post(s, "/sessions/w/arguments/A2/elicitation/response",
                         {{"expected_version", v()}, {"description", "masked artillery"}, {"probability", 0.8},
                          {"impact", {{"kind", "UNDERCUT"}}}, {"exception_id", "masked"}});
    REQUIRE(answered.status == 200);
    CHECK(post(s, "/sessions/w/arguments/A2/elicitation/pass", {{"expected_version", v()}}).status == 200);
    CHECK(post(s, "/sessions/w/arguments/A2/elicitation/pass", {{"expected_version", v()}}).status == 422);

    auto fusion = s.handle("GET", "/sessions/w/fusion", "");
    REQUIRE(fusion.status == 200);
    CHECK(std::abs(fusion.body["conflict"].get<double>() - 0.2) < 1e-12);
    auto culp = s.handle("GET", "/sessions/w/culpability", "");
    REQUIRE(culp.status == 200);
    CHECK(culp.body["entries"][0]["item"] == "masked");

    const auto before = v();
    auto whatif = post(s, "/sessions/w/whatif", {{"retract", {"masked"}}});
    CHECK(whatif.status == 200);
    CHECK(std::abs(whatif.body["conflict"].get<double>() - 0.04) < 1e-12);
    json answers = {{"answers", {{{"probability", 1.0}, {"argument", a1}}}}};
    answers["answers"][0]["argument"]["id"] = "again";
    auto voi = post(s, "/sessions/w/voi", answers);
    CHECK(voi.status == 200);
    CHECK(voi.body["flip_probability"] == 0.0);
    CHECK(v() == before);

    auto step = post(s, "/sessions/w/resolve/step", {{"expected_version", v()}});
    REQUIRE(step.status == 200);
    CHECK(step.body["step"]["retracted"] == "masked");
    auto done = post(s, "/sessions/w/resolve/step", {{"expected_version", v()}});
    CHECK(done.body["terminal"] == "RESOLVED");
    CHECK(done.body["step"].is_null());

    CHECK(post(s, "/sessions/w/ledger/commit", {{"expected_version", v()}, {"kind", "BOTTOM_UP"}, {"from", {"S", "not-S"}}, {"to", {"S"}}, {"amount", 0.1}}).status == 200);
    CHECK(post(s, "/sessions/w/ledger/L1/retract", {{"expected_version", v()}}).status == 200);
    CHECK(post(s, "/sessions/w/ledger/L1/retract", {{"expected_version", v()}}).status == 422);

    // A restarted service replays the same state from disk.
    WorkbenchService restarted(dir.path);
    CHECK(restarted.handle("GET", "/sessions/w", "").body == s.handle("GET", "/sessions/w", "").body);
}

TEST_CASE("error statuses") {
    TempDir dir;
    WorkbenchService s(dir.path);
    post(s, "/sessions", {{"session_id", "e"}, {"frame", {"S", "not-S"}}});
    CHECK(s.handle("GET", "/sessions/nope", "").status == 404);
    CHECK(s.handle("GET", "/elsewhere", "").status == 404);
    CHECK(s.handle("POST", "/sessions/e/evidence", "{bad json").status == 400);
    CHECK(post(s, "/sessions/e/evidence", {{"id", "E1"}}).status == 400);
    auto stale = post(s, "/sessions/e/evidence", {{"expected_version", 7}, {"id", "E1"}});
    CHECK(stale.status == 409);
    CHECK(stale.body["error"] == "VersionConflict");
    CHECK(version_of(s, "e") == 1);
    auto nc = s.handle("GET", "/sessions/e/culpability", "");
    CHECK(nc.status == 422);
    CHECK(nc.body["error"] == "NoConflict");
    CHECK(post(s, "/sessions/e/arguments/ghost/elicitation", {{"expected_version", 1}}).status == 404);
    CHECK(post(s, "/sessions", {{"session_id", "e"}, {"frame", {"S"}}}).status == 400);
    CHECK(post(s, "/sessions", {{"session_id", "sc"}, {"scenario", "missing"}}).status == 404);
}

TEST_CASE("concurrent resolve steps with one expected version: exactly one wins") {
    TempDir dir;
    WorkbenchService s(dir.path);
    REQUIRE(post(s, "/sessions", {{"session_id", "race"}, {"scenario", "attack-schema"}}).status == 201);
    for (int round = 0; round < 3; ++round) {
        const auto v = version_of(s, "race");
        std::atomic<int> ok{0}, conflict{0};
        std::vector<std::thread> threads;
        for (int t = 0; t < 2; ++t) {
            threads.emplace_back([&] {
                auto r = post(s, "/sessions/race/resolve/step", {{"expected_version", v}});
                if (r.status == 200) ++ok;
                if (r.status == 409) ++conflict;
            });
        }
        for (auto& t : threads) t.join();
        CHECK(ok == 1);
        CHECK(conflict == 1);
        CHECK(version_of(s, "race") == v + 1);
    }
}

TEST_CASE("HTTP round trip") {
    TempDir dir;
    WorkbenchService s(dir.path);
    int port = s.bind_any("127.0.0.1");
    REQUIRE(port > 0);
    std::thread server([&] { s.serve_bound(); });
    httplib::Client client("127.0.0.1", port);
    auto created = client.Post("/sessions", json{{"session_id", "z"}, {"scenario", "zadeh-pathology"}}.dump(), "application/json");
    REQUIRE(created);
    CHECK(created->status == 201);
    auto fusion = client.Get("/sessions/z/fusion");
    REQUIRE(fusion);
    auto body = json::parse(fusion->body);
    CHECK(std::abs(body["conflict"].get<double>() - 0.9999) < 1e-9);
    auto whatif = client.Post("/sessions/z/whatif", json{{"retract", json::array()}}.dump(), "application/json");
    REQUIRE(whatif);
    CHECK(json::parse(whatif->body)["version"] == body["version"]);
    s.stop();
    server.join();
}

}

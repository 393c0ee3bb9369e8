#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "cli_script.hpp"
#include "doctest.h"
#include "json.hpp"
#include "sed/cli.hpp"
#include "sed/journal.hpp"

using nlohmann::json;

using cliscript::read_file;
using cliscript::run;
using cliscript::scripted_transcript;
using TempDir = cliscript::TempDir;

TEST_SUITE("cli") {

TEST_CASE("golden transcripts of the shipped scenarios") {
    const std::filesystem::path golden_dir = SED_GOLDEN_DIR;
    const bool update = std::getenv("SED_UPDATE_GOLDEN") != nullptr;
    for (const auto& name : sed::scenario_names()) {
        CAPTURE(name);
        auto transcript = scripted_transcript(name);
        CHECK(transcript == scripted_transcript(name));
        auto path = golden_dir / (name + ".txt");
        if (update) {
            std::ofstream(path, std::ios::binary) << transcript;
        }
        REQUIRE(std::filesystem::exists(path));
        CHECK(transcript == read_file(path));
    }
}

TEST_CASE("init then status is an empty vacuous session") {
    TempDir dir;
    auto s = dir.file("session.sedj");
    CHECK(run({"init", "--frame", "S1,S2,S3", s}).code == 0);
    auto r = run({"status", s, "--json"});
    REQUIRE(r.code == 0);
    auto j = json::parse(r.out);
    CHECK(j["version"] == 1);
    CHECK(j["arguments"].empty());
    CHECK(j["fusion"]["conflict"] == 0.0);
    for (const auto& row : j["fusion"]["beliefs"]) {
        CHECK(row["belief"] == 0.0);
        CHECK(row["plausibility"] == 1.0);
    }
    auto human = run({"status", s});
    CHECK(human.out.find("session session (version 1)") != std::string::npos);
}

TEST_CASE("zadeh transcript through individual commands") {
    TempDir dir;
    auto s = dir.file("z.sedj");
    REQUIRE(run({"init", "--frame", "S1,S2,S3", s}).code == 0);
    REQUIRE(run({"evidence", "add", s, "--id", "E1", "--desc", "first witness"}).code == 0);
    REQUIRE(run({"evidence", "add", s, "--id", "E2", "--desc", "second witness"}).code == 0);
    REQUIRE(run({"argument", "add", s, "--id", "A1", "--evidence", "E1", "--core", "S1", "--support", "1"}).code == 0);
    REQUIRE(run({"argument", "add", s, "--id", "A2", "--evidence", "E2", "--core", "S3", "--support", "1"}).code == 0);
    REQUIRE(run({"exception", "add", s, "--argument", "A1", "--id", "x1", "--prob", "0.01", "--rebut", "S2", "--status", "active"}).code == 0);
    REQUIRE(run({"exception", "add", s, "--argument", "A2", "--id", "x2", "--prob", "0.01", "--rebut", "S2", "--status", "ACTIVE"}).code == 0);
    auto r = run({"fuse", s, "--json"});
    REQUIRE(r.code == 0);
    auto j = json::parse(r.out);
    CHECK(std::abs(j["conflict"].get<double>() - 0.9999) < 1e-12);
    for (const auto& row : j["beliefs"]) {
        if (row["hypothesis"] == "S2") CHECK(std::abs(row["belief"].get<double>() - 1.0) < 1e-9);
    }
}

TEST_CASE("resolve on the one-culprit fixture takes one step") {
    TempDir dir;
    auto s = dir.file("one.sedj");
    REQUIRE(run({"init", "--frame", "S,not-S", s}).code == 0);
    run({"evidence", "add", s, "--id", "E1"});
    run({"evidence", "add", s, "--id", "E2"});
    run({"argument", "add", s, "--id", "A1", "--evidence", "E1", "--core", "S", "--support", "0.5"});
    run({"argument", "add", s, "--id", "A2", "--evidence", "E2", "--core", "not-S", "--support", "0.4"});
    REQUIRE(run({"exception", "add", s, "--argument", "A2", "--id", "culprit", "--prob", "0.8", "--undercut"}).code == 0);

    auto preview = run({"whatif", s, "--retract", "culprit", "--json"});
    REQUIRE(preview.code == 0);
    CHECK(std::abs(json::parse(preview.out)["conflict"].get<double>() - 0.04) < 1e-12);
    CHECK(sed::Journal::load(s).version() == 6);

    auto r = run({"resolve", s, "--tau", "0.05", "--json"});
    REQUIRE(r.code == 0);
    auto t = json::parse(r.out);
    REQUIRE(t["steps"].size() == 1);
    CHECK(t["steps"][0]["retracted"] == "culprit");
    CHECK(t["terminal"] == "RESOLVED");
    CHECK(sed::Journal::load(s).records().back().kind == sed::RecordKind::ResolutionStep);
}

TEST_CASE("exit codes") {
    TempDir dir;
    auto s = dir.file("x.sedj");
    CHECK(run({}).code == 1);
    CHECK(run({"frobnicate"}).code == 1);
    CHECK(run({"init", s}).code == 1);
    CHECK(run({"status", dir.file("missing.sedj")}).code == 3);
    REQUIRE(run({"init", "--frame", "S,not-S", s}).code == 0);
    CHECK(run({"init", "--frame", "S,not-S", s}).code == 3);
    CHECK(run({"argument", "add", s, "--id", "A", "--evidence", "nope", "--core", "S"}).code == 2);
    CHECK(run({"culpability", s}).code == 2);

    run({"evidence", "add", s, "--id", "E"});
    run({"argument", "add", s, "--id", "A1", "--evidence", "E", "--core", "S"});
    run({"argument", "add", s, "--id", "A2", "--evidence", "E", "--core", "not-S"});
    CHECK(run({"fuse", s}).code == 2);
    auto firm = run({"resolve", s, "--strict"});
    CHECK(firm.code == 2);
    CHECK(firm.out.find("FIRM_CONFLICT") != std::string::npos);
    CHECK(run({"resolve", s}).code == 0);

    std::ofstream(s, std::ios::app) << "{\"seq\": 99";
    CHECK(run({"status", s}).code == 3);
}

TEST_CASE("a locked session fails fast with exit 3") {
    TempDir dir;
    auto s = dir.file("l.sedj");
    REQUIRE(run({"init", "--frame", "S,not-S", s}).code == 0);
    int fd = ::open(s.c_str(), O_RDONLY);
    REQUIRE(fd >= 0);
    REQUIRE(::flock(fd, LOCK_EX | LOCK_NB) == 0);
    auto r = run({"evidence", "add", s, "--id", "E"});
    ::close(fd);
    CHECK(r.code == 3);
    CHECK(run({"evidence", "add", s, "--id", "E"}).code == 0);
}

TEST_CASE("interactive elicitation is byte-stable") {
    const std::string input =
        "undercut 0.2 Could the radar blips represent civilian traffic?\n"
        "what?\n"
        "rebut no-attack 0.15 The build-up replenishes a defense\n"
        "undercut 1.5 impossible\n"
        "pass\n";
    auto once = [&] {
        TempDir dir;
        auto s = dir.file("e.sedj");
        run({"init", "--frame", "attack,no-attack", s});
        run({"evidence", "add", s, "--id", "E1", "--desc", "increased logistical activity"});
        run({"argument", "add", s, "--id", "A1", "--evidence", "E1", "--core", "attack"});
        auto r = run({"elicit", s, "--argument", "A1"}, input);
        auto state = json::parse(run({"status", s, "--json"}).out);
        return std::make_pair(r, state);
    };
    auto [first, state] = once();
    auto [second, state2] = once();
    CHECK(first.code == 0);
    CHECK(first.out == second.out);
    CHECK(first.out.find("Q1. Could the radar blips represent civilian traffic?") != std::string::npos);
    CHECK(first.out.find("? expected:") != std::string::npos);
    CHECK(first.out.find("elicitation closed after 2 qualification(s)") != std::string::npos);
    auto exceptions = state["arguments"][0]["exceptions"];
    REQUIRE(exceptions.size() == 2);
    CHECK(exceptions[0]["status"] == "ASSUMED_FALSE");
    CHECK(exceptions[1]["impact"]["kind"] == "REBUT");
}

TEST_CASE("ledger and export") {
    TempDir dir;
    auto s = dir.file("g.sedj");
    run({"init", "--frame", "S,not-S", s, "--base", "S=0.9"});
    REQUIRE(run({"ledger", "fallback", s, "--precise", "S", "--fallback", "S,not-S", "--fraction", "0.5"}).code == 0);
    REQUIRE(run({"ledger", "retract", s, "--id", "L1"}).code == 0);
    auto st = json::parse(run({"status", s, "--json"}).out);
    for (const auto& row : st["ledger"]["effective"]) {
        if (row["set"] == json({"S"})) CHECK(std::abs(row["mass"].get<double>() - 0.45) < 1e-12);
    }
    REQUIRE(run({"ledger", "commit", s, "--from", "S,not-S", "--to", "not-S", "--amount", "0.2", "--id", "guess"}).code == 0);
    auto exported = run({"export", s});
    CHECK(exported.out == read_file(s));
    CHECK(run({"export", s, "-o", dir.file("copy.sedj")}).code == 0);
    CHECK(read_file(dir.file("copy.sedj")) == read_file(s));
}

TEST_CASE("voi from a question file") {
    TempDir dir;
    auto s = dir.file("v.sedj");
    run({"init", "--frame", "S,not-S", s});
    run({"evidence", "add", s, "--id", "E"});
    run({"argument", "add", s, "--id", "A1", "--evidence", "E", "--core", "S", "--support", "0.6"});
    json q = {{"answers",
               {{{"probability", 0.9}, {"argument", {{"id", "yes"}, {"evidence", "Q"}, {"core", {"S"}}, {"base_support", 0.5}, {"exceptions", json::array()}}}},
                {{"probability", 0.1}, {"argument", {{"id", "no"}, {"evidence", "Q"}, {"core", {"not-S"}}, {"base_support", 0.1}, {"exceptions", json::array()}}}}}}};
    std::ofstream(dir.file("q.json")) << q.dump();
    auto before = read_file(s);
    auto r = run({"voi", s, "--question", dir.file("q.json"), "--json"});
    REQUIRE(r.code == 0);
    auto v = json::parse(r.out);
    CHECK(v["flip_probability"] == 0.0);
    CHECK(v["congruence"] == 0.9);
    CHECK(read_file(s) == before);
}

TEST_CASE("json numbers round-trip exactly") {
    TempDir dir;
    auto s = dir.file("n.sedj");
    run({"scenario", "load", "attack-schema", s});
    auto r = sed::evaluate(sed::Journal::load(s).state().workspace);
    auto j = json::parse(run({"fuse", s, "--json"}).out);
    CHECK(std::abs(j["conflict"].get<double>() - r.conflict) <= 1e-12);
    for (const auto& row : j["fused"]) {
        auto set = r.fused->frame().subset(row["set"].get<std::vector<std::string>>());
        CHECK(std::abs(row["mass"].get<double>() - r.fused->mass(set)) <= 1e-12);
    }
}

}

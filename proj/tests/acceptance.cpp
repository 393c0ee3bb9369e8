// Acceptance suite: one PASS/FAIL line per primary criterion.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

#include "cli_script.hpp"
#include "oracles.hpp"
#include "sed/errors.hpp"
#include "sed/journal.hpp"
#include "sed/json_io.hpp"
#include "sed/resolution.hpp"

using namespace sed;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok && pass) detail << "failed: " << what << "; ";
        pass = pass && ok;
    }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

void zadeh(Outcome& o) {
    auto t0 = Clock::now();
    auto state = load_scenario("zadeh-pathology");
    auto r = fuse(state.workspace);
    double s2 = r.fused->mass(state.frame->parse("S2"));
    double elapsed = seconds_since(t0);
    o.require(std::abs(r.conflict - 0.9999) <= 1e-9, "conflict .9999");
    o.require(std::abs(belief(*r.fused, state.frame->parse("S2")) - 1.0) <= 1e-9, "Bel(S2) = 1");
    o.require(elapsed < 1.0, "runtime < 1 s");
    o.detail << "K=" << r.conflict << " m(S2)=" << s2 << " in " << elapsed << "s";
}

void extreme_odds(Outcome& o) {
    auto t0 = Clock::now();
    auto state = load_scenario("extreme-odds");
    const auto& long_shot = *state.find_argument("A2")->find_exception("A2.long-shot");
    // Against-odds of 10^10 : 1 on not-S from the second argument.
    double odds = (1.0 - long_shot.probability) / long_shot.probability;
    auto r = fuse(state.workspace);
    double bel = belief(*r.fused, state.frame->parse("S"));
    double elapsed = seconds_since(t0);
    o.require(std::abs(odds - 1e10) / 1e10 < 1e-6, "fixture encodes 10^10:1");
    o.require(std::abs(bel - 1.0) <= 1e-12, "Bel(S) = 1 within 1e-12");
    o.require(elapsed < 1.0, "runtime < 1 s");
    o.detail << "Bel(S)=" << bel << " K=" << r.conflict << " in " << elapsed << "s";
}

void bayes(Outcome& o) {
    double a = bayes_posterior(0.9, 0.2, 0.8);
    double b = bayes_posterior(0.99, 0.4, 0.6);
    o.require(std::abs(a - 0.6923) <= 0.0005, ".6923");
    o.require(std::abs(b - 0.9851) <= 0.0005, ".9851");
    o.require(std::abs(a - 0.18 / 0.26) <= 1e-12, "closed form (.9)(.2)/[(.9)(.2)+(.1)(.8)]");
    o.require(std::abs(b - 0.396 / 0.402) <= 1e-12, "closed form (.99)(.4)/[(.99)(.4)+(.01)(.6)]");
    o.detail << "posteriors " << a << " and " << b;
}

void crystal_ball(Outcome& o) {
    auto state = load_scenario("crystal-ball-8");
    auto args = state.workspace.arguments;
    auto& arg = args.at(0);
    o.require(arg.exceptions.size() == 8 && arg.base_support == 1.0, "8 exceptions, base 1.0");
    for (const auto& e : std::vector<ExceptionCondition>(arg.exceptions)) {
        o.require(e.probability == 0.31 && e.impact.kind == ImpactKind::Undercut, "each UNDERCUT at .31");
        propagate_exception_status(args, e.id, ExceptionStatus::Active);
    }
    auto m = compile_argument(state.frame, args.at(0));
    double core = m.mass(args.at(0).core_position);
    o.require(std::abs(core - 0.051380) <= 1e-6, "m(core) = .051380");
    o.detail << "m(core)=" << core;
}

void fusion_oracle(Outcome& o) {
    auto t0 = Clock::now();
    std::mt19937 rng(20240601);
    auto frame = make_frame("acc", {"a", "b", "c"});
    int compared = 0, drawn = 0;
    double worst = 0.0;
    while (compared < 250 && drawn < 2000) {
        ++drawn;
        auto args = oracle::random_session(rng, *frame);
        auto joint = oracle::fuse_joint(frame->full().bits(), args);
        double k = joint.count(0) ? joint[0] : 0.0;
        auto r = evaluate({frame, args, std::nullopt}, false);
        worst = std::max(worst, std::abs(r.conflict - k));
        if (!r.fused || k > 1.0 - 1e-9) continue;
        worst = std::max(worst, oracle::max_abs_diff(oracle::from(*r.fused), oracle::normalized(joint)));
        ++compared;
    }
    double elapsed = seconds_since(t0);
    o.require(compared >= 200, ">= 200 instances");
    o.require(worst <= 1e-9, "agreement within 1e-9");
    o.require(elapsed < 60.0, "runtime < 60 s");
    o.detail << compared << " instances, max deviation " << worst << ", " << elapsed << "s";
}

void dempster_algebra(Outcome& o) {
    std::mt19937 rng(99);
    auto frame = make_frame("alg", {"a", "b", "c", "d"});
    double comm = 0.0, assoc = 0.0, ident = 0.0;
    int pairs = 0, triples = 0;
    for (int i = 0; i < 600; ++i) {
        auto m1 = oracle::random_mass(rng, frame);
        auto m2 = oracle::random_mass(rng, frame);
        auto m3 = oracle::random_mass(rng, frame);
        ident = std::max(ident, oracle::max_abs_diff(oracle::from(combine_dempster(m1, MassFunction::vacuous(frame)).mass), oracle::from(m1)));
        auto raw12 = combine_dempster(m1, m2, false);
        if (raw12.conflict < 1.0 - 1e-6) {
            comm = std::max(comm, oracle::max_abs_diff(oracle::from(combine_dempster(m1, m2).mass),
                                                       oracle::from(combine_dempster(m2, m1).mass)));
            ++pairs;
        }
        auto raw23 = combine_dempster(m2, m3, false);
        auto raw123 = combine_dempster(raw12.mass, m3, false);
        if (raw12.conflict < 1.0 - 1e-6 && raw23.conflict < 1.0 - 1e-6 && raw123.mass.mass(Subset{}) < 1.0 - 1e-6) {
            auto left = combine_dempster(combine_dempster(m1, m2).mass, m3).mass;
            auto right = combine_dempster(m1, combine_dempster(m2, m3).mass).mass;
            assoc = std::max(assoc, oracle::max_abs_diff(oracle::from(left), oracle::from(right)));
            ++triples;
        }
    }
    o.require(pairs >= 500, ">= 500 pairs");
    o.require(triples >= 500, ">= 500 triples");
    o.require(comm <= 1e-12, "commutativity 1e-12");
    o.require(assoc <= 1e-9, "associativity 1e-9");
    o.require(ident <= 1e-12, "vacuous identity 1e-12");
    o.detail << pairs << " pairs, " << triples << " triples; comm " << comm << ", assoc " << assoc << ", identity " << ident;
}

void resolution(Outcome& o) {
    std::mt19937 rng(4242);
    auto frame = make_frame("res", {"a", "b", "c"});
    int sessions = 0;
    for (int i = 0; i < 200; ++i) {
        Workspace ws{frame, oracle::random_session(rng, *frame, true), std::nullopt};
        auto items = retractable_items(ws).size();
        auto t = resolve(ws, {});
        ++sessions;
        o.require(t.steps.size() <= items, "terminates within retractable count");
        for (const auto& s : t.steps) o.require(s.conflict_after <= s.conflict_before + 1e-12, "conflict non-increasing");
    }
    // One culprit: a sure undercut on the weaker argument explains all conflict.
    auto f = make_frame("one", {"S", "not-S"});
    Workspace ws{f,
                 {Argument{"A1", "E1", f->parse("S"), 0.5, {}},
                  Argument{"A2", "E2", f->parse("not-S"), 0.4,
                           {ExceptionCondition{"culprit", "", 1.0, Impact::undercut(), ExceptionStatus::AssumedFalse}}}},
                 std::nullopt};
    auto t = resolve(ws, {});
    o.require(t.steps.size() == 1, "one step");
    o.require(!t.steps.empty() && t.steps[0].retracted == "culprit", "names the culprit");
    o.require(!t.steps.empty() && std::abs(t.steps[0].culpability - 1.0) <= 1e-9, "culpability 1.0");
    o.detail << sessions << " random sessions; fixture culpability " << (t.steps.empty() ? -1.0 : t.steps[0].culpability);
}

void journal_round_trip(Outcome& o) {
    cliscript::TempDir dir("sed-accept");
    std::mt19937 rng(777);
    double worst = 0.0;
    int sessions = 0;
    for (int i = 0; i < 50; ++i) {
        auto path = dir.path / ("r" + std::to_string(i) + ".sedj");
        auto j = Journal::create(path, "r", {"a", "b", "c"});
        const Frame& frame = *j.state().frame;
        for (const auto& a : oracle::random_session(rng, frame)) {
            j.append(RecordKind::EvidenceAdded, {{"id", a.evidence_id}, {"description", a.id}});
            j.append(RecordKind::ArgumentAdded, {{"argument", json_io::to_json(frame, a)}});
        }
        auto a = evaluate(j.state().workspace, false);
        auto b = evaluate(Journal::load(path).state().workspace, false);
        worst = std::max(worst, std::abs(a.conflict - b.conflict));
        o.require(a.fused.has_value() == b.fused.has_value(), "same total-conflict status");
        if (a.fused && b.fused) worst = std::max(worst, oracle::max_abs_diff(oracle::from(*a.fused), oracle::from(*b.fused)));
        ++sessions;
    }
    o.require(worst <= 1e-12, "fusion identical within 1e-12");

    auto path = dir.path / "corrupt.sedj";
    auto j = Journal::create(path, "c", {"S", "not-S"});
    j.append(RecordKind::EvidenceAdded, {{"id", "E1"}, {"description", "x"}});
    auto text = cliscript::read_file(path);
    std::ofstream(path, std::ios::binary | std::ios::trunc) << text.substr(0, text.size() - 8);
    std::string message;
    try {
        Journal::load(path);
    } catch (const Error& e) {
        message = e.detail();
        o.require(e.code() == ErrorCode::CorruptRecord, "CorruptRecord");
    }
    o.require(message.find(":2") != std::string::npos, "message names line 2");
    o.detail << sessions << " sessions, max deviation " << worst << "; corruption: " << message;
}

void cli_golden(Outcome& o) {
    const std::filesystem::path golden_dir = SED_GOLDEN_DIR;
    for (const auto& name : scenario_names()) {
        auto a = cliscript::scripted_transcript(name);
        auto b = cliscript::scripted_transcript(name);
        o.require(a == b, name + " stable across runs");
        o.require(a == cliscript::read_file(golden_dir / (name + ".txt")), name + " matches golden file");
    }
    o.detail << scenario_names().size() << " scenarios";
}

void voi(Outcome& o) {
    auto f = make_frame("voi", {"S", "not-S"});
    Workspace ws{f, {Argument{"A1", "E1", f->parse("S"), 0.8, {}}}, std::nullopt};
    // A question almost certain to come back "yes", whose "no" answer is too weak to overturn S.
    std::vector<Answer> answers{{0.99, Argument{"yes", "Q", f->parse("S"), 0.6, {}}},
                                {0.01, Argument{"no", "Q", f->parse("not-S"), 0.3, {}}}};
    auto v = value_of_question(ws, answers);
    o.require(v.favored == "S", "favored S");
    o.require(v.flip_probability == 0.0, "flip probability 0");
    o.require(v.congruence >= 0.99, "congruence high");
    o.detail << "flip=" << v.flip_probability << " congruence=" << v.congruence;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria = {
        {"zadeh-pathology", zadeh},
        {"extreme-odds", extreme_odds},
        {"bayes-demonstration", bayes},
        {"crystal-ball-fixture", crystal_ball},
        {"fusion-oracle-equivalence", fusion_oracle},
        {"dempster-algebra", dempster_algebra},
        {"resolution-behavior", resolution},
        {"journal-round-trip", journal_round_trip},
        {"cli-golden-transcripts", cli_golden},
        {"voi-flip-vs-congruence", voi},
    };
    int failures = 0;
    for (const auto& [name, fn] : criteria) {
        Outcome o;
        try {
            fn(o);
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail << "exception: " << e.what();
        }
        std::cout << (o.pass ? "PASS " : "FAIL ") << name << ": " << o.detail.str() << "\n";
        failures += !o.pass;
    }
    std::cout << (criteria.size() - failures) << "/" << criteria.size() << " criteria passed\n";
    return failures == 0 ? 0 : 1;
}

#include "doctest.h"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace sed;

using testutil::code_of;

TEST_SUITE("belief") {

TEST_CASE("frame validation and subset parsing") {
    auto f = make_frame("f", {"S1", "S2", "S3"});
    CHECK(f->full().bits() == 0b111);
    CHECK(f->parse("S1, S3").bits() == 0b101);
    CHECK(f->describe(f->parse("S3,S1")) == "{S1, S3}");
    CHECK(code_of([&] { f->parse("S4"); }) == ErrorCode::UnknownHypothesis);
    CHECK(code_of([] { Frame("x", {}); }) == ErrorCode::InvalidFrame);
    CHECK(code_of([] { Frame("x", {"a", "a"}); }) == ErrorCode::InvalidFrame);
    CHECK(code_of([] { Frame("x", {"a,b"}); }) == ErrorCode::InvalidFrame);
    std::vector<std::string> many(25);
    for (int i = 0; i < 25; ++i) many[i] = "h" + std::to_string(i);
    CHECK(code_of([&] { Frame("x", many); }) == ErrorCode::InvalidFrame);
}

TEST_CASE("mass_new puts the residual on the frame") {
    auto f = make_frame("f", {"S", "not-S"});
    auto m = mass_new(f, {{f->parse("S"), 0.6}});
    CHECK(m.mass(f->parse("S")) == doctest::Approx(0.6));
    CHECK(m.mass(f->full()) == doctest::Approx(0.4));
    CHECK(belief(m, f->parse("S")) == doctest::Approx(0.6));
    CHECK(plausibility(m, f->parse("S")) == doctest::Approx(1.0));
    CHECK(plausibility(m, f->parse("not-S")) == doctest::Approx(0.4));

    CHECK(code_of([&] { mass_new(f, {{Subset{}, 0.1}}); }) == ErrorCode::EmptySubsetAssignment);
    CHECK(code_of([&] { mass_new(f, {{f->parse("S"), -0.1}}); }) == ErrorCode::NegativeMass);
    CHECK(code_of([&] { mass_new(f, {{f->parse("S"), 0.7}, {f->parse("not-S"), 0.4}}); }) == ErrorCode::MassExceedsOne);
    CHECK(code_of([&] { mass_new(f, {{Subset(0b100), 0.1}}); }) == ErrorCode::ForeignSubset);
}

TEST_CASE("frame mismatch is rejected") {
    auto a = make_frame("a", {"x", "y"});
    auto b = make_frame("b", {"x", "y"});
    CHECK(code_of([&] { combine_dempster(MassFunction::vacuous(a), MassFunction::vacuous(b)); }) == ErrorCode::FrameMismatch);
}

TEST_CASE("two-source Dempster example computed by hand") {
    // {S1}:.99,{S2}:.01 against {S3}:.99,{S2}:.01. Only S2 x S2 survives: .0001 of the product.
    auto f = make_frame("z", {"S1", "S2", "S3"});
    auto m1 = mass_new(f, {{f->parse("S1"), 0.99}, {f->parse("S2"), 0.01}});
    auto m2 = mass_new(f, {{f->parse("S3"), 0.99}, {f->parse("S2"), 0.01}});
    auto r = combine_dempster(m1, m2);
    CHECK(r.conflict == doctest::Approx(0.9999).epsilon(1e-12));
    CHECK(std::abs(r.mass.mass(f->parse("S2")) - 1.0) < 1e-12);
}

TEST_CASE("total conflict raises") {
    auto f = make_frame("f", {"S", "not-S"});
    auto m1 = mass_new(f, {{f->parse("S"), 1.0}});
    auto m2 = mass_new(f, {{f->parse("not-S"), 1.0}});
    CHECK(code_of([&] { combine_dempster(m1, m2); }) == ErrorCode::TotalConflict);
    auto raw = combine_dempster(m1, m2, false);
    CHECK(raw.conflict == 1.0);
}

TEST_CASE("combination matches the map-based oracle") {
    std::mt19937 rng(7);
    auto f = make_frame("p", {"a", "b", "c", "d"});
    for (int i = 0; i < 300; ++i) {
        auto m1 = oracle::random_mass(rng, f);
        auto m2 = oracle::random_mass(rng, f);
        double k_oracle = 0.0;
        auto expected = oracle::dempster(oracle::from(m1), oracle::from(m2), &k_oracle);
        if (k_oracle > 1.0 - 1e-9) continue;
        auto r = combine_dempster(m1, m2);
        CHECK(std::abs(r.conflict - k_oracle) < 1e-12);
        CHECK(oracle::max_abs_diff(oracle::from(r.mass), expected) < 1e-12);
    }
}

TEST_CASE("belief never exceeds plausibility") {
    std::mt19937 rng(11);
    auto f = make_frame("p", {"a", "b", "c"});
    for (int i = 0; i < 200; ++i) {
        auto m = oracle::random_mass(rng, f);
        for (std::uint32_t s = 1; s <= f->full().bits(); ++s) {
            CHECK(belief(m, Subset(s)) <= plausibility(m, Subset(s)) + 1e-15);
            CHECK(std::abs(belief(m, Subset(s)) + plausibility(m, f->complement(Subset(s))) - 1.0) < 1e-12);
        }
    }
}

TEST_CASE("bayes_posterior closed form and errors") {
    CHECK(bayes_posterior(0.5, 0.8, 0.2) == doctest::Approx(0.8));
    CHECK(code_of([] { bayes_posterior(1.2, 0.5, 0.5); }) == ErrorCode::BadProbability);
    CHECK(code_of([] { bayes_posterior(0.5, 0.0, 0.0); }) == ErrorCode::ZeroDenominator);
}

}

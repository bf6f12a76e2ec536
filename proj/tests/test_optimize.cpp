#include <doctest.h>

#include "opt/seesaw.hpp"
#include "sim/simulation.hpp"
#include "zoo/systems.hpp"

#include <cmath>
#include <cstdlib>

using namespace gptctx;

namespace {

PomStrategy squit_perfect_strategy() {
    PomStrategy s;
    s.n = 2;
    for (int x = 0; x < 4; ++x) {
        Vec w(3);
        w << 1.0, 2.0 * (x & 1) - 1.0, 2.0 * ((x >> 1) & 1) - 1.0;
        s.states.push_back(w);
    }
    Vec e1(3), e2(3);
    e1 << 0.5, 0.5, 0.0;
    e2 << 0.5, 0.0, 0.5;
    s.effects = {e1, e2};
    return s;
}

}  // namespace

TEST_SUITE("optimize") {

TEST_CASE("brute force classical POM oracle") {
    for (int d : {2, 3, 4}) CHECK(brute_force_pom_classical(d, 2) == doctest::Approx(0.75).epsilon(1e-7));
    CHECK(brute_force_pom_classical(2, 3) == doctest::Approx(2.0 / 3.0).epsilon(1e-7));
    // A trivial system carries no information: every bit is a coin flip.
    CHECK(brute_force_pom_classical(1, 2) == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(brute_force_pom_classical(1, 3) == doctest::Approx(0.5).epsilon(1e-9));
    CHECK_THROWS_AS(brute_force_pom_classical(0, 2), std::invalid_argument);
    CHECK_THROWS_AS(brute_force_pom_classical(6, 2), std::invalid_argument);
    CHECK_THROWS_AS(brute_force_pom_classical(3, 1), std::invalid_argument);
    CHECK_THROWS_AS(brute_force_pom_classical(3, 4), std::invalid_argument);
}

TEST_CASE("noisy-bit POM matches the closed formula") {
    SeesawConfig cfg;
    for (double a : {0.1, 0.25, 0.5}) {
        PomResult r = seesaw_pom(make_noisy_bit(a), 2, cfg);
        REQUIRE(r.found);
        CHECK(r.success == doctest::Approx((3.0 - 2.0 * a) / 4.0).epsilon(1e-6));
    }
    PomResult r3 = seesaw_pom(make_noisy_bit(0.1), 3, cfg);
    REQUIRE(r3.found);
    CHECK(r3.success == doctest::Approx(3.8 / 6.0).epsilon(1e-4));
}

TEST_CASE("classical POM see-saw attains the oracle without exceeding it") {
    SeesawConfig cfg;
    for (int d : {2, 3}) {
        const double oracle = brute_force_pom_classical(d, 2);
        PomResult r = seesaw_pom(make_simplex(d), 2, cfg);
        REQUIRE(r.found);
        CHECK(r.success <= oracle + 1e-6);
        CHECK(r.success >= oracle - 1e-6);
    }
}

TEST_CASE("squit POM reaches a perfect strategy") {
    SeesawConfig cfg;
    PomResult r = seesaw_pom(make_square_gbit(), 2, cfg);
    REQUIRE(r.found);
    CHECK(r.success == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(pom_po_residual(r.strategy) <= 1e-12);
    CHECK(validate_pom_strategy(make_square_gbit(), r.strategy, 1e-7).passed);
    // The reported value is exactly the re-evaluation of the strategy.
    CHECK(r.success == pom_success(make_square_gbit(), r.strategy));
}

TEST_CASE("explicit squit strategy evaluates exactly") {
    GptSystem sq = make_square_gbit();
    PomStrategy s = squit_perfect_strategy();
    CHECK(pom_success(sq, s) == 1.0);
    CHECK(pom_po_residual(s) == 0.0);
    CHECK(validate_pom_strategy(sq, s, 1e-12).passed);
}

TEST_CASE("strategy validation flags leaks and non-members") {
    GptSystem sq = make_square_gbit();
    PomStrategy s = squit_perfect_strategy();

    SUBCASE("parity leakage") {
        s.states[0] = s.states[3];  // collapses one parity class onto the other
        ValidationReport rep = validate_pom_strategy(sq, s);
        CHECK_FALSE(rep.passed);
        bool found = false;
        for (const auto& v : rep.violations)
            if (v.invariant == "parity-obliviousness") found = true;
        CHECK(found);
    }
    SUBCASE("state outside the polytope") {
        Vec bad(3);
        bad << 1.0, 3.0, 0.0;
        s.states[1] = bad;
        ValidationReport rep = validate_pom_strategy(sq, s);
        bool found = false;
        for (const auto& v : rep.violations)
            if (v.invariant == "state-membership" && v.indices == std::vector<int>{1}) found = true;
        CHECK(found);
    }
    SUBCASE("effect outside the polytope") {
        Vec bad(3);
        bad << 1.0, 0.9, 0.0;  // pairs to 1.9 with the (+,+) vertex
        s.effects[0] = bad;
        ValidationReport rep = validate_pom_strategy(sq, s);
        bool found = false;
        for (const auto& v : rep.violations)
            if (v.invariant == "effect-membership") found = true;
        CHECK(found);
    }
    SUBCASE("shape errors") {
        PomStrategy broken = squit_perfect_strategy();
        broken.states.pop_back();
        CHECK_FALSE(validate_pom_strategy(sq, broken).passed);
        PomStrategy tiny;
        tiny.n = 1;
        CHECK_FALSE(validate_pom_strategy(sq, tiny).passed);
    }
}

TEST_CASE("see-saw excess finds exact classical embeddings") {
    SeesawConfig cfg;
    CHECK(seesaw_excess(make_simplex(2), 3, cfg).epsilon <= 1e-9);
    CHECK(seesaw_excess(make_toy_bit(), 4, cfg).epsilon <= 1e-6);
    CHECK(seesaw_excess(make_noisy_bit(0.25), 2, cfg).epsilon <= 1e-9);
    CHECK(seesaw_excess(make_noisy_bit(0.25), 3, cfg).epsilon <= 1e-9);
    // The triangle system is affinely a simplex.
    CHECK(seesaw_excess(make_polygon(3), 3, cfg).epsilon <= 1e-7);
}

TEST_CASE("see-saw excess values for contextual systems") {
    SeesawConfig cfg;
    EmbedResult sq4 = seesaw_excess(make_square_gbit(), 4, cfg);
    REQUIRE(sq4.found);
    CHECK(sq4.epsilon == doctest::Approx(0.25).epsilon(1e-6));
    EmbedResult sq2 = seesaw_excess(make_square_gbit(), 2, cfg);
    REQUIRE(sq2.found);
    CHECK(sq2.epsilon == doctest::Approx(0.5).epsilon(1e-6));
    EmbedResult toy2 = seesaw_excess(make_toy_bit(), 2, cfg);
    REQUIRE(toy2.found);
    CHECK(toy2.epsilon == doctest::Approx(0.25).epsilon(1e-6));
}

TEST_CASE("certificates are coherent and trivially bounded") {
    SeesawConfig cfg;
    EmbedResult r = seesaw_excess(make_square_gbit(), 1, cfg);
    REQUIRE(r.found);
    CHECK(r.epsilon <= 1.0);
    SimulationCheck chk = validate_simulation(r.certificate, kCertTol);
    CHECK(chk.valid());
    CHECK(r.epsilon == chk.epsilonObserved);
    CHECK(r.certificate.epsilonClaimed == r.epsilon);
    CHECK(r.certificate.source.label == make_square_gbit().label);
}

TEST_CASE("general targets: composite embeddings") {
    SeesawConfig cfg;
    GptSystem s2 = make_simplex(2), s3 = make_simplex(3);
    CHECK(seesaw_embed(s3, minimal_tensor(s2, s3), cfg).epsilon <= 1e-9);
    // The separable two-bit composite misses the diagonal indicator effects,
    // so a three-letter classical system cannot embed exactly; the best
    // deviation is 1/3.
    EmbedResult gap = seesaw_embed(s3, minimal_tensor(s2, s2), cfg);
    REQUIRE(gap.found);
    CHECK(gap.epsilon == doctest::Approx(1.0 / 3.0).epsilon(1e-6));
    CHECK(seesaw_embed(s2, minimal_tensor(make_noisy_bit(0.25), s2), cfg).epsilon <= 1e-9);
    EmbedResult lone = seesaw_embed(s2, minimal_tensor(make_noisy_bit(0.25), make_simplex(1)), cfg);
    REQUIRE(lone.found);
    CHECK(lone.epsilon == doctest::Approx(0.25).epsilon(1e-6));
}

TEST_CASE("preserve-unit flag is honored") {
    SeesawConfig cfg;
    cfg.preserveUnit = true;
    EmbedResult r = seesaw_excess(make_toy_bit(), 4, cfg);
    REQUIRE(r.found);
    CHECK(r.epsilon <= 1e-6);
    GptSystem toy = make_toy_bit();
    Vec uImg = r.certificate.effectMap * toy.unitEffect;
    CHECK(max_abs(uImg - Vec::Ones(4)) <= 1e-9);
    CHECK(validate_simulation(r.certificate, kCertTol, true).valid());
}

TEST_CASE("thread count does not change results") {
    SeesawConfig c1, c4;
    c1.threads = 1;
    c4.threads = 4;
    EmbedResult a = seesaw_excess(make_square_gbit(), 4, c1);
    EmbedResult b = seesaw_excess(make_square_gbit(), 4, c4);
    CHECK(a.epsilon == b.epsilon);
    CHECK(a.certificate.stateMap == b.certificate.stateMap);
    PomResult pa = seesaw_pom(make_square_gbit(), 3, c1);
    PomResult pb = seesaw_pom(make_square_gbit(), 3, c4);
    CHECK(pa.success == pb.success);
}

TEST_CASE("resolve_threads precedence") {
    SeesawConfig cfg;
    cfg.threads = 2;
    CHECK(resolve_threads(cfg) == 2);  // explicit value wins over env
    cfg.threads = 0;
    setenv("GPTCTX_THREADS", "3", 1);
    CHECK(resolve_threads(cfg) == 3);
    unsetenv("GPTCTX_THREADS");
    CHECK(resolve_threads(cfg) == 1);
}

TEST_CASE("fixed seed is bit-reproducible") {
    SeesawConfig cfg;
    EmbedResult a = seesaw_excess(make_square_gbit(), 3, cfg);
    EmbedResult b = seesaw_excess(make_square_gbit(), 3, cfg);
    CHECK(a.epsilon == b.epsilon);
    PomResult pa = seesaw_pom(make_polygon(5), 2, cfg);
    PomResult pb = seesaw_pom(make_polygon(5), 2, cfg);
    CHECK(pa.success == pb.success);
}

TEST_CASE("POM success stays within probability bounds") {
    SeesawConfig cfg;
    for (const GptSystem& A : {make_square_gbit(), make_polygon(5), make_noisy_bit(0.3)}) {
        PomResult r = seesaw_pom(A, 2, cfg);
        REQUIRE(r.found);
        CHECK(r.success >= 0.5 - 1e-9);
        CHECK(r.success <= 1.0 + 1e-12);
    }
}

TEST_CASE("invalid arguments throw") {
    SeesawConfig cfg;
    CHECK_THROWS_AS(seesaw_pom(make_square_gbit(), 1, cfg), std::invalid_argument);
    SeesawConfig bad;
    bad.restarts = 0;
    CHECK_THROWS_AS(seesaw_excess(make_square_gbit(), 2, bad), std::invalid_argument);
    bad.restarts = 1;
    bad.maxIters = 0;
    CHECK_THROWS_AS(seesaw_pom(make_square_gbit(), 2, bad), std::invalid_argument);
}

}  // TEST_SUITE

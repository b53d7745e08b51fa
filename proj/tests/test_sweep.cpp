#include <doctest.h>

#include <random>

#include "squares/scaffold.hpp"
#include "squares/sweep.hpp"
#include "squares/verify.hpp"
#include "testutil.hpp"

using namespace sq;

namespace {

// Solid w x h rectangle with its south-west corner at (x0, y0).
Config solid_rect(int x0, int y0, int w, int h) {
    Config c(false);
    for (int x = x0; x < x0 + w; ++x)
        for (int y = y0; y < y0 + h; ++y) c.add({x, y});
    return c;
}

}  // namespace

TEST_CASE("arm_to_sweepline finds the metas and cleans the centers") {
    // Slab 4x3 at the origin, arm 3x6 east of it.
    Config c = solid_rect(0, 0, 4, 3);
    for (int x = 4; x <= 6; ++x)
        for (int y = 0; y < 6; ++y) c.add({x, y});
    Config start = c;
    Box b{0, 0, 3, 2};
    auto [s, l] = arm_to_sweepline(c, b);
    CHECK(l.x == 5);
    REQUIRE(l.metas.size() == 2);
    CHECK(l.metas[0].center == Cell{5, 1});
    CHECK(l.metas[1].center == Cell{5, 4});
    std::string why;
    CHECK_MESSAGE(sweepline_ok(c, l, &why), why);
    Config goal = c;
    VerifyResult r = verify_schedule(start, s, &goal);
    CHECK_MESSAGE(r.ok, r.detail);
}

TEST_CASE("advance moves the line west and keeps the invariant") {
    Config c = solid_rect(0, 0, 4, 6);
    for (int x = 4; x <= 6; ++x)
        for (int y = 0; y < 6; ++y) c.add({x, y});
    auto [s0, l] = arm_to_sweepline(c, Box{0, 0, 3, 5});
    size_t n = c.size();
    Config start = c;
    auto [s, nl] = advance(c, l);
    CHECK(nl.x == l.x - 1);
    CHECK(c.size() == n);
    std::string why;
    CHECK_MESSAGE(sweepline_ok(c, nl, &why), why);
    CHECK(s.size() <= 26);
    Config goal = c;
    VerifyResult r = verify_schedule(start, s, &goal);
    CHECK_MESSAGE(r.ok, r.detail);
}

TEST_CASE("advance refuses when the west half-space is empty") {
    // Two bare rings without centers and nothing west of the line.
    Config c = solid_rect(4, 0, 3, 6);
    SweepLine l;
    l.x = 5;
    l.metas = {{{5, 1}}, {{5, 4}}};
    c.remove({5, 1});
    c.remove({5, 4});
    c.add({7, 0});
    c.add({7, 3});
    REQUIRE(sweepline_ok(c, l));
    CHECK_THROWS_WITH_AS(advance(c, l), "nothing to sweep", std::runtime_error);
}

TEST_CASE("finalize_scaled packs the line into aligned blocks") {
    Config c = solid_rect(4, 0, 3, 6);
    for (int y = 0; y < 4; ++y) c.add({7, y});  // 22 modules: 2 blocks + 4 parked
    auto [s0, l] = arm_to_sweepline(c, Box{1, 0, 3, 5});
    Config start = c;
    auto [s, parked] = finalize_scaled(c, l);
    CHECK(parked.size() == c.size() % 9);
    Config scaled_part = c;
    for (const Cell& p : parked) scaled_part.remove(p);
    CHECK(is_scaled(scaled_part, 3));
    Config goal = c;
    VerifyResult r = verify_schedule(start, s, &goal);
    CHECK_MESSAGE(r.ok, r.detail);
}

TEST_CASE("phase3 after phase1+phase2 yields a 3-scaled configuration") {
    std::mt19937 rng(4242);
    for (int it = 0; it < 4; ++it) {
        int n = 25 + (int)(rng() % 50);
        Config c = sqtest::random_connected_config(n, Box{0, 0, 9, 9}, rng);
        CAPTURE(it);
        CAPTURE(n);
        auto [s1, x] = phase1(c);
        Schedule s2 = phase2(c);
        Config scaffolded = c;
        size_t width = (size_t)c.bounding_box().width();
        Phase3Result r3 = phase3(c);
        CHECK(r3.advances <= width);
        CHECK(r3.max_advance <= 26);
        CHECK(r3.parked.size() == (size_t)(n % 9));
        Config scaled_part = c;
        for (const Cell& p : r3.parked) scaled_part.remove(p);
        CHECK(is_scaled(scaled_part, 3));
        Config goal = c;
        VerifyResult r = verify_schedule(scaffolded, r3.stream, &goal);
        CHECK_MESSAGE(r.ok, r.detail);
    }
}

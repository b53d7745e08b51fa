#include <doctest.h>

#include <random>

#include "squares/scaled.hpp"
#include "squares/verify.hpp"
#include "testutil.hpp"

using namespace sq;
using sqtest::grid;

namespace {

Config run_schedule(const Config& start, const Schedule& s) {
    Config cur = start;
    for (size_t i = 0; i < s.size(); ++i) {
        Config next(false);
        VerifyResult r = verify_transformation(cur, s[i], &next);
        INFO("step ", i, ": ", violation_name(r.kind), " ", r.detail);
        REQUIRE(r.ok);
        cur = next;
    }
    return cur;
}

Config random_scaled(int blocks, std::mt19937& rng) {
    return scale_up(sqtest::random_connected_config(blocks, Box{0, 0, 5, 5}, rng));
}

}  // namespace

TEST_CASE("block rotation helpers round-trip and preserve anchoring") {
    std::mt19937 rng(11);
    for (int i = 0; i < 50; ++i) {
        Cell c{(int)(rng() % 41) - 20, (int)(rng() % 41) - 20};
        CHECK(rot3_cw(rot3_ccw(c)) == c);
        CHECK(rot3_ccw(rot3_cw(c)) == c);
    }
    for (Dir d : kDirs) {
        CHECK(rot_cw(rot_ccw(d)) == d);
        // The direction map matches the cell map on displacement vectors.
        Cell v = dir_vec(d);
        Cell rv = rot3_ccw(v) - rot3_ccw(Cell{0, 0});
        CHECK(rv == dir_vec(rot_ccw(d)));
    }
    // A full turn is the identity on configurations.
    Config c = scale_up(grid({"#.",
                              "##"}));
    CHECK(rotated3_ccw(c, 4).same_as(c));
    CHECK(is_scaled(rotated3_ccw(c, 1)));
    CHECK(is_scaled(rotated3_ccw(c, 2)));
    CHECK(is_scaled(rotated3_ccw(c, 3)));
}

TEST_CASE("scale predicates and conversions") {
    Config small = grid({"#.",
                         "##"});
    Config big = scale_up(small);
    CHECK(big.size() == 9 * small.size());
    CHECK(is_scaled(big));
    CHECK(!is_scaled(small));  // an L of three cells is not a union of 3x3 blocks
    CHECK(scale_down(big).same_as(small));
    CHECK_THROWS_AS(scale_down(small), std::invalid_argument);
    // A 3x3 block is itself 1- and 3-scaled but not 2-scaled.
    Config block = scale_up(grid({"#"}));
    CHECK(is_scaled(block, 1));
    CHECK(is_scaled(block, 3));
    CHECK(!is_scaled(block, 2));
    // Blocks must be anchored at multiples of three.
    Config shifted = block.translated({1, 0});
    CHECK(!is_scaled(shifted));
}

TEST_CASE("histogram and monotone predicates") {
    Config hist = grid({"#..",
                        "##.",
                        "###"});
    CHECK(is_histogram(hist.cells(), Dir::S));
    CHECK(is_histogram(hist.cells(), Dir::W));
    CHECK(is_xy_monotone(hist.cells()));

    Config tee = grid({"###",
                       ".#."});
    CHECK(!is_histogram(tee.cells(), Dir::S));
    CHECK(is_histogram(tee.cells(), Dir::N));
    CHECK(!is_xy_monotone(tee.cells()));

    Config east = grid({".##",
                        "..#"});
    CHECK(is_histogram(east.cells(), Dir::E));
    CHECK(!is_histogram(east.cells(), Dir::W));

    // South and west histogram together force xy-monotonicity.
    std::mt19937 rng(5);
    for (int i = 0; i < 100; ++i) {
        Config c = sqtest::random_connected_config(8, Box{0, 0, 4, 4}, rng);
        if (is_histogram(c.cells(), Dir::S) && is_histogram(c.cells(), Dir::W))
            CHECK(is_xy_monotone(c.cells()));
        if (is_xy_monotone(c.cells())) {
            CHECK(is_histogram(c.cells(), Dir::S));
            CHECK(is_histogram(c.cells(), Dir::W));
        }
    }
}

TEST_CASE("strip decomposition") {
    // One block column with a gap: two strips.
    Config c = scale_up(grid({"#",
                              ".",
                              "#"}));
    auto strips = strips_of(c.cells());
    REQUIRE(strips.size() == 2);
    CHECK(strips[0].x0 == 0);
    CHECK(strips[0].ylo == 0);
    CHECK(strips[0].yhi == 2);
    CHECK(strips[1].ylo == 6);
    CHECK(strips[1].yhi == 8);

    // Two adjacent block columns at different heights: one strip each.
    Config two = scale_up(grid({"#.",
                                "##"}));
    auto s2 = strips_of(two.cells());
    REQUIRE(s2.size() == 2);

    // A vertically mid-shifted strip still decomposes.
    Config shifted = scale_up(grid({"#"})).translated({0, 1});
    auto s3 = strips_of(shifted.cells());
    REQUIRE(s3.size() == 1);
    CHECK(s3[0].ylo == 1);

    // Unequal columns inside a block column are rejected.
    Config bad = scale_up(grid({"#"}));
    bad.add({0, 3});
    CHECK_THROWS_AS(strips_of(bad.cells()), std::invalid_argument);
}

TEST_CASE("translate: one block, all directions, six steps per cell") {
    Config block = scale_up(grid({"#"}));
    for (Dir d : kDirs) {
        for (int k : {0, 1, 2, 3}) {
            Schedule s = translate_scaled(block, d, k);
            CHECK((int)s.size() == 6 * k);
            Config goal = block.translated(dir_vec(d) * k);
            Config end = run_schedule(block, s);
            CHECK(end.same_as(goal));
        }
    }
    CHECK_THROWS_AS(translate_scaled(block, Dir::S, -1), std::invalid_argument);
    CHECK_THROWS_AS(translate_scaled(grid({"##"}), Dir::S, 1), std::invalid_argument);
}

TEST_CASE("translate: two blocks side by side, six steps per cell") {
    Config duo = scale_up(grid({"##"}));
    for (Dir d : kDirs) {
        for (int k : {1, 2, 3}) {
            Schedule s = translate_scaled(duo, d, k);
            CHECK((int)s.size() == 6 * k);
            Config end = run_schedule(duo, s);
            CHECK(end.same_as(duo.translated(dir_vec(d) * k)));
        }
    }
}

TEST_CASE("translate: random scaled configurations stay verified and arrive") {
    std::mt19937 rng(42);
    for (int it = 0; it < 8; ++it) {
        Config c = random_scaled(3 + (int)(rng() % 4), rng);
        Dir d = kDirs[rng() % 4];
        int k = 1 + (int)(rng() % 2);
        Schedule s = translate_scaled(c, d, k);
        Config end = run_schedule(c, s);
        CHECK(end.same_as(c.translated(dir_vec(d) * k)));
        CHECK((int)s.size() >= 6 * k);
    }
}

TEST_CASE("to_histogram: overhanging block descends to the ground") {
    Config c = scale_up(grid({"##",
                              ".#"}));
    Schedule s = to_histogram(c);
    Config end = run_schedule(c, s);
    CHECK(is_histogram(end.cells(), Dir::S));
    CHECK(end.size() == c.size());
    int h = c.bounding_box().height();
    CHECK((int)s.size() <= 6 * (h - 3));
}

TEST_CASE("to_histogram: shoulder descends beside a static tower") {
    // A tall column with a block hanging off its top: the hanging block
    // must descend along the static column.
    Config c = scale_up(grid({"##",
                              "#.",
                              "#."}));
    Schedule s = to_histogram(c);
    Config end = run_schedule(c, s);
    CHECK(is_histogram(end.cells(), Dir::S));
    int h = c.bounding_box().height();
    CHECK((int)s.size() <= 6 * (h - 3));
}

TEST_CASE("to_histogram: east and north bases work via rotation") {
    Config c = scale_up(grid({"##",
                              "#.",
                              "##"}));
    for (Dir base : kDirs) {
        Schedule s = to_histogram(c, base);
        Config end = run_schedule(c, s);
        CHECK(is_histogram(end.cells(), base));
    }
}

TEST_CASE("to_histogram: random scaled configurations") {
    std::mt19937 rng(7);
    for (int it = 0; it < 10; ++it) {
        Config c = random_scaled(4 + (int)(rng() % 4), rng);
        Schedule s = to_histogram(c);
        Config end = run_schedule(c, s);
        CHECK(is_histogram(end.cells(), Dir::S));
        int h = c.bounding_box().height();
        if (h > 3) CHECK((int)s.size() <= 6 * (h - 3));
    }
}

TEST_CASE("to_xy_monotone: fixtures and random configurations") {
    // Already monotone: nothing to do.
    Config rect = scale_up(grid({"##",
                                 "##"}));
    CHECK(to_xy_monotone(rect).empty());

    Config ell = scale_up(grid({"#.",
                                "#.",
                                "##"}));
    CHECK(to_xy_monotone(ell).empty());  // an L against the corner is monotone

    Config tee = scale_up(grid({"###",
                                ".#.",
                                ".#."}));
    Schedule s = to_xy_monotone(tee);
    Config end = run_schedule(tee, s);
    CHECK(is_xy_monotone(end.cells()));
    CHECK(end.size() == tee.size());

    std::mt19937 rng(99);
    for (int it = 0; it < 8; ++it) {
        Config c = random_scaled(4 + (int)(rng() % 5), rng);
        Schedule sc = to_xy_monotone(c);
        Config e = run_schedule(c, sc);
        CHECK(is_xy_monotone(e.cells()));
        int p = c.bounding_box().perimeter();
        CHECK((int)sc.size() <= 3 * (p - 6));
    }
}

namespace {

// Random xy-monotone block set grown from (0,0): a cell may be added only
// when its south and west neighbours (where they exist inside the box)
// are already present.
Config random_monotone_meta(int n, std::mt19937& rng) {
    CellSet s{{0, 0}};
    while ((int)s.size() < n) {
        std::vector<Cell> cand;
        for (const Cell& c : s)
            for (Dir d : {Dir::N, Dir::E}) {
                Cell t = c + dir_vec(d);
                if (s.count(t)) continue;
                bool ok = (t.x == 0 || s.count({t.x - 1, t.y})) &&
                          (t.y == 0 || s.count({t.x, t.y - 1}));
                if (ok) cand.push_back(t);
            }
        s.insert(cand[rng() % cand.size()]);
    }
    Config c(false);
    for (const Cell& cell : s) c.add(cell);
    return c;
}

// The staircase pair with arms of length k: moving the top block of the
// vertical arm to the end of the horizontal arm needs one tunnel of block
// distance 2k.
std::pair<Config, Config> staircase_pair(int k) {
    Config m1(false), m2(false);
    for (int y = 0; y <= k; ++y) m1.add({0, y});
    for (int x = 1; x < k; ++x) m1.add({x, 0});
    for (int y = 0; y < k; ++y) m2.add({0, y});
    for (int x = 1; x <= k; ++x) m2.add({x, 0});
    return {scale_up(m1), scale_up(m2)};
}

}  // namespace

TEST_CASE("histogram_to_histogram: trivial and error cases") {
    Config block = scale_up(grid({"#"}));
    CHECK(histogram_to_histogram(block, block).empty());
    Config duo = scale_up(grid({"##"}));
    CHECK_THROWS_AS(histogram_to_histogram(block, duo), std::invalid_argument);
    CHECK_THROWS_AS(histogram_to_histogram(duo, duo.translated({3, 0})), std::invalid_argument);
    // Non-monotone inputs are rejected.
    Config tee = scale_up(grid({"###",
                                ".#."}));
    CHECK_THROWS_AS(histogram_to_histogram(tee, tee.translated({0, 0})), std::invalid_argument);
}

TEST_CASE("histogram_to_histogram: one tunnel is exactly 18 steps at any distance") {
    for (int k : {1, 2, 4}) {
        CAPTURE(k);
        auto [c1, c2] = staircase_pair(k);
        Schedule s = histogram_to_histogram(c1, c2);
        CHECK((int)s.size() == 18);
        Config end = run_schedule(c1, s);
        CHECK(end.same_as(c2));
        // The reverse direction (a north-west tunnel) is also 18 steps.
        Schedule r = histogram_to_histogram(c2, c1);
        CHECK((int)r.size() == 18);
        Config back = run_schedule(c2, r);
        CHECK(back.same_as(c1));
        // The shared base module never moves.
        for (const Transformation& t : s)
            for (const Move& m : t.moves) CHECK(m.origin != Cell{0, 0});
    }
}

TEST_CASE("histogram_to_histogram: random monotone pairs") {
    std::mt19937 rng(4242);
    for (int it = 0; it < 6; ++it) {
        Config c1 = scale_up(random_monotone_meta(5 + (int)(rng() % 4), rng));
        Config c2 = scale_up(random_monotone_meta((int)c1.size() / 9, rng));
        CAPTURE(it);
        Schedule s = histogram_to_histogram(c1, c2);
        Config end = run_schedule(c1, s);
        CHECK(end.same_as(c2));
        int p1 = c1.bounding_box().perimeter(), p2 = c2.bounding_box().perimeter();
        CHECK((int)s.size() <= 18 * std::max((p1 + 1) / 2, (p2 + 1) / 2));
        // A module present in both configurations at the shared base corner
        // stays put.
        if (c1.occupied({0, 0}) && c2.occupied({0, 0}))
            for (const Transformation& t : s)
                for (const Move& m : t.moves) CHECK(m.origin != Cell{0, 0});
    }
}

TEST_CASE("solve_scaled: identity, translation, and random pairs") {
    Config block = scale_up(grid({"#"}));
    CHECK(solve_scaled(block, block).empty());

    // Same shape, different position: handled by translation between the
    // canonical forms.
    Config far = block.translated({9, 0});
    Schedule st = solve_scaled(block, far);
    Config end = run_schedule(block, st);
    CHECK(end.same_as(far));
    int pb = block.bounding_box().perimeter();
    CHECK((int)st.size() <= 12 * (pb + far.bounding_box().perimeter()));

    std::mt19937 rng(1312);
    for (int it = 0; it < 6; ++it) {
        int n = 4 + (int)(rng() % 4);
        Config c1 = scale_up(sqtest::random_connected_config(n, Box{0, 0, 4, 4}, rng));
        Config c2 = scale_up(sqtest::random_connected_config(n, Box{0, 0, 4, 4}, rng));
        c1 = c1.translated({-c1.bounding_box().xmin, -c1.bounding_box().ymin});
        c2 = c2.translated({-c2.bounding_box().xmin, -c2.bounding_box().ymin});
        CAPTURE(it);
        Schedule s = solve_scaled(c1, c2);
        Config end2 = run_schedule(c1, s);
        CHECK(end2.same_as(c2));
        int p1 = c1.bounding_box().perimeter(), p2 = c2.bounding_box().perimeter();
        CHECK((int)s.size() <= 12 * (p1 + p2));
    }
}

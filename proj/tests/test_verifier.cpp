#include <doctest.h>

#include <random>

#include "squares/verify.hpp"
#include "testutil.hpp"

using namespace sq;
using sqtest::grid;

namespace {

VerifyResult check(const Config& c, const Transformation& t, Config* out = nullptr,
                   VerifyOptions opt = {}) {
    return verify_transformation(c, t, out, opt);
}

}  // namespace

TEST_CASE("empty transformation is accepted") {
    Config c = grid({"##"});
    Config out(false);
    VerifyResult r = check(c, Transformation{}, &out);
    CHECK(r.ok);
    CHECK(out.same_as(c));
}

TEST_CASE("wall-supported slide is legal") {
    Config c = grid({"##",
                     "#."});
    // (0,0) slides east below the top row: wall (0,1),(1,1).
    VerifyResult r = check(c, Transformation{{slide({0, 0}, Dir::E)}});
    CHECK(r.ok);
}

TEST_CASE("convex transition around a corner is legal") {
    Config c = grid({"##"});
    Config out(false);
    VerifyResult r = check(c, Transformation{{convex({0, 0}, Dir::N, Dir::E)}}, &out);
    CHECK(r.ok);
    CHECK(out.occupied({1, 1}));
    CHECK(out.occupied({1, 0}));
}

TEST_CASE("a lone module cannot move") {
    Config c(false);
    c.add({0, 0});
    VerifyResult r = check(c, Transformation{{slide({0, 0}, Dir::N)}});
    CHECK(!r.ok);
    CHECK(r.kind == ViolationKind::DisconnectedBackbone);
}

TEST_CASE("missing origin is reported") {
    Config c = grid({"##"});
    VerifyResult r = check(c, Transformation{{slide({7, 7}, Dir::N)}});
    CHECK(!r.ok);
    CHECK(r.kind == ViolationKind::OriginMissing);
}

TEST_CASE("unsupported slide is rejected") {
    Config c = grid({"###"});
    // The east wall next to (0,0) has only its lower half.
    VerifyResult r = check(c, Transformation{{slide({0, 0}, Dir::N)}});
    CHECK(!r.ok);
    CHECK(r.kind == ViolationKind::UnsupportedMove);
}

TEST_CASE("moving a bridge module disconnects the backbone") {
    // Two vertical dominoes joined by a single bridge module.  The bridge
    // has a legal support template for sliding north, but removing it
    // disconnects the static remainder.
    Config c = grid({"#.#",
                     "###"});
    VerifyResult r = check(c, Transformation{{slide({1, 0}, Dir::N)}});
    CHECK(!r.ok);
    CHECK(r.kind == ViolationKind::DisconnectedBackbone);
}

TEST_CASE("two individually free modules can jointly break the backbone") {
    // Ring of eight around an empty centre; the two mid-side modules may
    // each leave alone, but moving both splits the ring.
    Config ring = grid({"###",
                        "#.#",
                        "###"});
    Move up = convex({1, 2}, Dir::N, Dir::E);
    Move down = convex({1, 0}, Dir::S, Dir::W);
    CHECK(check(ring, Transformation{{up}}).ok);
    CHECK(check(ring, Transformation{{down}}).ok);
    VerifyResult r = check(ring, Transformation{{up, down}});
    CHECK(!r.ok);
    CHECK(r.kind == ViolationKind::DisconnectedBackbone);
}

TEST_CASE("colliding parallel moves are rejected") {
    Config c = grid({"###",
                     "#.#"});
    // Both bottom modules slide towards the same cell under the top wall.
    Transformation t{{slide({0, 0}, Dir::E), slide({2, 0}, Dir::W)}};
    VerifyResult r = check(c, t);
    CHECK(!r.ok);
    CHECK(r.kind == ViolationKind::Collision);
}

TEST_CASE("parallel chain in one direction is legal") {
    Config c = grid({"####",
                     "##.."});
    Transformation t{{slide({0, 0}, Dir::E), slide({1, 0}, Dir::E)}};
    Config out(false);
    VerifyResult r = check(c, t, &out);
    CHECK(r.ok);
    CHECK(out.occupied({1, 0}));
    CHECK(out.occupied({2, 0}));
    CHECK(!out.occupied({0, 0}));
}

TEST_CASE("subset freeness agrees with the backbone check on supported moves") {
    // Every supported move keeps its mover edge-adjacent to a static module
    // (wall or pivot), so on fully supported transformations the two
    // freeness criteria coincide.  Exercise both on random configurations.
    std::mt19937 rng(4242);
    VerifyOptions strict;
    strict.subset_freeness = true;
    int checked = 0;
    for (int it = 0; it < 60; ++it) {
        Config c = sqtest::random_connected_config(7, Box{0, 0, 3, 3}, rng);
        for (const Cell& cell : c.sorted_cells())
            for (const Move& m : all_moves_from(cell)) {
                Transformation t{{m}};
                VerifyResult lax = check(c, t);
                VerifyResult sub = check(c, t, nullptr, strict);
                CHECK(lax.ok == sub.ok);
                if (lax.ok) ++checked;
            }
    }
    CHECK(checked > 100);
}

TEST_CASE("schedule verification tracks configurations and goals") {
    Config c = grid({"##",
                     "##"});
    Schedule s;
    s.push_back({{convex({0, 1}, Dir::N, Dir::E)}});
    s.push_back({{slide({0, 0}, Dir::N)}});
    Config goal = grid({".#",
                        "##",
                        ".#"});
    REQUIRE(goal.size() == 4);
    VerifyResult r = verify_schedule(c, s, &goal);
    CHECK(r.ok);

    Config wrong = grid({"####"});
    VerifyResult bad = verify_schedule(c, s, &wrong);
    CHECK(!bad.ok);
    CHECK(bad.kind == ViolationKind::GoalMismatch);
}

TEST_CASE("schedule failure pinpoints the offending step") {
    Config c = grid({"##",
                     "##"});
    Schedule s;
    s.push_back({{convex({0, 1}, Dir::N, Dir::E)}});
    s.push_back({{slide({5, 5}, Dir::N)}});
    VerifyResult r = verify_schedule(c, s, nullptr);
    CHECK(!r.ok);
    CHECK(r.kind == ViolationKind::OriginMissing);
    CHECK(r.step == 1);
}

TEST_CASE("strict in-place allows one excursion module") {
    Config c = grid({"##",
                     "##"});
    Config goal = c;
    // Rotate a corner module out of the box and back.
    Schedule s;
    s.push_back({{convex({0, 1}, Dir::W, Dir::S)}});   // leaves the box at (-1,0)
    s.push_back({{convex({-1, 0}, Dir::N, Dir::E)}});  // returns to (0,1)
    VerifyOptions opt;
    opt.in_place = InPlaceMode::Strict;
    VerifyResult r = verify_schedule(c, s, &goal, opt);
    CHECK(r.ok);
}

TEST_CASE("weak in-place bounds the distance from the union box") {
    Config c = grid({"##",
                     "##"});
    // Out-and-back excursion: the union of the start and goal boxes is the
    // 2x2 square, so the intermediate cell (-1,0) lies strictly outside.
    Schedule s;
    s.push_back({{convex({0, 1}, Dir::W, Dir::S)}});
    s.push_back({{convex({-1, 0}, Dir::N, Dir::E)}});
    VerifyOptions opt;
    opt.in_place = InPlaceMode::Weak;
    opt.weak_k = 1;
    CHECK(verify_schedule(c, s, &c, opt).ok);
    opt.weak_k = 0;
    VerifyResult r = verify_schedule(c, s, &c, opt);
    CHECK(!r.ok);
    CHECK(r.kind == ViolationKind::OutOfPlace);
}

TEST_CASE("reversed legal schedules verify from the far end") {
    std::mt19937 rng(99);
    int tried = 0;
    for (int it = 0; it < 200 && tried < 50; ++it) {
        Config c = sqtest::random_connected_config(8, Box{0, 0, 4, 4}, rng);
        // Find some legal single move and reverse it.
        for (const Cell& cell : c.sorted_cells()) {
            bool done = false;
            for (const Move& m : all_moves_from(cell)) {
                Config out(false);
                if (verify_transformation(c, Transformation{{m}}, &out).ok) {
                    Schedule fwd{{Transformation{{m}}}};
                    Schedule back = reversed(fwd);
                    VerifyResult r = verify_schedule(out, back, &c);
                    CHECK(r.ok);
                    ++tried;
                    done = true;
                    break;
                }
            }
            if (done) break;
        }
    }
    CHECK(tried >= 50);
}

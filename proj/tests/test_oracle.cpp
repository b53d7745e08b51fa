#include <doctest.h>

#include <random>

#include "squares/oracle.hpp"
#include "squares/verify.hpp"
#include "testutil.hpp"

using namespace sq;
using sqtest::grid;

namespace {

// All syntactic transformations over C (each module stays or performs one of
// its twelve move shapes), filtered through the production verifier.
std::vector<Transformation> accepted_by_verifier(const Config& c) {
    std::vector<Cell> cells = c.sorted_cells();
    std::vector<Transformation> out;
    std::vector<Move> chosen;
    std::function<void(size_t)> rec = [&](size_t i) {
        if (i == cells.size()) {
            if (chosen.empty()) return;
            Transformation t;
            t.moves = chosen;
            if (verify_transformation(c, t).ok) out.push_back(t);
            return;
        }
        rec(i + 1);
        for (const Move& m : all_moves_from(cells[i])) {
            chosen.push_back(m);
            rec(i + 1);
            chosen.pop_back();
        }
    };
    rec(0);
    return out;
}

std::string fingerprint(const std::vector<Transformation>& ts) {
    std::vector<std::string> keys;
    for (const Transformation& t : ts) {
        std::vector<std::string> ms;
        for (const Move& m : t.moves) ms.push_back(m.str());
        std::sort(ms.begin(), ms.end());
        std::string k;
        for (const std::string& s : ms) k += s + ";";
        keys.push_back(k);
    }
    std::sort(keys.begin(), keys.end());
    std::string all;
    for (const std::string& k : keys) all += k + "\n";
    return all;
}

}  // namespace

TEST_CASE("domino has exactly four legal transformations") {
    Config c = grid({"##"});
    auto ts = enumerate_transformations(c);
    // Each end module can pivot around the other to either side; no slides
    // are supported and both modules cannot move at once.
    REQUIRE(ts.size() == 4);
    for (const auto& t : ts) {
        CHECK(t.moves.size() == 1);
        CHECK(t.moves[0].kind == MoveKind::Convex);
    }
}

TEST_CASE("enumerator matches the production verifier on small configurations") {
    std::mt19937 rng(2024);
    for (int it = 0; it < 25; ++it) {
        Config c = sqtest::random_connected_config(4, Box{0, 0, 3, 3}, rng);
        auto oracle = enumerate_transformations(c);
        auto prod = accepted_by_verifier(c);
        INFO("configuration:\n", fingerprint({}));
        CHECK(fingerprint(oracle) == fingerprint(prod));
    }
}

TEST_CASE("enumerator rejects oversized configurations") {
    std::mt19937 rng(7);
    Config c = sqtest::random_connected_config(9, Box{0, 0, 4, 4}, rng);
    CHECK_THROWS_AS(enumerate_transformations(c, 8), std::logic_error);
}

TEST_CASE("optimal makespan: identity and pure translation are zero") {
    Config c = grid({"##",
                     ".#"});
    auto r = optimal_makespan(c, c, 3);
    REQUIRE(r.has_value());
    CHECK(r->makespan == 0);
    auto rt = optimal_makespan(c, c.translated({5, -2}), 3);
    REQUIRE(rt.has_value());
    CHECK(rt->makespan == 0);
}

TEST_CASE("optimal makespan: straight tromino to corner tromino in one step") {
    Config line = grid({"###"});
    Config corner = grid({"#.",
                          "##"});
    auto r = optimal_makespan(line, corner, 3);
    REQUIRE(r.has_value());
    CHECK(r->makespan == 1);
    // The witness schedule must verify and reach the goal up to translation.
    REQUIRE(r->schedule.size() == 1);
    Config out(false);
    CHECK(verify_transformation(line, r->schedule[0], &out).ok);
    Cell s1, s2;
    (void)s1;
    (void)s2;
    Box b1 = out.bounding_box(), b2 = corner.bounding_box();
    Config shifted = out.translated({b2.xmin - b1.xmin, b2.ymin - b1.ymin});
    CHECK(shifted.same_as(corner));
}

TEST_CASE("optimal makespan respects the cap") {
    Config line = grid({"####"});
    Config square = grid({"##",
                          "##"});
    auto r0 = optimal_makespan(line, square, 0);
    CHECK(!r0.has_value());
    auto r = optimal_makespan(line, square, 4);
    REQUIRE(r.has_value());
    CHECK(r->makespan >= 1);
    CHECK(r->makespan <= 4);
    // Witness schedule verifies step by step.
    Config cur = line;
    for (const auto& t : r->schedule) {
        Config next(false);
        REQUIRE(verify_transformation(cur, t, &next).ok);
        cur = next;
    }
    Box b1 = cur.bounding_box(), b2 = square.bounding_box();
    CHECK(cur.translated({b2.xmin - b1.xmin, b2.ymin - b1.ymin}).same_as(square));
}

TEST_CASE("worst case pair: L shapes in opposite corners") {
    for (int n : {4, 6, 9, 12}) {
        auto [c1, c2] = worst_case_pair(n);
        CHECK((int)c1.size() == n);
        CHECK((int)c2.size() == n);
        CHECK(c1.connected());
        CHECK(c2.connected());
        Box b1 = c1.bounding_box();
        Box b2 = c2.bounding_box();
        // Both occupy the same square working box.
        CHECK(b1.xmin == 0);
        CHECK(b1.ymin == 0);
        CHECK(Box::merge(b1, b2).width() == Box::merge(b1, b2).height());
        // The two configurations are point reflections of each other.
        Box u = Box::merge(b1, b2);
        Config refl(false);
        for (const Cell& c : c1.sorted_cells()) refl.add({u.xmax - c.x, u.ymax - c.y});
        CHECK(refl.same_as(c2));
    }
    CHECK_THROWS_AS(worst_case_pair(3), std::logic_error);
}

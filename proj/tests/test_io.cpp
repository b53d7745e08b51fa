#include <doctest.h>

#include <sstream>

#include "squares/io.hpp"
#include "testutil.hpp"

using namespace sq;
using sqtest::grid;

TEST_CASE("configuration round trip, unlabeled") {
    Config c = grid({"##.",
                     ".##"});
    std::string text = config_to_string(c);
    std::istringstream in(text);
    Config d = read_config(in);
    CHECK(d.same_as(c));
    CHECK(!d.labeled());
}

TEST_CASE("configuration round trip, labeled") {
    Config c = Config::from_labeled({{0, {0, 0}}, {4, {1, 0}}, {2, {1, 1}}});
    std::istringstream in(config_to_string(c));
    Config d = read_config(in);
    CHECK(d.same_as(c));
    CHECK(d.labeled());
    CHECK(d.label_at({1, 1}) == 2);
}

TEST_CASE("configuration parsing accepts comments and blank lines") {
    std::istringstream in(
        "# a comment\n"
        "squares v1 unlabeled   # trailing comment\n"
        "\n"
        "2\n"
        "0 0\n"
        "  1   0  \n");
    Config c = read_config(in);
    CHECK(c.size() == 2);
    CHECK(c.occupied({1, 0}));
}

TEST_CASE("configuration parse errors") {
    auto bad = [](const std::string& s) {
        std::istringstream in(s);
        CHECK_THROWS_AS(read_config(in), ParseError);
    };
    bad("");
    bad("squares v2 unlabeled\n0\n");
    bad("squares v1 colored\n0\n");
    bad("squares v1 unlabeled\n-1\n");
    bad("squares v1 unlabeled\n2\n0 0\n");            // too few lines
    bad("squares v1 unlabeled\n1\n0 0\n1 0\n");       // trailing content
    bad("squares v1 unlabeled\n2\n0 0\n0 0\n");       // duplicate cell
    bad("squares v1 labeled\n2\n1 0 0\n1 1 0\n");     // duplicate label
    bad("squares v1 unlabeled\n1\n0\n");              // missing coordinate
    bad("squares v1 unlabeled\n1\n0 0 7\n");          // extra token
}

TEST_CASE("schedule round trip") {
    Schedule s;
    s.push_back({{slide({0, 0}, Dir::E), convex({3, -2}, Dir::S, Dir::W)}});
    s.push_back({});
    s.push_back({{slide({-1, 4}, Dir::N)}});
    std::istringstream in(schedule_to_string(s));
    Schedule t = read_schedule(in);
    REQUIRE(t.size() == 3);
    CHECK(t[0].moves.size() == 2);
    CHECK(t[0].moves[0] == s[0].moves[0]);
    CHECK(t[0].moves[1] == s[0].moves[1]);
    CHECK(t[1].moves.empty());
    CHECK(t[2].moves[0] == s[2].moves[0]);
}

TEST_CASE("schedule parse errors") {
    auto bad = [](const std::string& s) {
        std::istringstream in(s);
        CHECK_THROWS_AS(read_schedule(in), ParseError);
    };
    bad("");
    bad("schedule v2\n");
    bad("schedule v1\nslide 0 0 N\n");             // move before step
    bad("schedule v1\nstep 2\n");                  // wrong numbering
    bad("schedule v1\nstep 1\nslide 0 0 Q\n");     // bad direction
    bad("schedule v1\nstep 1\nconvex 0 0 N\n");    // missing direction
    bad("schedule v1\nstep 1\nconvex 0 0 N S\n");  // not perpendicular
    bad("schedule v1\nstep 1\nhop 0 0 N\n");       // unknown keyword
    bad("schedule v1\nstep 1\nslide 0 0 N extra\n");
}

TEST_CASE("empty schedule") {
    std::istringstream in("schedule v1\n");
    Schedule s = read_schedule(in);
    CHECK(s.empty());
    CHECK(schedule_to_string(s) == "schedule v1\n");
}

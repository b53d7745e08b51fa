#pragma once
// Moves, parallel transformations, support and collision predicates.
//
// A slide moves a module one cell in direction d; it needs a wall of two
// static modules on one perpendicular side.  A convex transition moves a
// module around a corner to the diagonal cell origin+d1+d2 (d2 perpendicular
// to d1); the pivot cell origin+d2 must hold a static module and the two
// swept cells origin+d1 and origin+d1+d2 must be free of static modules.
// Both take one unit of time; a convex transition traverses its L-shaped
// path of length 2 at speed 2.

#include <optional>
#include <string>
#include <vector>

#include "squares/config.hpp"

namespace sq {

enum class MoveKind : uint8_t { Slide, Convex };

struct Move {
    Cell origin;
    MoveKind kind = MoveKind::Slide;
    Dir d1 = Dir::N;
    Dir d2 = Dir::E;  // only meaningful for convex transitions

    Cell target() const {
        Cell t = origin + dir_vec(d1);
        if (kind == MoveKind::Convex) t = t + dir_vec(d2);
        return t;
    }
    friend bool operator==(const Move& a, const Move& b) {
        if (a.origin != b.origin || a.kind != b.kind || a.d1 != b.d1) return false;
        return a.kind == MoveKind::Slide || a.d2 == b.d2;
    }
    std::string str() const;
};

inline Move slide(Cell origin, Dir d) { return Move{origin, MoveKind::Slide, d, Dir::N}; }
inline Move convex(Cell origin, Dir d1, Dir d2) { return Move{origin, MoveKind::Convex, d1, d2}; }

// A transformation is a set of moves executed in parallel (distinct origins).
struct Transformation {
    std::vector<Move> moves;

    CellSet origins() const;
    bool well_formed(std::string* why = nullptr) const;
};

using Schedule = std::vector<Transformation>;

// All 12 geometric move shapes from one origin (4 slides + 8 convex).
std::vector<Move> all_moves_from(const Cell& origin);

// Support template against a set of static (non-moving) modules.
bool move_supported(const CellSet& statics, const Move& m);

// Exact continuous collision test for two simultaneous moves: true when the
// open interiors of the two unit squares intersect at some time t in (0,1].
// Static obstacles are excluded by the support template, so only moving
// pairs are tested here.
bool moves_collide(const Move& a, const Move& b);

// Apply a transformation without legality checking (origins must exist,
// targets must not clash); returns the resulting configuration.
Config apply(const Config& c, const Transformation& t);

// Reverse of a single move / transformation / schedule: running the reverse
// schedule from the final configuration recreates the initial one.
Move reversed(const Move& m);
Transformation reversed(const Transformation& t);
Schedule reversed(const Schedule& s);

}  // namespace sq

#include "squares/moves.hpp"

#include <algorithm>

namespace sq {

std::string Move::str() const {
    std::string s = to_string(origin);
    if (kind == MoveKind::Slide) {
        s += " slide ";
        s += dir_char(d1);
    } else {
        s += " convex ";
        s += dir_char(d1);
        s += dir_char(d2);
    }
    return s;
}

CellSet Transformation::origins() const {
    CellSet s;
    for (const Move& m : moves) s.insert(m.origin);
    return s;
}

bool Transformation::well_formed(std::string* why) const {
    CellSet seen;
    for (const Move& m : moves) {
        if (m.kind == MoveKind::Convex && !perpendicular(m.d1, m.d2)) {
            if (why) *why = "convex directions not perpendicular at " + to_string(m.origin);
            return false;
        }
        if (!seen.insert(m.origin).second) {
            if (why) *why = "duplicate move origin " + to_string(m.origin);
            return false;
        }
    }
    return true;
}

std::vector<Move> all_moves_from(const Cell& origin) {
    std::vector<Move> out;
    out.reserve(12);
    for (Dir d : kDirs) out.push_back(slide(origin, d));
    for (Dir d1 : kDirs)
        for (Dir d2 : kDirs)
            if (perpendicular(d1, d2)) out.push_back(convex(origin, d1, d2));
    return out;
}

bool move_supported(const CellSet& statics, const Move& m) {
    Cell v1 = dir_vec(m.d1);
    if (m.kind == MoveKind::Slide) {
        if (statics.count(m.origin + v1)) return false;  // target blocked
        for (Dir p : {Dir(((int)m.d1 + 1) % 4), Dir(((int)m.d1 + 3) % 4)}) {
            Cell w = dir_vec(p);
            if (statics.count(m.origin + w) && statics.count(m.origin + w + v1)) return true;
        }
        return false;
    }
    Cell v2 = dir_vec(m.d2);
    if (!statics.count(m.origin + v2)) return false;               // pivot missing
    if (statics.count(m.origin + v1)) return false;                // swept cell blocked
    if (statics.count(m.origin + v1 + v2)) return false;           // target blocked
    return true;
}

namespace {

// Lower-left corner of the moving square in doubled coordinates, piecewise
// linear in u = 2t over [0,1] and [1,2].  Returns value at u = seg and the
// integer slope on segment [seg, seg+1].
void segment_motion(const Move& m, int seg, Cell& at, Cell& slope) {
    Cell o2 = m.origin * 2;
    Cell v1 = dir_vec(m.d1);
    if (m.kind == MoveKind::Slide) {
        // P(u) = 2o + u*v1
        at = o2 + v1 * seg;
        slope = v1;
        return;
    }
    Cell v2 = dir_vec(m.d2);
    if (seg == 0) {
        at = o2;
        slope = v1 * 2;
    } else {
        at = o2 + v1 * 2;
        slope = v2 * 2;
    }
}

struct Frac {
    long num;
    long den;  // > 0
};

bool frac_less(const Frac& a, const Frac& b) { return a.num * b.den < b.num * a.den; }

// Open interval of w in which |x0 + s*w| < 2; within the ambient [0,1].
// Returns false when empty.
bool axis_window(long x0, long s, Frac& lo, Frac& hi) {
    if (s == 0) {
        if (std::abs(x0) >= 2) return false;
        lo = {0, 1};
        hi = {1, 1};
        return true;
    }
    long a = -2 - x0, b = 2 - x0;  // bounds of s*w
    if (s < 0) {
        std::swap(a, b);
        s = -s;
        a = -a;
        b = -b;
        // now condition is a < s*w < b with s > 0
    }
    lo = {a, s};
    hi = {b, s};
    return true;
}

}  // namespace

bool moves_collide(const Move& a, const Move& b) {
    if (linf_dist(a.origin, b.origin) > 3) return false;
    for (int seg = 0; seg < 2; ++seg) {
        Cell pa, sa, pb, sb;
        segment_motion(a, seg, pa, sa);
        segment_motion(b, seg, pb, sb);
        long x0 = pa.x - pb.x, sx = sa.x - sb.x;
        long y0 = pa.y - pb.y, sy = sa.y - sb.y;
        Frac lx, hx, ly, hy;
        if (!axis_window(x0, sx, lx, hx)) continue;
        if (!axis_window(y0, sy, ly, hy)) continue;
        Frac lo = {0, 1}, hi = {1, 1};
        if (frac_less(lo, lx)) lo = lx;
        if (frac_less(lo, ly)) lo = ly;
        if (frac_less(hx, hi)) hi = hx;
        if (frac_less(hy, hi)) hi = hy;
        // The feasible set is the open interval (lo, hi); u = 0 itself is
        // excluded because the interval is open on the left.
        if (frac_less(lo, hi)) return true;
    }
    return false;
}

Config apply(const Config& c, const Transformation& t) {
    std::string why;
    if (!t.well_formed(&why)) throw std::runtime_error("malformed transformation: " + why);
    Config out = c;
    std::vector<std::pair<Cell, Cell>> motions;
    for (const Move& m : t.moves) {
        if (!c.occupied(m.origin)) throw std::runtime_error("move origin not occupied: " + to_string(m.origin));
        motions.push_back({m.origin, m.target()});
        out.remove(m.origin);
    }
    for (const auto& [from, to] : motions) {
        if (out.occupied(to)) throw std::runtime_error("move target overlap at " + to_string(to));
        if (c.labeled()) out.add(to, c.label_at(from));
        else out.add(to);
    }
    return out;
}

Move reversed(const Move& m) {
    Move r = m;
    r.origin = m.target();
    if (m.kind == MoveKind::Slide) {
        r.d1 = opposite(m.d1);
    } else {
        r.d1 = opposite(m.d2);
        r.d2 = opposite(m.d1);
    }
    return r;
}

Transformation reversed(const Transformation& t) {
    Transformation r;
    for (const Move& m : t.moves) r.moves.push_back(reversed(m));
    return r;
}

Schedule reversed(const Schedule& s) {
    Schedule r;
    for (auto it = s.rbegin(); it != s.rend(); ++it) r.push_back(reversed(*it));
    return r;
}

}  // namespace sq

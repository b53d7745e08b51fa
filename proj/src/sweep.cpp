#include "squares/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <stdexcept>
#include <unordered_map>

#include "squares/verify.hpp"

namespace sq {

namespace {

int floor_div(int a, int b) { return a >= 0 ? a / b : -((-a + b - 1) / b); }

Box expanded(Box b, int k) {
    b.xmin -= k;
    b.ymin -= k;
    b.xmax += k;
    b.ymax += k;
    return b;
}

// Directions perpendicular to d as a pair.
std::pair<Dir, Dir> perp_pair(Dir d) {
    switch (d) {
        case Dir::N:
        case Dir::S: return {Dir::E, Dir::W};
        default: return {Dir::N, Dir::S};
    }
}

// ---- local window planner ------------------------------------------------
//
// Moves a handful of modules inside a small rectangular window, everything
// else static, from the current occupancy to a target occupancy.  A* over
// occupancy bitmasks; moves are locally legality-checked (support, swept
// cells, a no-eastward rule, and orphan guards for horizontal chains that
// leave the window); the emitted stream is re-verified by the caller.

struct WindowProblem {
    const Config* c = nullptr;
    std::vector<Cell> cells;
    std::map<Cell, int> index;
    bool no_east = true;

    int idx(const Cell& p) const {
        auto it = index.find(p);
        return it == index.end() ? -1 : it->second;
    }
    bool occ(uint32_t mask, const Cell& p) const {
        int i = idx(p);
        return i >= 0 ? ((mask >> i) & 1) != 0 : c->occupied(p);
    }
    uint32_t start_mask() const {
        uint32_t m = 0;
        for (size_t i = 0; i < cells.size(); ++i)
            if (c->occupied(cells[i])) m |= 1u << i;
        return m;
    }

    bool legal(uint32_t mask, const Move& m) const {
        Cell o = m.origin, t = m.target();
        int ti = idx(t);
        if (ti < 0 || occ(mask, t)) return false;
        if (no_east && t.x > o.x) return false;
        Cell v1 = dir_vec(m.d1);
        if (m.kind == MoveKind::Slide) {
            bool wall = false;
            for (Dir w : {perp_pair(m.d1).first, perp_pair(m.d1).second}) {
                Cell wv = dir_vec(w);
                if (occ(mask, o + wv) && occ(mask, o + wv + v1)) wall = true;
            }
            if (!wall) return false;
        } else {
            Cell v2 = dir_vec(m.d2);
            if (!occ(mask, o + v2)) return false;   // pivot
            if (occ(mask, o + v1)) return false;    // swept cell
        }
        // Orphan guards: do not vacate the attachment point of a horizontal
        // chain that continues outside the window, unless the chain rests on
        // an occupied row below (clumps hang from their bottom row).
        for (const Cell& u : {o + Cell{1, 0}, o + Cell{-1, 0}})
            if (idx(u) < 0 && c->occupied(u) && !c->occupied({u.x, u.y - 1})) return false;
        // Backbone approximation: with the mover lifted, every occupied
        // window component must touch an occupied cell outside the window
        // (the outside remainder is assumed connected).
        uint32_t statics = mask & ~(1u << idx(o));
        uint32_t seen = 0;
        for (size_t i = 0; i < cells.size(); ++i) {
            if (!((statics >> i) & 1) || ((seen >> i) & 1)) continue;
            uint32_t comp = 0;
            bool outside = false;
            std::vector<int> stack{(int)i};
            comp |= 1u << i;
            while (!stack.empty()) {
                int j = stack.back();
                stack.pop_back();
                for (const Cell& u : neighbors4(cells[j])) {
                    int k = idx(u);
                    if (k < 0) {
                        if (c->occupied(u)) outside = true;
                    } else if (((statics >> k) & 1) && !((comp >> k) & 1)) {
                        comp |= 1u << k;
                        stack.push_back(k);
                    }
                }
            }
            if (!outside) return false;
            seen |= comp;
        }
        return true;
    }
};

std::optional<std::vector<Move>> solve_window(const Config& c, const std::vector<Cell>& wcells,
                                              uint32_t target, bool no_east, int cap) {
    WindowProblem wp;
    wp.c = &c;
    wp.cells = wcells;
    wp.no_east = no_east;
    for (size_t i = 0; i < wcells.size(); ++i) wp.index[wcells[i]] = (int)i;
    uint32_t start = wp.start_mask();
    if (start == target) return std::vector<Move>{};
    if (__builtin_popcount(start) != __builtin_popcount(target)) return std::nullopt;

    auto h = [&](uint32_t m) { return __builtin_popcount(m ^ target) / 2; };
    struct Node {
        int f, g;
        uint32_t mask;
        bool operator<(const Node& o) const { return f > o.f; }
    };
    std::priority_queue<Node> open;
    std::unordered_map<uint32_t, std::pair<uint32_t, Move>> came;
    std::unordered_map<uint32_t, int> gscore;
    open.push({h(start), 0, start});
    gscore[start] = 0;
    while (!open.empty()) {
        Node n = open.top();
        open.pop();
        if (n.mask == target) {
            std::vector<Move> path;
            for (uint32_t m = target; m != start;) {
                auto& [pm, mv] = came.at(m);
                path.push_back(mv);
                m = pm;
            }
            std::reverse(path.begin(), path.end());
            return path;
        }
        if (n.g > gscore[n.mask] || n.g >= cap) continue;
        for (size_t i = 0; i < wp.cells.size(); ++i) {
            if (!((n.mask >> i) & 1)) continue;
            for (const Move& m : all_moves_from(wp.cells[i])) {
                if (!wp.legal(n.mask, m)) continue;
                uint32_t nm = (n.mask & ~(1u << i)) | (1u << wp.idx(m.target()));
                auto it = gscore.find(nm);
                if (it != gscore.end() && it->second <= n.g + 1) continue;
                gscore[nm] = n.g + 1;
                came[nm] = {n.mask, m};
                open.push({n.g + 1 + h(nm), n.g + 1, nm});
            }
        }
    }
    return std::nullopt;
}

// Execute per-meta plans as batched rounds: the k-th move of every plan in
// the batch merges into one transformation, verified for real; on failure
// the moves run singly.
Schedule run_batch(Config& c, std::vector<std::vector<Move>> plans, const char* what) {
    Schedule out;
    size_t rounds = 0;
    for (const auto& p : plans) rounds = std::max(rounds, p.size());
    for (size_t r = 0; r < rounds; ++r) {
        Transformation t;
        for (const auto& p : plans)
            if (r < p.size()) t.moves.push_back(p[r]);
        if (t.moves.empty()) continue;
        if (verify_transformation(c, t, &c).ok) {
            out.push_back(t);
            continue;
        }
        for (const Move& m : t.moves) {
            Transformation s{{m}};
            VerifyResult vr = verify_transformation(c, s, &c);
            if (!vr.ok)
                throw std::runtime_error(std::string(what) + ": illegal step " + to_string(m.origin) +
                                         "->" + to_string(m.target()) + ": " + vr.detail);
            out.push_back(s);
        }
    }
    return out;
}

}  // namespace

// ---- sweep line structure ------------------------------------------------

std::vector<Cell> SweepLine::ring_cells(size_t i) const {
    std::vector<Cell> out;
    Cell v = metas[i].center;
    for (const Cell& n : neighbors8(v)) out.push_back(n);
    return out;
}

std::vector<Cell> SweepLine::west_cells(size_t i) const {
    Cell v = metas[i].center;
    return {{x - 2, v.y - 1}, {x - 2, v.y}, {x - 2, v.y + 1}};
}

bool sweepline_ok(const Config& c, const SweepLine& l, std::string* why) {
    auto fail = [&](std::string m) {
        if (why) *why = std::move(m);
        return false;
    };
    if (l.metas.size() < 2) return fail("fewer than two meta-modules");
    for (size_t i = 0; i < l.metas.size(); ++i) {
        const Cell& v = l.metas[i].center;
        if (v.x != l.x) return fail("center off the line column");
        if (i > 0 && v.y != l.metas[i - 1].center.y + 3) return fail("centers not 3 apart");
        for (const Cell& r : l.ring_cells(i))
            if (!c.occupied(r)) return fail("ring cell empty at " + to_string(r));
    }
    Box bb = c.bounding_box();
    for (int y = l.ymin(); y <= l.ymax(); ++y)
        for (int xx = l.x + 1; xx < bb.xmax; ++xx)
            if (!c.occupied({xx, y}) && c.occupied({xx + 1, y}) &&
                !c.occupied({xx + 1, y - 1}))
                return fail("east material unattached at " + to_string(Cell{xx + 1, y}));
    return true;
}

// ---- operations ----------------------------------------------------------

namespace {

std::vector<Cell> band_window(int X, int cy, int x0, int x1, int r0, int r1) {
    std::vector<Cell> out;
    for (int xx = X + x0; xx <= X + x1; ++xx)
        for (int yy = cy + r0; yy <= cy + r1; ++yy) out.push_back({xx, yy});
    return out;
}

uint32_t mask_of(const std::vector<Cell>& cells, const CellSet& on) {
    uint32_t m = 0;
    for (size_t i = 0; i < cells.size(); ++i)
        if (on.count(cells[i])) m |= 1u << i;
    return m;
}

// Plan one meta's part of an advance: line block shifts from columns
// X-1..X+1 to X-2..X, surplus packed flush east.
std::vector<Move> plan_band_advance(const Config& c, int X, int cy) {
    std::vector<Cell> win = band_window(X, cy, -2, +2, -1, +1);
    int occ = 0;
    for (const Cell& p : win)
        if (c.occupied(p)) ++occ;
    std::array<int, 3> rows{cy - 1, cy, cy + 1};
    // A row keeps a 2-cell strip only when it is the attachment row of an
    // east clump: its outside east cell is occupied with nothing below it.
    std::array<bool, 3> forced{};
    std::array<bool, 3> east{};
    int forced_total = 0;
    for (int r = 0; r < 3; ++r) {
        east[r] = c.occupied({X + 3, rows[r]});
        forced[r] = east[r] && !c.occupied({X + 3, rows[r] - 1});
        if (forced[r]) forced_total += 2;
    }
    auto feasible = [&](int line) {
        int L = occ - line;
        return L >= forced_total && L <= 6;
    };
    // Prefer the solid 9-cell line: it keeps surplus inside the band instead
    // of shedding it into a new permanent strip.
    int line = feasible(9) ? 9 : 8;
    if (!feasible(line)) throw std::runtime_error("advance: band occupancy out of range");
    int L = occ - line;
    std::array<int, 3> e{};
    for (int r = 0; r < 3; ++r) e[r] = forced[r] ? 2 : 0;
    int rem = L - forced_total;
    // Extras go to rows that already carry east material first, so new
    // clumps only start when unavoidable.
    while (rem > 0) {
        int best = -1;
        auto key = [&](int r) { return std::tuple(east[r] ? 0 : 1, e[r], r); };
        for (int r = 0; r < 3; ++r)
            if (e[r] < 2 && (best < 0 || key(r) < key(best))) best = r;
        ++e[best];
        --rem;
    }
    CellSet on;
    for (int xx = X - 2; xx <= X; ++xx)
        for (int r = 0; r < 3; ++r) on.insert({xx, rows[r]});
    if (line == 8) on.erase({X - 1, cy});
    for (int r = 0; r < 3; ++r)
        for (int k = 0; k < e[r]; ++k) on.insert({X + 1 + k, rows[r]});
    // Eastward moves stay allowed: shedding the surplus pushes material
    // through the line into the flush strips.
    auto plan = solve_window(c, win, mask_of(win, on), /*no_east=*/false, 20);
    if (!plan) throw std::runtime_error("advance: no local plan for band");
    return *plan;
}

// Plan emptying one center into a gap of its west strip.  Returns nullopt
// when the band is already normal: center empty, or west strip full or
// fully empty (filling an empty strip would create new west material and
// the sweep would never terminate).  Widens the window as a last resort.
std::optional<std::vector<Move>> plan_band_clean(const Config& c, int X, int cy) {
    Cell center{X, cy};
    if (!c.occupied(center)) return std::nullopt;
    std::vector<Cell> wcand{{X - 2, cy}, {X - 2, cy - 1}, {X - 2, cy + 1}};
    int wocc = 0;
    for (const Cell& w : wcand)
        if (c.occupied(w)) ++wocc;
    if (wocc == 0 || wocc == 3) return std::nullopt;
    for (auto [r0, r1] : {std::pair{-1, 1}, std::pair{-2, 2}}) {
        std::vector<Cell> win = band_window(X, cy, -2, +2, r0, r1);
        CellSet on;
        for (const Cell& p : win)
            if (c.occupied(p)) on.insert(p);
        for (const Cell& w : wcand) {
            if (c.occupied(w)) continue;
            CellSet tgt = on;
            tgt.erase(center);
            tgt.insert(w);
            if (auto plan = solve_window(c, win, mask_of(win, tgt), true, 10)) return plan;
        }
    }
    throw std::runtime_error("clean: no local plan for band");
}

}  // namespace

Schedule clean(Config& c, const SweepLine& l) {
    Schedule out;
    for (int parity : {0, 1}) {  // leading metas first, then trailing
        std::vector<std::vector<Move>> plans;
        for (size_t i = 0; i < l.metas.size(); ++i) {
            if ((int)(i % 2) != parity) continue;
            if (auto p = plan_band_clean(c, l.x, l.metas[i].center.y)) plans.push_back(*p);
        }
        Schedule s = run_batch(c, std::move(plans), "clean");
        out.insert(out.end(), s.begin(), s.end());
    }
    return out;
}

std::pair<Schedule, SweepLine> arm_to_sweepline(Config& c, const Box& b) {
    SweepLine l;
    l.x = b.xmax + 2;
    for (int y = b.ymin + 1;; y += 3) {
        bool ring = true;
        for (int xx = l.x - 1; xx <= l.x + 1; ++xx)
            for (int yy = y - 1; yy <= y + 1; ++yy)
                if (!(xx == l.x && yy == y) && !c.occupied({xx, yy})) ring = false;
        if (!ring) break;
        l.metas.push_back({{l.x, y}});
    }
    if (l.metas.size() < 2)
        throw std::runtime_error("arm_to_sweepline: arm shorter than two meta-modules");
    Schedule s = clean(c, l);
    std::string why;
    if (!sweepline_ok(c, l, &why)) throw std::runtime_error("arm_to_sweepline: " + why);
    return {std::move(s), std::move(l)};
}

std::pair<Schedule, SweepLine> advance(Config& c, const SweepLine& l) {
    bool west = false;
    for (const Cell& p : c.cells())
        if (p.x <= l.x - 2) west = true;
    if (!west) throw std::runtime_error("nothing to sweep");
    Schedule out;
    // Re-balance the bands first.  A band must keep at least the 8-cell line
    // plus two strip cells per row whose outside east neighbor is occupied;
    // when it cannot, a surplus module from another band walks over along
    // the line face.
    {
        auto band_occ = [&](int cy) {
            int o = 0;
            for (const Cell& p : band_window(l.x, cy, -2, +2, -1, +1))
                if (c.occupied(p)) ++o;
            return o;
        };
        auto band_forced = [&](int cy) {
            int f = 0;
            for (int r : {cy - 1, cy, cy + 1})
                if (c.occupied({l.x + 3, r}) && !c.occupied({l.x + 3, r - 1})) f += 2;
            return f;
        };
        Box frame = expanded(c.bounding_box(), 2);
        for (size_t rounds = 0; rounds < 4 * l.metas.size() + 4; ++rounds) {
            int di = -1;
            for (size_t i = 0; i < l.metas.size(); ++i) {
                int cy = l.metas[i].center.y;
                if (band_occ(cy) < 8 + band_forced(cy)) {
                    di = (int)i;
                    break;
                }
            }
            if (di < 0) break;
            int dcy = l.metas[di].center.y;
            std::vector<Cell> dests;
            for (int r : {dcy, dcy - 1, dcy + 1}) {
                dests.push_back({l.x - 2, r});
                dests.push_back({l.x + 2, r});
            }
            std::vector<int> donors;
            for (size_t j = 0; j < l.metas.size(); ++j)
                if ((int)j != di) donors.push_back((int)j);
            std::sort(donors.begin(), donors.end(),
                      [&](int a, int b) { return std::abs(a - di) < std::abs(b - di); });
            bool done = false;
            for (int j : donors) {
                int cy = l.metas[j].center.y;
                if (band_occ(cy) - 8 - band_forced(cy) <= 0) continue;
                std::vector<Cell> srcs{{l.x, cy}};
                for (int r : {cy - 1, cy, cy + 1}) {
                    if (!c.occupied({l.x + 3, r})) srcs.push_back({l.x + 2, r});
                    srcs.push_back({l.x - 2, r});
                }
                for (const Cell& s : srcs) {
                    if (!c.occupied(s)) continue;
                    for (const Cell& d : dests) {
                        if (c.occupied(d)) continue;
                        auto mv = route_module(c, s, d, frame);
                        if (!mv) continue;
                        for (const Move& m : *mv) {
                            Transformation t{{m}};
                            VerifyResult vr = verify_transformation(c, t, &c);
                            if (!vr.ok)
                                throw std::runtime_error("advance: re-balance step failed: " +
                                                         vr.detail);
                            out.push_back(t);
                        }
                        done = true;
                        break;
                    }
                    if (done) break;
                }
                if (done) break;
            }
            if (!done) throw std::runtime_error("advance: cannot re-balance bands");
        }
    }
    for (int parity : {0, 1}) {
        std::vector<std::vector<Move>> plans;
        for (size_t i = 0; i < l.metas.size(); ++i) {
            if ((int)(i % 2) != parity) continue;
            plans.push_back(plan_band_advance(c, l.x, l.metas[i].center.y));
        }
        Schedule s = run_batch(c, std::move(plans), "advance");
        out.insert(out.end(), s.begin(), s.end());
    }
    SweepLine nl = l;
    nl.x -= 1;
    for (MetaModule& m : nl.metas) m.center.x -= 1;
    Schedule cl = clean(c, nl);
    out.insert(out.end(), cl.begin(), cl.end());
    std::string why;
    if (!sweepline_ok(c, nl, &why)) throw std::runtime_error("advance: " + why);
    return {std::move(out), std::move(nl)};
}

std::pair<Schedule, CellSet> finalize_scaled(Config& c, const SweepLine& l) {
    for (const Cell& p : c.cells())
        if (p.x <= l.x - 2)
            throw std::runtime_error("finalize_scaled: west half-space not empty");
    size_t n = c.size();
    int R = (int)(n % 9), b3 = (int)(n / 9);
    if (b3 == 0) throw std::runtime_error("finalize_scaled: fewer than nine modules");
    Box bb = c.bounding_box();
    auto snap3 = [](int v) {
        int lo = 3 * floor_div(v, 3);
        return (v - lo <= 1) ? lo : lo + 3;
    };
    int ax = snap3(l.x - 1), ay = snap3(bb.ymin);
    // Keep the block area inside the swept footprint: near-square when it
    // fits, wider when the footprint is shallow.
    int fitw = std::max(1, (bb.xmax + 1 - ax) / 3);
    int fith = std::max(1, (bb.ymax + 1 - ay) / 3);
    int w3 = std::clamp((int)std::ceil(std::sqrt((double)b3)), 1, fitw);
    if ((b3 + w3 - 1) / w3 > fith) w3 = std::max(w3, (b3 + fith - 1) / fith);
    int rows3 = (b3 + w3 - 1) / w3;
    CellSet target;
    for (int k = 0; k < b3; ++k) {
        int bx = ax + 3 * (k % w3), by = ay + 3 * (k / w3);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) target.insert({bx + i, by + j});
    }
    // Leftovers park in a column hugging the blocks' south-west corner.
    CellSet parked;
    {
        int col = ax - 1, y = ay, top = ay + 3 * rows3 - 1;
        for (int j = 0; j < R; ++j) {
            parked.insert({col, y});
            if (y == top) {
                --col;
                y = ay;
            } else {
                ++y;
            }
        }
    }
    for (const Cell& p : parked) target.insert(p);
    Box frame = expanded(Box::merge(bb, bounding_box(target)), 1);
    Config before = c;
    Schedule s = pack_parallel(before, reshape(c, target, frame));
    Config scaled_part = c;
    for (const Cell& p : parked) scaled_part.remove(p);
    if (!is_scaled(scaled_part, 3))
        throw std::runtime_error("finalize_scaled: result is not 3-scaled");
    return {std::move(s), std::move(parked)};
}

Phase3Result phase3(Config& c) {
    Box bb = c.bounding_box();
    Box inner = bb;
    inner.xmax -= 3;  // the Phase-II arm occupies the last three columns
    auto [s0, line] = arm_to_sweepline(c, inner);
    Phase3Result res;
    res.stream = std::move(s0);
    size_t guard = (size_t)bb.width() + 4;
    for (;;) {
        bool west = false;
        for (const Cell& p : c.cells())
            if (p.x <= line.x - 2) west = true;
        if (!west) break;
        if (res.advances >= guard) throw std::runtime_error("phase3: sweep failed to terminate");
        auto [s, nl] = advance(c, line);
        ++res.advances;
        res.max_advance = std::max(res.max_advance, s.size());
        res.stream.insert(res.stream.end(), s.begin(), s.end());
        line = std::move(nl);
    }
    auto [sf, parked] = finalize_scaled(c, line);
    res.stream.insert(res.stream.end(), sf.begin(), sf.end());
    res.parked = std::move(parked);
    return res;
}

}  // namespace sq

#include "squares/scaled.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <stdexcept>
#include <string>

namespace sq {

namespace {

int floor_div(int a, int b) { return a >= 0 ? a / b : -((-a + b - 1) / b); }

Cell rot3_ccw_times(Cell c, int times) {
    for (int i = 0; i < times; ++i) c = rot3_ccw(c);
    return c;
}

// Number of counter-clockwise quarter turns after which d becomes South.
int turns_to_south(Dir d) {
    int r = 0;
    while (d != Dir::S) {
        d = rot_ccw(d);
        ++r;
    }
    return r;
}

}  // namespace

// --- grid symmetry helpers ----------------------------------------------

Cell rot3_ccw(Cell c) { return {2 - c.y, c.x}; }
Cell rot3_cw(Cell c) { return {c.y, 2 - c.x}; }
Dir rot_ccw(Dir d) { return Dir(((int)d + 3) % 4); }
Dir rot_cw(Dir d) { return Dir(((int)d + 1) % 4); }

Config rotated3_ccw(const Config& c, int times) {
    times = ((times % 4) + 4) % 4;
    Config out(c.labeled());
    for (const Cell& cell : c.sorted_cells()) {
        Cell p = rot3_ccw_times(cell, times);
        if (c.labeled())
            out.add(p, c.label_at(cell));
        else
            out.add(p);
    }
    return out;
}

Move rotated3_ccw(const Move& m, int times) {
    times = ((times % 4) + 4) % 4;
    Move out = m;
    out.origin = rot3_ccw_times(m.origin, times);
    for (int i = 0; i < times; ++i) {
        out.d1 = rot_ccw(out.d1);
        out.d2 = rot_ccw(out.d2);
    }
    return out;
}

Schedule rotated3_ccw(const Schedule& s, int times) {
    Schedule out;
    out.reserve(s.size());
    for (const Transformation& t : s) {
        Transformation rt;
        rt.moves.reserve(t.moves.size());
        for (const Move& m : t.moves) rt.moves.push_back(rotated3_ccw(m, times));
        out.push_back(std::move(rt));
    }
    return out;
}

// --- scaling predicates and conversions ---------------------------------

bool is_scaled(const Config& c, int k) {
    if (k <= 0) return false;
    const CellSet& occ = c.cells();
    for (const Cell& cell : occ) {
        Cell a{floor_div(cell.x, k) * k, floor_div(cell.y, k) * k};
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j)
                if (!occ.count({a.x + i, a.y + j})) return false;
    }
    return true;
}

Config scale_up(const Config& c, int k) {
    if (k <= 0) throw std::invalid_argument("scale_up: k must be positive");
    Config out(false);
    for (const Cell& cell : c.cells())
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) out.add({cell.x * k + i, cell.y * k + j});
    return out;
}

Config scale_down(const Config& c, int k) {
    if (k <= 0 || !is_scaled(c, k))
        throw std::invalid_argument("scale_down: configuration is not k-scaled");
    Config out(false);
    for (const Cell& cell : c.cells())
        if (cell.x == floor_div(cell.x, k) * k && cell.y == floor_div(cell.y, k) * k)
            out.add({floor_div(cell.x, k), floor_div(cell.y, k)});
    return out;
}

bool is_histogram(const CellSet& cells, Dir base) {
    if (cells.empty()) return true;
    int r = turns_to_south(base);
    CellSet rc;
    rc.reserve(cells.size());
    for (const Cell& c : cells) rc.insert(rot3_ccw_times(c, r));
    Box bb = bounding_box(rc);
    std::map<int, std::array<int, 3>> cols;  // x -> {ymin, ymax, count}
    for (const Cell& c : rc) {
        auto it = cols.find(c.x);
        if (it == cols.end())
            cols[c.x] = {c.y, c.y, 1};
        else {
            it->second[0] = std::min(it->second[0], c.y);
            it->second[1] = std::max(it->second[1], c.y);
            ++it->second[2];
        }
    }
    for (const auto& [x, col] : cols)
        if (col[0] != bb.ymin || col[1] - col[0] + 1 != col[2]) return false;
    return true;
}

bool is_xy_monotone(const CellSet& cells) {
    if (cells.empty()) return true;
    Box bb = bounding_box(cells);
    for (const Cell& c : cells) {
        if (c.x > bb.xmin && !cells.count({c.x - 1, c.y})) return false;
        if (c.y > bb.ymin && !cells.count({c.x, c.y - 1})) return false;
    }
    return true;
}

std::vector<Strip> strips_of(const CellSet& cells) {
    std::map<int, std::array<std::vector<int>, 3>> cols;  // block column -> ys per offset
    for (const Cell& c : cells) {
        int bx = floor_div(c.x, 3);
        cols[bx][c.x - 3 * bx].push_back(c.y);
    }
    std::vector<Strip> out;
    for (auto& [bx, three] : cols) {
        for (auto& v : three) std::sort(v.begin(), v.end());
        if (three[0] != three[1] || three[1] != three[2])
            throw std::invalid_argument("strips_of: block column " + std::to_string(bx) +
                                        " is not three equal cell columns");
        const std::vector<int>& ys = three[0];
        size_t run = 0;
        for (size_t i = 1; i <= ys.size(); ++i) {
            if (i == ys.size() || ys[i] != ys[i - 1] + 1) {
                out.push_back({3 * bx, ys[run], ys[i - 1]});
                run = i;
            }
        }
    }
    return out;
}

// --- one-cell descent rounds --------------------------------------------

namespace {

// A unit of work inside one descent round: either a single corner move or a
// same-direction chain of slides, listed lowest cell first.  Chains may be
// cut during packing; the severed tail becomes a new job that inherits the
// dependants of the original.
struct Job {
    int strip = 0;
    int level = 0;  // 0 corner lead-in, 1 lead column, 2 far column,
                    // 3 lead column second pass, 4 top handover
    std::vector<Move> moves;
    int pred = -1;  // job that must be fully done in an earlier step
    bool done = false;
};

// Stretch a schedule to exactly `target` steps by repeatedly peeling a
// front move (one whose target is nobody's origin within the same step) off
// a parallel step into its own step; every candidate is replay-validated
// from `start` and must still end in `goal`.
void stretch_schedule(const Config& start, Schedule& steps, int target, const Config& goal) {
    while ((int)steps.size() < target) {
        bool split_done = false;
        for (size_t i = 0; i < steps.size() && !split_done; ++i) {
            if (steps[i].moves.size() < 2) continue;
            for (size_t mi = 0; mi < steps[i].moves.size() && !split_done; ++mi) {
                const Move& m = steps[i].moves[mi];
                bool front = true;
                for (size_t k = 0; k < steps[i].moves.size(); ++k)
                    if (k != mi && steps[i].moves[k].origin == m.target()) front = false;
                if (!front) continue;
                Schedule cand(steps.begin(), steps.begin() + i);
                Transformation first;
                first.moves = {m};
                Transformation rest = steps[i];
                rest.moves.erase(rest.moves.begin() + mi);
                cand.push_back(std::move(first));
                cand.push_back(std::move(rest));
                cand.insert(cand.end(), steps.begin() + i + 1, steps.end());
                if (verify_schedule(start, cand, &goal).ok) {
                    steps = std::move(cand);
                    split_done = true;
                }
            }
        }
        if (!split_done) throw std::logic_error("stretch_schedule: no step can be split");
    }
}

// Move every strip in `moving` down by one cell.  Each strip circulates its
// modules: the bottom lead-column module swings under the middle column, the
// middle column's cells stay put while its top module swings across to the
// lead column, and every other module slides south once (the lead column
// twice).  Steps are grown greedily and validated through the verifier; on
// rejection chains are split so that facing columns of adjacent strips keep
// static bridge cells.  When pad_to > 0 the finished round is stretched to
// exactly pad_to steps by peeling single moves off parallel steps.
void drop_round(Config& cfg, const std::vector<Strip>& moving, Schedule& out, int pad_to) {
    std::vector<Job> jobs;
    {
        const CellSet& occ = cfg.cells();
        auto contact = [&](int x, int ylo, int yhi) {
            for (int y = ylo; y <= yhi; ++y)
                if (occ.count({x, y})) return true;
            return false;
        };
        int nstrips = (int)moving.size();
        for (int si = 0; si < nstrips; ++si) {
            const Strip& s = moving[si];
            int b = s.ylo, t = s.yhi;
            if (t - b < 2) throw std::logic_error("drop_round: strip shorter than one block");
            bool wc = contact(s.x0 - 1, b, t), ec = contact(s.x0 + 3, b, t);
            bool lead_west = !wc || ec;  // lead column faces away from a lone neighbour
            int ls = lead_west ? s.x0 : s.x0 + 2;
            int os = lead_west ? s.x0 + 2 : s.x0;
            int mid = s.x0 + 1;
            Dir to_mid = lead_west ? Dir::E : Dir::W;
            Dir to_lead = lead_west ? Dir::W : Dir::E;
            int j0 = (int)jobs.size();
            jobs.push_back({si, 0, {convex({ls, b}, Dir::S, to_mid)}, -1});
            Job p1{si, 1, {}, j0};
            for (int y = b + 1; y <= t; ++y) p1.moves.push_back(slide({ls, y}, Dir::S));
            int j1 = (int)jobs.size();
            jobs.push_back(std::move(p1));
            Job far{si, 2, {}, j0};
            for (int y = b; y <= t; ++y) far.moves.push_back(slide({os, y}, Dir::S));
            jobs.push_back(std::move(far));
            Job p2{si, 3, {}, j1};
            for (int y = b; y <= t - 1; ++y) p2.moves.push_back(slide({ls, y}, Dir::S));
            int j3 = (int)jobs.size();
            jobs.push_back(std::move(p2));
            jobs.push_back({si, 4, {convex({mid, t}, to_lead, Dir::S)}, j3});
        }
    }
    int nstrips = std::max(1, (int)moving.size());

    Config round_start = cfg;
    std::vector<Transformation> steps;
    int pending = (int)jobs.size();

    auto ready = [&](int j) {
        return !jobs[j].done && (jobs[j].pred < 0 || jobs[jobs[j].pred].done);
    };

    int step = 0;
    while (pending > 0) {
        if (step > 16 * (int)jobs.size() + 16) throw std::logic_error("drop_round: no progress");
        Transformation t;
        std::vector<int> committed;
        auto in_committed = [&](int j) {
            return std::find(committed.begin(), committed.end(), j) != committed.end();
        };
        auto try_add = [&](int j, bool allow_split) -> bool {
            Transformation cand = t;
            cand.moves.insert(cand.moves.end(), jobs[j].moves.begin(), jobs[j].moves.end());
            if (verify_transformation(cfg, cand).ok) {
                t = std::move(cand);
                committed.push_back(j);
                return true;
            }
            if (!allow_split || jobs[j].moves.size() < 2) return false;
            for (int cut = (int)jobs[j].moves.size() - 1; cut >= 1; --cut) {
                Transformation part = t;
                part.moves.insert(part.moves.end(), jobs[j].moves.begin(),
                                  jobs[j].moves.begin() + cut);
                if (!verify_transformation(cfg, part).ok) continue;
                // Cut the chain: the packed front keeps the job slot, the
                // tail becomes a new job which the dependants now wait for.
                Job tail = jobs[j];
                tail.moves.assign(jobs[j].moves.begin() + cut, jobs[j].moves.end());
                tail.pred = j;
                jobs[j].moves.resize(cut);
                int tj = (int)jobs.size();
                for (int k = 0; k < tj; ++k)
                    if (k != j && jobs[k].pred == j) jobs[k].pred = tj;
                jobs.push_back(std::move(tail));
                ++pending;
                t = std::move(part);
                committed.push_back(j);
                return true;
            }
            return false;
        };

        bool progress = true;
        while (progress) {
            progress = false;
            std::vector<int> order;
            for (int j = 0; j < (int)jobs.size(); ++j)
                if (ready(j) && !in_committed(j)) order.push_back(j);
            std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
                if (jobs[a].level != jobs[b].level) return jobs[a].level < jobs[b].level;
                int ra = (jobs[a].strip + step) % nstrips, rb = (jobs[b].strip + step) % nstrips;
                return ra < rb;
            });
            for (int j : order)
                if (try_add(j, true)) {
                    progress = true;
                    break;
                }
        }

        if (t.moves.empty()) {
            // Nothing fits on its own; look for a pair of jobs whose cells
            // only keep the backbone connected when they leave together.
            std::vector<int> rd;
            for (int j = 0; j < (int)jobs.size(); ++j)
                if (ready(j)) rd.push_back(j);
            bool found = false;
            for (size_t a = 0; a < rd.size() && !found; ++a)
                for (size_t b = a + 1; b < rd.size() && !found; ++b) {
                    Transformation cand;
                    cand.moves = jobs[rd[a]].moves;
                    cand.moves.insert(cand.moves.end(), jobs[rd[b]].moves.begin(),
                                      jobs[rd[b]].moves.end());
                    if (verify_transformation(cfg, cand).ok) {
                        t = std::move(cand);
                        committed = {rd[a], rd[b]};
                        found = true;
                    }
                }
            if (!found) throw std::logic_error("drop_round: deadlocked");
        }

        Config next(false);
        VerifyResult vr = verify_transformation(cfg, t, &next);
        if (!vr.ok) throw std::logic_error("drop_round: packed step failed verification");
        cfg = next;
        for (int j : committed) {
            jobs[j].done = true;
            --pending;
        }
        steps.push_back(std::move(t));
        ++step;
    }

    if (pad_to > 0) stretch_schedule(round_start, steps, pad_to, cfg);
    out.insert(out.end(), steps.begin(), steps.end());
}

}  // namespace

Schedule translate_scaled(const Config& c, Dir d, int k) {
    if (k < 0) throw std::invalid_argument("translate_scaled: negative distance");
    if (!is_scaled(c)) throw std::invalid_argument("translate_scaled: input is not 3-scaled");
    if (k == 0 || c.empty()) return {};
    int r = turns_to_south(d);
    Config cur = rotated3_ccw(c, r);
    Schedule s;
    for (int i = 0; i < k; ++i) drop_round(cur, strips_of(cur.cells()), s, 6);
    return rotated3_ccw(s, (4 - r) % 4);
}

Schedule to_histogram(const Config& c, Dir base) {
    if (!is_scaled(c)) throw std::invalid_argument("to_histogram: input is not 3-scaled");
    if (c.empty()) return {};
    int r = turns_to_south(base);
    Config cur = rotated3_ccw(c, r);
    Schedule s;
    int guard = cur.bounding_box().height() + 4;
    for (;;) {
        std::vector<Strip> strips = strips_of(cur.cells());
        int ground = cur.bounding_box().ymin;
        std::vector<Strip> moving;
        for (const Strip& st : strips)
            if (st.ylo > ground) moving.push_back(st);
        if (moving.empty()) break;
        drop_round(cur, moving, s, 0);
        if (--guard < 0) throw std::logic_error("to_histogram: descent did not terminate");
    }
    return rotated3_ccw(s, (4 - r) % 4);
}

Schedule to_xy_monotone(const Config& c) {
    if (!is_scaled(c)) throw std::invalid_argument("to_xy_monotone: input is not 3-scaled");
    Config cur = c.silhouette();
    Schedule s;
    for (int pass = 0; pass < 12; ++pass) {
        if (is_histogram(cur.cells(), Dir::S) && is_histogram(cur.cells(), Dir::W)) {
            if (!is_xy_monotone(cur.cells()))
                throw std::logic_error("to_xy_monotone: histogram passes left a non-monotone set");
            return s;
        }
        Schedule part = to_histogram(cur, pass % 2 == 0 ? Dir::S : Dir::W);
        for (const Transformation& t : part) cur = apply(cur, t);
        s.insert(s.end(), part.begin(), part.end());
    }
    throw std::logic_error("to_xy_monotone: alternating passes did not converge");
}

// --- block tunnels between xy-monotone histograms ------------------------
//
// A tunnel moves the nine modules of one surplus block (the source) into
// one missing block (the sink) along an L of occupied blocks: down the
// source's block column, through a corner block, east along the sink's
// block row.  The lane through those blocks (middle column / middle row)
// acts as a conveyor: the source feeds its modules in at the back and the
// sink absorbs the front of the lane, so the duration is independent of
// the distance.  The sink is seeded by a corner move around the last lane
// block (which also provides the wall for the following straight entries);
// the source's matching corner cell leaves last, walling the exits of the
// other eight.

namespace {

// Per-entrant move lists that fill an empty block (local cells [0,2]^2)
// fed from the west through the lane cell (-1,1).  Entrant k of 9 stops at
// the k-th cell of the fill order; supports come from the western block's
// outer column, the seeded corner (0,0) and previously placed entrants.
std::vector<std::vector<Move>> fill_from_west() {
    std::vector<std::vector<Move>> r(9);
    r[0] = {convex({-1, 1}, Dir::E, Dir::S)};                                       // (0,0)
    r[1] = {slide({-1, 1}, Dir::E), convex({0, 1}, Dir::E, Dir::S)};                // (1,0)
    r[2] = {slide({-1, 1}, Dir::E), slide({0, 1}, Dir::E),
            convex({1, 1}, Dir::E, Dir::S)};                                        // (2,0)
    r[3] = {slide({-1, 1}, Dir::E), slide({0, 1}, Dir::E), slide({1, 1}, Dir::E)};  // (2,1)
    r[4] = {slide({-1, 1}, Dir::E), slide({0, 1}, Dir::E)};                         // (1,1)
    r[5] = {slide({-1, 1}, Dir::E), convex({0, 1}, Dir::N, Dir::E),
            slide({1, 2}, Dir::E)};                                                 // (2,2)
    r[6] = {slide({-1, 1}, Dir::E), convex({0, 1}, Dir::N, Dir::E)};                // (1,2)
    r[7] = {slide({-1, 1}, Dir::E), slide({0, 1}, Dir::N)};                         // (0,2)
    r[8] = {slide({-1, 1}, Dir::E)};                                                // (0,1)
    return r;
}

std::vector<Move> translated(const std::vector<Move>& ms, Cell delta) {
    std::vector<Move> out = ms;
    for (Move& m : out) m.origin = m.origin + delta;
    return out;
}

// Draining a block southward, one route per module in leaving order.  The
// middle column goes first, straight down into the lane (a same-direction
// chase the step packer executes as one chain).  The east column follows,
// each module swinging into the emptied middle column around the module
// below it; its bottom corner pivots on the block below straight into the
// lane.  The west column goes last, mirrored: its cells bridge the source
// to the blocks below while the lane is in flux, and the south-west corner
// doubles as the exit wall for the bottom-row moves before leaving.  All
// local to the block's south-west cell; the lane head is (1,-1).
std::vector<std::vector<Move>> drain_to_south() {
    std::vector<std::vector<Move>> r(9);
    r[0] = {slide({1, 0}, Dir::S)};
    r[1] = {slide({1, 1}, Dir::S), slide({1, 0}, Dir::S)};
    r[2] = {slide({1, 2}, Dir::S), slide({1, 1}, Dir::S), slide({1, 0}, Dir::S)};
    r[3] = {convex({2, 2}, Dir::W, Dir::S), slide({1, 1}, Dir::S), slide({1, 0}, Dir::S)};
    r[4] = {convex({2, 1}, Dir::W, Dir::S), slide({1, 0}, Dir::S)};
    r[5] = {convex({2, 0}, Dir::W, Dir::S)};
    r[6] = {convex({0, 2}, Dir::E, Dir::S), slide({1, 1}, Dir::S), slide({1, 0}, Dir::S)};
    r[7] = {convex({0, 1}, Dir::E, Dir::S), slide({1, 0}, Dir::S)};
    r[8] = {convex({0, 0}, Dir::E, Dir::S)};
    return r;
}

Dir dir_between(Cell a, Cell b) {
    for (Dir d : kDirs)
        if (a + dir_vec(d) == b) return d;
    throw std::logic_error("dir_between: cells not adjacent");
}

// One participating module's move list.  A gate blocks the move at index
// 'at' until agent 'agent' has executed at least 'count' moves: gates keep
// the source block's leaving order from being scrambled by faster routes,
// and hold each entrant at the lane's feeder cell until its follower is in
// place so the conveyor never runs dry (the lane doubles as the backbone
// bridge between the tunnel's endpoints).
struct FlowGate {
    int at;
    int agent;
    size_t count;
};

struct FlowAgent {
    std::vector<Move> moves;
    std::vector<FlowGate> gates;
};

// Complete move lists, one per participating module, for a tunnel from
// source block e to sink block d with d strictly to the south-east
// (d.x > e.x, d.y < e.y in block coordinates).  Lists are ordered
// front-most first so the greedy step packer lets leaders move before
// their chasers.
std::vector<FlowAgent> tunnel_agents_se(Cell e, Cell d) {
    if (d.x <= e.x || d.y >= e.y) throw std::logic_error("tunnel_agents_se: not south-east");
    std::vector<Cell> lane;
    for (int yy = e.y - 1; yy > d.y; --yy)
        for (int k : {2, 1, 0}) lane.push_back({3 * e.x + 1, 3 * yy + k});
    lane.push_back({3 * e.x + 1, 3 * d.y + 2});  // corner block: enter from the north,
    lane.push_back({3 * e.x + 1, 3 * d.y + 1});  // turn at the centre,
    lane.push_back({3 * e.x + 2, 3 * d.y + 1});  // leave east
    for (int xx = e.x + 1; xx < d.x; ++xx)
        for (int k : {0, 1, 2}) lane.push_back({3 * xx + k, 3 * d.y + 1});
    int m = (int)lane.size();

    Cell A{3 * e.x, 3 * e.y}, B{3 * d.x, 3 * d.y};
    std::vector<std::vector<Move>> fills = fill_from_west();   // relative to B
    std::vector<std::vector<Move>> drains = drain_to_south();  // relative to A

    auto lane_slides = [&](int from, int to) {  // [from, to) exclusive of arrival slides past 'to'
        std::vector<Move> out;
        for (int u = from; u < to; ++u) out.push_back(slide(lane[u], dir_between(lane[u], lane[u + 1])));
        return out;
    };

    std::vector<FlowAgent> agents;
    std::vector<int> approach;  // moves before the agent's own fill route
    // Lane modules, front (sink side) first; entrant number k = m - t.
    for (int t = m - 1; t >= 0; --t) {
        int k = m - t;
        std::vector<Move> mv;
        if (k <= 9) {
            mv = lane_slides(t, m - 1);  // advance to the feeder cell lane[m-1]
            approach.push_back((int)mv.size());
            const std::vector<Move>& f = translated(fills[k - 1], B);
            mv.insert(mv.end(), f.begin(), f.end());
        } else {
            mv = lane_slides(t, t + 9);  // shift forward by the total flux
            approach.push_back((int)mv.size());
        }
        agents.push_back({std::move(mv), {}});
    }
    // Source modules in drain order; module j lands on lane[0] and either
    // continues into the sink (entrant m + j) or stops at lane[9 - j].
    // Each is gated on its predecessor having begun.
    for (int j = 1; j <= 9; ++j) {
        std::vector<Move> mv = translated(drains[j - 1], A);
        if (m + j <= 9) {
            std::vector<Move> ls = lane_slides(0, m - 1);
            mv.insert(mv.end(), ls.begin(), ls.end());
            approach.push_back((int)mv.size());
            const std::vector<Move>& f = translated(fills[m + j - 1], B);
            mv.insert(mv.end(), f.begin(), f.end());
        } else {
            std::vector<Move> ls = lane_slides(0, 9 - j);
            mv.insert(mv.end(), ls.begin(), ls.end());
            approach.push_back((int)mv.size());
        }
        FlowAgent a{std::move(mv), {}};
        if (j >= 2) a.gates.push_back({0, m + j - 2, 1});
        agents.push_back(std::move(a));
    }
    // Entrant i+1 (agents are in flux order) may leave the feeder only once
    // the next module in the flux has marched to the cell behind it.
    for (int i = 0; i + 1 < (int)agents.size() && i < 9; ++i)
        if (approach[i + 1] > 1)
            agents[i].gates.push_back({approach[i], i + 1, (size_t)(approach[i + 1] - 1)});
    return agents;
}

// Blocks a south-east tunnel occupies (source, legs, corner, sink).
std::vector<Cell> tunnel_blocks_se(Cell e, Cell d) {
    std::vector<Cell> out{e, d, {e.x, d.y}};
    for (int yy = d.y + 1; yy < e.y; ++yy) out.push_back({e.x, yy});
    for (int xx = e.x + 1; xx < d.x; ++xx) out.push_back({xx, d.y});
    return out;
}

// North-west pairs are the same geometry reflected in the main diagonal:
// transposition swaps the axes, preserves down-left closure, and carries
// the occupied corner block (d.x, e.y) onto the south-east corner.
Move transposed(Move m) {
    std::swap(m.origin.x, m.origin.y);
    auto flip = [](Dir d) {
        switch (d) {
            case Dir::N: return Dir::E;
            case Dir::E: return Dir::N;
            case Dir::S: return Dir::W;
            default: return Dir::S;
        }
    };
    m.d1 = flip(m.d1);
    m.d2 = flip(m.d2);
    return m;
}

std::vector<FlowAgent> tunnel_agents(Cell e, Cell d) {
    bool nw = d.x < e.x;
    if (nw) {
        e = {e.y, e.x};
        d = {d.y, d.x};
    }
    std::vector<FlowAgent> ag = tunnel_agents_se(e, d);
    if (nw)
        for (auto& a : ag)
            for (Move& m : a.moves) m = transposed(m);
    return ag;
}

std::vector<Cell> tunnel_blocks(Cell e, Cell d) {
    bool nw = d.x < e.x;
    std::vector<Cell> out =
        nw ? tunnel_blocks_se({e.y, e.x}, {d.y, d.x}) : tunnel_blocks_se(e, d);
    if (nw)
        for (Cell& c : out) c = {c.y, c.x};
    return out;
}

// Run the given agents to completion against cfg: each step greedily packs
// every agent whose next move the verifier accepts alongside the moves
// already chosen, front-most agents first.  Same-direction chases pack into
// one step; a module entering a cell vacated orthogonally is rejected by
// the collision test and naturally waits a step, which is what throttles
// the corners.
Schedule run_flow(Config& cfg, const std::vector<FlowAgent>& agents) {
    std::vector<size_t> next(agents.size(), 0);
    Schedule steps;
    int guard = 200;
    for (;;) {
        bool any_left = false;
        for (size_t a = 0; a < agents.size(); ++a)
            if (next[a] < agents[a].moves.size()) any_left = true;
        if (!any_left) break;
        Transformation t;
        std::vector<size_t> movers;
        std::vector<char> moved(agents.size(), 0);
        auto eligible = [&](size_t a) {
            if (moved[a] || next[a] >= agents[a].moves.size()) return false;
            for (const FlowGate& g : agents[a].gates)
                if ((int)next[a] == g.at && next[g.agent] + (moved[g.agent] ? 1 : 0) < g.count)
                    return false;
            return true;
        };
        bool progress = true;
        while (progress) {
            progress = false;
            for (size_t a = 0; a < agents.size(); ++a) {
                if (!eligible(a)) continue;
                Transformation cand = t;
                cand.moves.push_back(agents[a].moves[next[a]]);
                if (verify_transformation(cfg, cand).ok) {
                    t = std::move(cand);
                    movers.push_back(a);
                    moved[a] = 1;
                    progress = true;
                    continue;
                }
                // A lone front module can be pinned as the sole bridge of
                // the backbone; moving it together with the chaser(s) that
                // refill its cell can still be legal.  Grow the chase chain
                // until some prefix verifies as a unit.
                std::vector<size_t> chain{a};
                while (chain.size() < 40) {
                    Cell want = agents[chain.back()].moves[next[chain.back()]].origin;
                    size_t b = agents.size();
                    for (size_t c = 0; c < agents.size(); ++c) {
                        if (!eligible(c)) continue;
                        if (std::find(chain.begin(), chain.end(), c) != chain.end()) continue;
                        if (agents[c].moves[next[c]].target() == want) {
                            b = c;
                            break;
                        }
                    }
                    if (b == agents.size()) break;
                    chain.push_back(b);
                    cand.moves.push_back(agents[b].moves[next[b]]);
                    if (verify_transformation(cfg, cand).ok) {
                        t = cand;
                        for (size_t c : chain) {
                            movers.push_back(c);
                            moved[c] = 1;
                        }
                        progress = true;
                        break;
                    }
                }
            }
        }
        if (t.moves.empty()) {
            std::string why = "run_flow: tunnel stalled; cfg:\n";
            {
                Box bb = cfg.bounding_box();
                for (int y = bb.ymax; y >= bb.ymin; --y) {
                    for (int x = bb.xmin; x <= bb.xmax; ++x)
                        why += cfg.occupied({x, y}) ? '#' : '.';
                    why += '\n';
                }
            }
            why += "pending:";
            for (size_t a = 0; a < agents.size(); ++a) {
                if (next[a] >= agents[a].moves.size()) continue;
                Transformation one;
                one.moves = {agents[a].moves[next[a]]};
                VerifyResult r = verify_transformation(cfg, one);
                why += "\n  agent " + std::to_string(a) + " move " + std::to_string(next[a]) +
                       "/" + std::to_string(agents[a].moves.size()) + " " +
                       agents[a].moves[next[a]].str() + " -> " + violation_name(r.kind) + " " +
                       r.detail + (eligible(a) ? "" : " [gated]");
            }
            throw std::logic_error(why);
        }
        Config nc(false);
        if (!verify_transformation(cfg, t, &nc).ok)
            throw std::logic_error("run_flow: packed step failed verification");
        cfg = nc;
        for (size_t a : movers) ++next[a];
        steps.push_back(std::move(t));
        if (--guard < 0) throw std::logic_error("run_flow: tunnel did not finish");
    }
    return steps;
}

int diag(Cell c) { return c.x + c.y; }

}  // namespace

Schedule histogram_to_histogram(const Config& c1, const Config& c2) {
    if (c1.size() != c2.size())
        throw std::invalid_argument("histogram_to_histogram: module counts differ");
    if (!is_scaled(c1) || !is_scaled(c2) || !is_xy_monotone(c1.cells()) ||
        !is_xy_monotone(c2.cells()))
        throw std::invalid_argument("histogram_to_histogram: inputs must be 3-scaled xy-monotone");
    Box b1 = c1.bounding_box(), b2 = c2.bounding_box();
    if (!b1.empty() && (b1.xmin != b2.xmin || b1.ymin != b2.ymin))
        throw std::invalid_argument("histogram_to_histogram: base corners differ");
    if (c1.silhouette().same_as(c2.silhouette())) return {};

    Config cfg = c1.silhouette();
    Config m2 = scale_down(c2);
    Schedule out;
    int guard = b1.perimeter() + b2.perimeter() + 16;
    for (;;) {
        Config m1 = scale_down(cfg);
        std::vector<Cell> deficits, excesses;
        for (const Cell& c : m2.sorted_cells())
            if (!m1.occupied(c)) deficits.push_back(c);
        for (const Cell& c : m1.sorted_cells())
            if (!m2.occupied(c)) excesses.push_back(c);
        if (deficits.empty()) break;
        int h1 = diag(deficits[0]), h2 = diag(excesses[0]);
        for (const Cell& c : deficits) h1 = std::min(h1, diag(c));
        for (const Cell& c : excesses) h2 = std::max(h2, diag(c));
        std::vector<Cell> D, E;
        for (const Cell& c : deficits)
            if (diag(c) == h1) D.push_back(c);
        for (const Cell& c : excesses)
            if (diag(c) == h2) E.push_back(c);
        auto by_x = [](Cell a, Cell b) { return a.x < b.x; };
        std::sort(D.begin(), D.end(), by_x);
        std::sort(E.begin(), E.end(), by_x);
        size_t q = std::min(D.size(), E.size());

        std::vector<char> done(q, 0);
        size_t remaining = q;
        while (remaining > 0) {
            CellSet used;
            std::vector<FlowAgent> agents;
            std::vector<size_t> chosen;
            for (size_t i = 0; i < q; ++i) {
                if (done[i]) continue;
                std::vector<Cell> blocks = tunnel_blocks(E[i], D[i]);
                bool clash = false;
                for (const Cell& b : blocks)
                    if (used.count(b)) clash = true;
                if (clash) continue;
                for (const Cell& b : blocks) used.insert(b);
                std::vector<FlowAgent> ag = tunnel_agents(E[i], D[i]);
                int base = (int)agents.size();
                for (auto& a : ag) {
                    for (FlowGate& g : a.gates) g.agent += base;
                    agents.push_back(std::move(a));
                }
                chosen.push_back(i);
            }
            if (chosen.empty())
                throw std::logic_error("histogram_to_histogram: empty tunnel batch");
            Config window_start = cfg;
            Schedule window = run_flow(cfg, agents);
            if ((int)window.size() < 18) stretch_schedule(window_start, window, 18, cfg);
            out.insert(out.end(), window.begin(), window.end());
            for (size_t i : chosen) {
                done[i] = 1;
                --remaining;
            }
        }
        if (--guard < 0)
            throw std::logic_error("histogram_to_histogram: matching did not converge");
    }
    return out;
}

Schedule solve_scaled(const Config& c1, const Config& c2) {
    if (c1.size() != c2.size()) throw std::invalid_argument("solve_scaled: module counts differ");
    if (!is_scaled(c1) || !is_scaled(c2))
        throw std::invalid_argument("solve_scaled: inputs must be 3-scaled");
    if (c1.silhouette().same_as(c2.silhouette())) return {};

    Schedule s1 = to_xy_monotone(c1);
    Config k1 = c1.silhouette();
    for (const Transformation& t : s1) k1 = apply(k1, t);
    Schedule s2 = to_xy_monotone(c2);
    Config k2 = c2.silhouette();
    for (const Transformation& t : s2) k2 = apply(k2, t);

    Schedule out = s1;
    // Align the canonical forms when the two corners differ: slide the whole
    // start-side form over, one axis at a time (offsets are multiples of 3).
    Box bk1 = k1.bounding_box(), bk2 = k2.bounding_box();
    for (auto [delta, pos, neg] : {std::tuple{bk2.xmin - bk1.xmin, Dir::E, Dir::W},
                                   std::tuple{bk2.ymin - bk1.ymin, Dir::N, Dir::S}}) {
        if (delta == 0) continue;
        Schedule tr = translate_scaled(k1, delta > 0 ? pos : neg, std::abs(delta));
        for (const Transformation& t : tr) k1 = apply(k1, t);
        out.insert(out.end(), tr.begin(), tr.end());
    }

    Schedule mid = histogram_to_histogram(k1, k2);
    out.insert(out.end(), mid.begin(), mid.end());
    Schedule back = reversed(s2);
    out.insert(out.end(), back.begin(), back.end());
    return out;
}

}  // namespace sq

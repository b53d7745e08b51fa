#include "squares/oracle.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <map>
#include <queue>
#include <stdexcept>

namespace sq {

namespace {

// --- independent legality ingredients -----------------------------------

// Time-sampled collision test: positions scaled by 2048 at t = k/1024.
int move_shape_id(const Move& m) {
    if (m.kind == MoveKind::Slide) return (int)m.d1;
    int pair = ((int)m.d2 - (int)m.d1 + 4) % 4 == 1 ? 0 : 1;  // d2 = d1+90 or d1-90
    return 4 + 2 * (int)m.d1 + pair;
}

bool sampled_collide_raw(const Move& a, const Move& b) {
    auto pos = [](const Move& m, int k) -> Cell {
        Cell p{m.origin.x * 2048, m.origin.y * 2048};
        Cell v1 = dir_vec(m.d1);
        if (m.kind == MoveKind::Slide) return {p.x + 2 * k * v1.x, p.y + 2 * k * v1.y};
        Cell v2 = dir_vec(m.d2);
        if (2 * k <= 1024) return {p.x + 4 * k * v1.x, p.y + 4 * k * v1.y};
        return {p.x + 2048 * v1.x + (4 * k - 2048) * v2.x,
                p.y + 2048 * v1.y + (4 * k - 2048) * v2.y};
    };
    if (linf_dist(a.origin, b.origin) > 3) return false;
    for (int k = 1; k <= 1024; ++k) {
        Cell pa = pos(a, k), pb = pos(b, k);
        if (std::abs(pa.x - pb.x) < 2048 && std::abs(pa.y - pb.y) < 2048) return true;
    }
    return false;
}

// Collision outcomes depend only on the relative placement and the two move
// shapes, so cache them (7 x 7 offsets, 12 x 12 shapes).
bool sampled_collide(const Move& a, const Move& b) {
    int dx = b.origin.x - a.origin.x, dy = b.origin.y - a.origin.y;
    if (std::abs(dx) > 3 || std::abs(dy) > 3) return false;
    static std::array<int8_t, 7 * 7 * 12 * 12> cache = [] {
        std::array<int8_t, 7 * 7 * 12 * 12> c;
        c.fill(-1);
        return c;
    }();
    int key = ((dx + 3) * 7 + (dy + 3)) * 144 + move_shape_id(a) * 12 + move_shape_id(b);
    if (cache[key] < 0) cache[key] = sampled_collide_raw(a, b) ? 1 : 0;
    return cache[key] == 1;
}

bool oracle_supported(const CellSet& statics, const Move& m) {
    Cell v1 = dir_vec(m.d1);
    if (m.kind == MoveKind::Slide) {
        if (statics.count(m.origin + v1)) return false;
        Cell left = dir_vec(Dir(((int)m.d1 + 3) % 4));
        Cell right = dir_vec(Dir(((int)m.d1 + 1) % 4));
        for (Cell side : {left, right})
            if (statics.count(m.origin + side) && statics.count(m.origin + side + v1)) return true;
        return false;
    }
    Cell v2 = dir_vec(m.d2);
    return statics.count(m.origin + v2) && !statics.count(m.origin + v1) &&
           !statics.count(m.origin + v1 + v2);
}

// Union-find connectivity over a cell set.
bool uf_connected(const std::vector<Cell>& cells) {
    if (cells.empty()) return false;
    std::map<Cell, int> index;
    for (size_t i = 0; i < cells.size(); ++i) index[cells[i]] = (int)i;
    std::vector<int> parent(cells.size());
    for (size_t i = 0; i < parent.size(); ++i) parent[i] = (int)i;
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (size_t i = 0; i < cells.size(); ++i) {
        for (const Cell& n : {cells[i] + Cell{1, 0}, cells[i] + Cell{0, 1}}) {
            auto it = index.find(n);
            if (it != index.end()) parent[find((int)i)] = find(it->second);
        }
    }
    int root = find(0);
    for (size_t i = 1; i < cells.size(); ++i)
        if (find((int)i) != root) return false;
    return true;
}

bool move_less(const Move& a, const Move& b) {
    if (a.origin != b.origin) return a.origin < b.origin;
    if (a.kind != b.kind) return a.kind < b.kind;
    if (a.d1 != b.d1) return a.d1 < b.d1;
    if (a.kind == MoveKind::Slide) return false;
    return a.d2 < b.d2;
}

bool transformation_less(const Transformation& a, const Transformation& b) {
    return std::lexicographical_compare(a.moves.begin(), a.moves.end(), b.moves.begin(),
                                        b.moves.end(), move_less);
}

}  // namespace

std::vector<Transformation> enumerate_transformations(const Config& c, size_t max_modules) {
    if (c.size() > max_modules)
        throw std::logic_error("enumerate_transformations: configuration too large");
    std::vector<Cell> cells = c.sorted_cells();
    const CellSet& occupied = c.cells();

    // Per-module move candidates.  Only the positive half of the support
    // template (wall / pivot present) can be pre-filtered: those modules
    // must exist in C and can only disappear from the static set as the
    // moving set grows.  Emptiness constraints go the other way (a blocker
    // may itself move), so they are left to the per-subset recheck.
    std::vector<std::vector<Move>> candidates(cells.size());
    for (size_t i = 0; i < cells.size(); ++i) {
        CellSet statics = occupied;
        statics.erase(cells[i]);
        for (const Move& m : all_moves_from(cells[i])) {
            Cell v1 = dir_vec(m.d1);
            bool maybe;
            if (m.kind == MoveKind::Slide) {
                maybe = false;
                for (int side : {1, 3}) {
                    Cell w = dir_vec(Dir(((int)m.d1 + side) % 4));
                    if (statics.count(m.origin + w) && statics.count(m.origin + w + v1))
                        maybe = true;
                }
            } else {
                maybe = statics.count(m.origin + dir_vec(m.d2)) != 0;
            }
            if (maybe) candidates[i].push_back(m);
        }
    }

    std::vector<Transformation> out;
    std::vector<Move> chosen;
    std::vector<size_t> chosen_idx;

    std::function<void(size_t)> rec = [&](size_t i) {
        if (i == cells.size()) {
            if (chosen.empty()) return;
            CellSet statics = occupied;
            for (const Move& m : chosen) statics.erase(m.origin);
            for (const Move& m : chosen)
                if (!oracle_supported(statics, m)) return;
            if (statics.empty() || !uf_connected(std::vector<Cell>(statics.begin(), statics.end())))
                return;
            Transformation t;
            t.moves = chosen;
            out.push_back(std::move(t));
            return;
        }
        rec(i + 1);  // module stays
        for (const Move& m : candidates[i]) {
            bool clash = false;
            for (const Move& prev : chosen)
                if (sampled_collide(m, prev)) {
                    clash = true;
                    break;
                }
            if (clash) continue;
            chosen.push_back(m);
            rec(i + 1);
            chosen.pop_back();
        }
    };
    rec(0);

    for (Transformation& t : out) std::sort(t.moves.begin(), t.moves.end(), move_less);
    std::sort(out.begin(), out.end(), transformation_less);
    return out;
}

namespace {

using Key = std::vector<Cell>;

// Normalise to the positive quadrant; returns the applied shift.
Key normalize(const CellSet& cells, Cell& shift) {
    Box b = bounding_box(cells);
    shift = {-b.xmin, -b.ymin};
    Key k;
    k.reserve(cells.size());
    for (const Cell& c : cells) k.push_back(c + shift);
    std::sort(k.begin(), k.end());
    return k;
}

}  // namespace

std::optional<MakespanResult> optimal_makespan(const Config& start, const Config& goal, int cap,
                                               int box_limit) {
    if (start.size() != goal.size()) return std::nullopt;
    Cell shift0, shiftg;
    Key s0 = normalize(start.cells(), shift0);
    Key sg = normalize(goal.cells(), shiftg);

    struct NodeInfo {
        int dist;
        Key parent;
        Transformation via;  // in the parent's normalised frame
        Cell step_shift;     // normalisation shift applied after 'via'
    };
    std::map<Key, NodeInfo> info;
    info[s0] = {0, {}, {}, {}};
    std::queue<Key> q;
    q.push(s0);

    while (!q.empty()) {
        Key cur = q.front();
        q.pop();
        const int d = info[cur].dist;
        if (cur == sg) {
            // Reconstruct the schedule in the start configuration's frame.
            Key k = cur;
            std::vector<std::pair<Transformation, Cell>> edges;
            while (info[k].dist > 0) {
                const NodeInfo& ni = info[k];
                edges.push_back({ni.via, ni.step_shift});
                k = ni.parent;
            }
            std::reverse(edges.begin(), edges.end());
            MakespanResult res;
            res.makespan = d;
            Cell off = shift0;  // normalised = absolute + off
            for (auto& [t, step_shift] : edges) {
                Transformation abs_t;
                for (Move m : t.moves) {
                    m.origin = m.origin - off;
                    abs_t.moves.push_back(m);
                }
                res.schedule.push_back(abs_t);
                off = off + step_shift;
            }
            return res;
        }
        if (d == cap) continue;

        Config cc(false);
        for (const Cell& c : cur) cc.add(c);
        for (const Transformation& t : enumerate_transformations(cc, 16)) {
            CellSet next = cc.cells();
            for (const Move& m : t.moves) next.erase(m.origin);
            bool bad = false;
            for (const Move& m : t.moves)
                if (!next.insert(m.target()).second) {
                    bad = true;
                    break;
                }
            if (bad) continue;
            Cell shift;
            Key nk = normalize(next, shift);
            Box nb = bounding_box(next);
            if (nb.width() > box_limit || nb.height() > box_limit) continue;
            if (info.count(nk)) continue;
            info[nk] = {d + 1, cur, t, shift};
            q.push(nk);
        }
    }
    return std::nullopt;
}

std::pair<Config, Config> worst_case_pair(int n) {
    if (n < 4) throw std::logic_error("worst_case_pair needs n >= 4");
    int a = (n + 1) / 2;        // vertical arm length (includes the corner)
    int b = n - a;              // horizontal arm length (corner excluded)
    int s = std::max(a, b + 1);  // box side length
    Config c1(false), c2(false);
    for (int j = 0; j < a; ++j) c1.add({0, j});
    for (int i = 1; i <= b; ++i) c1.add({i, 0});
    // Point reflection through the centre of the s x s box.
    for (const Cell& c : c1.sorted_cells()) c2.add({s - 1 - c.x, s - 1 - c.y});
    return {c1, c2};
}

}  // namespace sq

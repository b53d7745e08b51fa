#include "squares/gather.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <map>
#include <set>
#include <stdexcept>

#include "squares/verify.hpp"

namespace sq {

namespace {

Box expanded(Box b, int k) {
    b.xmin -= k;
    b.ymin -= k;
    b.xmax += k;
    b.ymax += k;
    return b;
}

std::string dump(const Config& c, const CellSet& target) {
    Box b = Box::merge(c.bounding_box(), bounding_box(target));
    std::string s;
    for (int y = b.ymax; y >= b.ymin; --y) {
        for (int x = b.xmin; x <= b.xmax; ++x) {
            Cell m{x, y};
            bool occ = c.occupied(m), tgt = target.count(m) != 0;
            s += occ ? (tgt ? '#' : 'o') : (tgt ? '.' : ' ');
        }
        s += '\n';
    }
    return s;
}

}  // namespace

// ---- Exoskeleton structure -----------------------------------------------

CellSet Exoskeleton::core_set() const { return CellSet(core.begin(), core.end()); }

std::vector<int> Exoskeleton::children(int i) const {
    std::vector<int> out;
    for (size_t j = 0; j < core.size(); ++j)
        if (parent[j] == i) out.push_back((int)j);
    return out;
}

bool Exoskeleton::is_leaf(int i) const {
    int deg = parent[i] >= 0 ? 1 : 0;
    for (size_t j = 0; j < core.size(); ++j)
        if (parent[j] == i) ++deg;
    return deg <= 1;
}

std::vector<Cell> Exoskeleton::leaf_cells() const {
    std::vector<Cell> out;
    for (size_t i = 0; i < core.size(); ++i)
        if (is_leaf((int)i)) out.push_back(core[i]);
    return out;
}

CellSet Exoskeleton::shell() const {
    CellSet leaves;
    for (const Cell& l : leaf_cells()) leaves.insert(l);
    CellSet cs = core_set();
    CellSet out;
    for (size_t i = 0; i < core.size(); ++i) {
        if (is_leaf((int)i)) continue;
        for (const Cell& n : neighbors8(core[i]))
            if (!cs.count(n) && !leaves.count(n)) out.insert(n);
    }
    return out;
}

int Exoskeleton::depth(int i) const {
    int d = 0;
    while (parent[i] >= 0) {
        i = parent[i];
        ++d;
    }
    return d;
}

bool exoskeleton_valid(const Config& c, const Exoskeleton& x, std::string* why) {
    auto fail = [&](std::string m) {
        if (why) *why = std::move(m);
        return false;
    };
    if (x.core.size() < 2) return fail("core smaller than two cells");
    if (x.core.size() != x.parent.size()) return fail("core/parent size mismatch");
    for (size_t i = 0; i < x.core.size(); ++i) {
        if (x.parent[i] >= (int)i) return fail("parents must precede children");
        if ((i == 0) != (x.parent[i] < 0)) return fail("exactly core[0] is the root");
        if (i > 0 && l1_dist(x.core[i], x.core[x.parent[i]]) != 1)
            return fail("core tree edge not unit length");
    }
    CellSet cs = x.core_set();
    if (cs.size() != x.core.size()) return fail("duplicate core cell");
    // Members occupied and within the closed neighborhood of the core.
    for (const Cell& m : x.members) {
        if (!c.occupied(m)) return fail("member not occupied at " + to_string(m));
        bool near = cs.count(m) != 0;
        for (const Cell& n : neighbors8(m))
            if (cs.count(n)) near = true;
        if (!near) return fail("member outside core neighborhood at " + to_string(m));
    }
    for (const Cell& l : x.leaf_cells())
        if (!c.occupied(l)) return fail("leaf not occupied at " + to_string(l));
    for (const Cell& s : x.shell())
        if (!c.occupied(s)) return fail("shell cell empty at " + to_string(s));
    for (size_t i = 0; i < x.core.size(); ++i)
        if (!c.occupied(x.core[i]) && ((x.depth((int)i) - x.arity) % 4 + 4) % 4 != 0)
            return fail("empty core cell at bad depth: " + to_string(x.core[i]));
    return true;
}

// ---- transport engine ----------------------------------------------------

std::optional<std::vector<Move>> route_module(const Config& c, Cell from, Cell to,
                                              const Box& frame) {
    if (!c.occupied(from) || c.occupied(to)) return std::nullopt;
    if (!frame.contains(from) || !frame.contains(to)) return std::nullopt;
    CellSet statics = c.cells();
    statics.erase(from);
    if (statics.empty() || !is_connected(statics)) return std::nullopt;

    std::map<Cell, Move> via;  // position -> move that reached it
    std::deque<Cell> q{from};
    via.emplace(from, Move{});
    while (!q.empty()) {
        Cell p = q.front();
        q.pop_front();
        if (p == to) break;
        for (const Move& m : all_moves_from(p)) {
            Cell t = m.target();
            if (!frame.contains(t) || via.count(t)) continue;
            if (!move_supported(statics, m)) continue;
            via.emplace(t, m);
            q.push_back(t);
        }
    }
    if (!via.count(to)) return std::nullopt;
    std::vector<Move> path;
    for (Cell p = to; p != from;) {
        Move m = via.at(p);
        path.push_back(m);
        p = m.origin;
    }
    std::reverse(path.begin(), path.end());
    return path;
}

Schedule reshape(Config& c, const CellSet& target, const Box& frame, const CellSet* movable) {
    if (c.size() != target.size())
        throw std::invalid_argument("reshape: configuration and target sizes differ");
    Schedule out;
    size_t guard = 4 * c.size() + 64;
    for (;;) {
        std::vector<Cell> missing;
        for (const Cell& t : sorted_cells(target))
            if (!c.occupied(t)) missing.push_back(t);
        if (missing.empty()) break;
        if (guard-- == 0) throw std::runtime_error("reshape: no progress\n" + dump(c, target));

        // Empty cells reachable from the frame boundary, optionally with one
        // extra cell treated as blocked.
        auto reach = [&](const Cell* extra) {
            CellSet open;
            std::deque<Cell> q;
            auto seed = [&](Cell p) {
                if (!c.occupied(p) && (!extra || p != *extra) && open.insert(p).second)
                    q.push_back(p);
            };
            for (int x = frame.xmin; x <= frame.xmax; ++x) {
                seed({x, frame.ymin});
                seed({x, frame.ymax});
            }
            for (int y = frame.ymin; y <= frame.ymax; ++y) {
                seed({frame.xmin, y});
                seed({frame.xmax, y});
            }
            while (!q.empty()) {
                Cell p = q.front();
                q.pop_front();
                for (const Cell& n : neighbors4(p))
                    if (frame.contains(n) && !c.occupied(n) && (!extra || n != *extra) &&
                        open.insert(n).second)
                        q.push_back(n);
            }
            return open;
        };
        CellSet open0 = reach(nullptr);

        // Destination candidates: adjacent to the current configuration,
        // boundary-reachable, and not sealing off any other reachable
        // missing cell.
        auto seals_pocket = [&](const Cell& t) {
            CellSet open = reach(&t);
            for (const Cell& m : missing)
                if (m != t && open0.count(m) && !open.count(m)) return true;
            return false;
        };
        std::vector<Cell> dests;
        for (const Cell& t : missing) {
            bool adj = false;
            for (const Cell& n : neighbors4(t))
                if (c.occupied(n)) adj = true;
            if (adj && open0.count(t) && !seals_pocket(t)) dests.push_back(t);
            if (dests.size() >= 5) break;
        }

        bool placed = false;
        for (const Cell& t : dests) {
            // Sources: relocatable modules off the target shape whose removal
            // keeps the backbone connected, distant ones first.
            std::vector<Cell> sources;
            for (const Cell& s : c.sorted_cells()) {
                if (target.count(s)) continue;
                if (movable && !movable->count(s)) continue;
                CellSet rest = c.cells();
                rest.erase(s);
                if (!rest.empty() && is_connected(rest)) sources.push_back(s);
            }
            std::stable_sort(sources.begin(), sources.end(), [&](const Cell& a, const Cell& b) {
                return l1_dist(a, t) > l1_dist(b, t);
            });
            int tries = 0;
            for (const Cell& s : sources) {
                if (++tries > 30) break;
                if (auto path = route_module(c, s, t, frame)) {
                    for (const Move& m : *path) {
                        out.push_back(Transformation{{m}});
                        c = apply(c, out.back());
                    }
                    placed = true;
                    break;
                }
            }
            if (placed) break;
        }
        if (!placed) {
            // Interior cavities are unreachable by surface walks: slide an
            // adjacent module into the hole, migrating the cavity outwards
            // until it surfaces.  The module moved may sit on a target cell.
            std::map<Cell, int> depth;  // distance to the open region
            {
                std::deque<Cell> q;
                for (const Cell& p : open0) depth[p] = 0, q.push_back(p);
                while (!q.empty()) {
                    Cell p = q.front();
                    q.pop_front();
                    for (const Cell& n : neighbors4(p))
                        if (frame.contains(n) && !depth.count(n)) {
                            depth[n] = depth[p] + 1;
                            q.push_back(n);
                        }
                }
            }
            for (const Cell& t : missing) {
                if (open0.count(t)) continue;
                std::array<Cell, 4> tn = neighbors4(t);
                std::vector<Cell> cands(tn.begin(), tn.end());
                std::stable_sort(cands.begin(), cands.end(), [&](const Cell& a, const Cell& b) {
                    auto ia = depth.find(a), ib = depth.find(b);
                    int da = ia == depth.end() ? 1 << 20 : ia->second;
                    int db = ib == depth.end() ? 1 << 20 : ib->second;
                    return da < db;
                });
                for (const Cell& s : cands) {
                    // Only accept a donor strictly closer to the surface, so
                    // the cavity makes monotone progress outwards.
                    if (!depth.count(s) || !depth.count(t) || depth[s] >= depth[t]) continue;
                    if (!c.occupied(s)) continue;
                    if (movable && !movable->count(s)) continue;
                    CellSet rest = c.cells();
                    rest.erase(s);
                    if (rest.empty() || !is_connected(rest)) continue;
                    for (const Move& m : all_moves_from(s)) {
                        if (m.kind != MoveKind::Slide || m.target() != t) continue;
                        if (!move_supported(rest, m)) continue;
                        out.push_back(Transformation{{m}});
                        c = apply(c, out.back());
                        placed = true;
                        break;
                    }
                    if (placed) break;
                }
                if (placed) break;
            }
        }
        if (!placed)
            throw std::runtime_error("reshape: stuck (frame " + to_string(Cell{frame.xmin, frame.ymin}) +
                                     ".." + to_string(Cell{frame.xmax, frame.ymax}) + ")\n" +
                                     dump(c, target));
    }
    return out;
}

Schedule pack_parallel(const Config& start, const Schedule& singles) {
    Schedule out;
    Config base = start;  // configuration before the pending transformation
    Transformation pend;
    for (const Transformation& step : singles) {
        if (!pend.moves.empty()) {
            Transformation merged = pend;
            merged.moves.insert(merged.moves.end(), step.moves.begin(), step.moves.end());
            if (verify_transformation(base, merged).ok) {
                pend = std::move(merged);
                continue;
            }
            out.push_back(pend);
            base = apply(base, pend);
        }
        pend = step;
    }
    if (!pend.moves.empty()) out.push_back(pend);
    return out;
}

// ---- canonical target shape ----------------------------------------------

CellSet comb_blob(size_t n, const Box& b) {
    if (n < 9) throw std::invalid_argument("comb_blob: need at least 9 modules");
    int bw = std::max(b.width(), 1), bh = std::max(b.height(), 1);
    auto up3 = [](int v) { return ((v + 2) / 3) * 3; };
    int wfit = up3(bw);
    int wpref = up3((int)std::ceil(std::sqrt((double)n)));
    int wmin = up3(((int)n + bh - 1) / bh);
    int w = std::clamp(std::max(wpref, wmin), 3, std::max(3, wfit));
    while (w > 3 && (int)n < 3 * w) w -= 3;  // keep at least three full rows
    int q = (int)n / w, r = (int)n % w;
    CellSet out;
    for (int i = 0; i < q; ++i)
        for (int x = 0; x < w; ++x) out.insert({b.xmin + x, b.ymin + i});
    for (int x = 0; x < r; ++x) out.insert({b.xmin + x, b.ymin + q});
    return out;
}

Exoskeleton comb_exoskeleton(const CellSet& blob) {
    Box bb = bounding_box(blob);
    int w = bb.width();
    size_t n = blob.size();
    int q = (int)n / w, r = (int)n % w;
    if (q < 3 || w % 3 != 0)
        throw std::invalid_argument("comb_exoskeleton: malformed blob");
    Exoskeleton x;
    x.members = blob;
    x.arity = 0;
    // Spine: the second row, west to east, rooted at its west end.
    for (int i = 0; i < w; ++i) {
        x.core.push_back({bb.xmin + i, bb.ymin + 1});
        x.parent.push_back(i - 1);
    }
    // Teeth: middle column of every three-column group, as high as a full
    // ring of neighbors allows.
    for (int j = 0; 3 * j < w; ++j) {
        int cx = bb.xmin + 3 * j + 1;
        bool covered = r > 3 * j;  // partial row reaches this group
        int top = bb.ymin + (covered ? q - 1 : q - 2);
        int prev = 3 * j + 1;  // spine index under the tooth
        for (int y = bb.ymin + 2; y <= top; ++y) {
            x.core.push_back({cx, y});
            x.parent.push_back(prev);
            prev = (int)x.core.size() - 1;
        }
    }
    return x;
}

// ---- local operations ----------------------------------------------------

Schedule base_case_compact(Config& c, const std::vector<Cell>& cluster, Cell center,
                           const Box& frame) {
    if (cluster.size() > 9)
        throw std::invalid_argument("base_case_compact: more than nine modules");
    CellSet members(cluster.begin(), cluster.end());
    CellSet target;
    for (const Cell& m : c.cells())
        if (!members.count(m)) target.insert(m);
    for (int dx = -1; dx <= 1; ++dx)
        for (int dy = -1; dy <= 1; ++dy) target.insert(center + Cell{dx, dy});
    if (target.size() != c.size())
        throw std::invalid_argument("base_case_compact: target square not free");
    Config before = c;
    Schedule s = pack_parallel(before, reshape(c, target, frame, &members));
    if (s.size() > 32)
        throw std::runtime_error("base_case_compact: exceeded 32 transformations");
    return s;
}

std::pair<Schedule, Exoskeleton> make_seed_exoskeleton(Config& c, Cell center, const Box& frame) {
    if (c.size() < 9)
        throw std::invalid_argument("make_seed_exoskeleton: need at least nine modules");
    std::vector<Cell> cells = c.sorted_cells();
    std::stable_sort(cells.begin(), cells.end(), [&](const Cell& a, const Cell& b) {
        return l1_dist(a, center) < l1_dist(b, center);
    });
    cells.resize(9);
    Schedule s = base_case_compact(c, cells, center, frame);
    Exoskeleton x;
    x.core = {center, center + Cell{0, 1}};
    x.parent = {-1, 0};
    x.arity = 0;
    for (int dx = -1; dx <= 1; ++dx)
        for (int dy = -1; dy <= 1; ++dy) x.members.insert(center + Cell{dx, dy});
    std::string why;
    if (!exoskeleton_valid(c, x, &why))
        throw std::runtime_error("make_seed_exoskeleton: " + why);
    return {std::move(s), std::move(x)};
}

Schedule inchworm_push(Config& c, const Exoskeleton& x, Cell d, Cell child, Cell e) {
    (void)x;
    if (!c.occupied(child) || c.occupied(e))
        throw std::runtime_error("push not applicable");
    // Path through occupied ring cells around d, from child to e.  Diagonal
    // steps must be executable as convex transitions: one shared orthogonal
    // neighbor occupied (the pivot), the other empty (the swept cell).
    std::array<Cell, 8> n8 = neighbors8(d);
    std::vector<Cell> ring(n8.begin(), n8.end());
    auto find_path = [&](bool diagonals) -> std::vector<Cell> {
        std::map<Cell, Cell> via;
        std::deque<Cell> q{child};
        via.emplace(child, child);
        while (!q.empty()) {
            Cell p = q.front();
            q.pop_front();
            if (p == e) break;
            for (const Cell& n : ring) {
                if (via.count(n) || linf_dist(p, n) != 1) continue;
                if (n != e && !c.occupied(n)) continue;
                Cell delta = n - p;
                if (std::abs(delta.x) + std::abs(delta.y) == 2) {
                    if (!diagonals) continue;
                    Cell s1 = p + Cell{delta.x, 0}, s2 = p + Cell{0, delta.y};
                    if (c.occupied(s1) == c.occupied(s2)) continue;
                }
                via.emplace(n, p);
                q.push_back(n);
            }
        }
        std::vector<Cell> path;
        if (!via.count(e)) return path;
        for (Cell p = e;; p = via.at(p)) {
            path.push_back(p);
            if (p == child) break;
        }
        std::reverse(path.begin(), path.end());  // child ... e
        return path;
    };

    // Turn a path into a verified schedule of at most two transformations:
    // front modules move first, the tail follows once the front has cleared.
    auto attempt = [&](const std::vector<Cell>& path) -> std::optional<Schedule> {
        if (path.size() < 2) return std::nullopt;
        std::vector<Move> chain;
        for (size_t i = 0; i + 1 < path.size(); ++i) {
            Cell a = path[i], b = path[i + 1], delta = b - a;
            if (std::abs(delta.x) + std::abs(delta.y) == 1) {
                for (Dir dd : kDirs)
                    if (dir_vec(dd) == delta) chain.push_back(slide(a, dd));
            } else {
                bool made = false;
                for (Dir d1 : kDirs)
                    for (Dir d2 : kDirs) {
                        if (!perpendicular(d1, d2) || made) continue;
                        if (dir_vec(d1) + dir_vec(d2) != delta) continue;
                        if (c.occupied(a + dir_vec(d2)) && !c.occupied(a + dir_vec(d1))) {
                            chain.push_back(convex(a, d1, d2));
                            made = true;
                        }
                    }
                if (!made) return std::nullopt;
            }
        }
        std::reverse(chain.begin(), chain.end());  // front of the chain first
        Transformation t1;
        size_t taken = 0;
        for (const Move& m : chain) {
            Transformation grown = t1;
            grown.moves.push_back(m);
            if (!verify_transformation(c, grown).ok) break;
            t1 = std::move(grown);
            ++taken;
        }
        if (taken == 0) return std::nullopt;
        Schedule out{t1};
        Config work;
        verify_transformation(c, t1, &work);
        if (taken < chain.size()) {
            Transformation t2;
            t2.moves.assign(chain.begin() + (long)taken, chain.end());
            if (!verify_transformation(work, t2, &work).ok) return std::nullopt;
            out.push_back(t2);
        }
        if (!work.occupied(e) || work.occupied(child)) return std::nullopt;
        c = std::move(work);
        return out;
    };

    for (bool diagonals : {false, true}) {
        std::vector<Cell> path = find_path(diagonals);
        if (auto s = attempt(path)) return *s;
    }
    throw std::runtime_error("push not applicable");
}

Schedule inchworm_pull(Config& c, Exoskeleton& x, std::optional<Cell> protect) {
    Schedule out;
    auto core_index = [&](const Cell& p) {
        for (size_t i = 0; i < x.core.size(); ++i)
            if (x.core[i] == p) return (int)i;
        return -1;
    };
    std::set<int> protected_chain;  // ancestors of the protected cell
    if (protect) {
        int i = core_index(*protect);
        while (i >= 0) {
            protected_chain.insert(i);
            i = x.parent[i];
        }
    }
    for (int stage = 1; stage <= 4; ++stage) {
        // Select, for every empty core cell, one occupied child at the
        // stage's depth class.
        std::vector<std::pair<int, int>> pulls;  // (empty cell, chosen child)
        for (size_t i = 0; i < x.core.size(); ++i) {
            if (c.occupied(x.core[i])) continue;
            int chosen = -1;
            for (int k : x.children((int)i)) {
                if (!c.occupied(x.core[k])) continue;
                if (x.depth(k) % 4 != stage % 4) continue;
                if (chosen < 0 || (protected_chain.count(chosen) && !protected_chain.count(k)))
                    chosen = k;
            }
            if (chosen >= 0) pulls.push_back({(int)i, chosen});
        }
        if (pulls.empty()) continue;
        Transformation t;
        for (auto [p, q] : pulls) {
            Cell delta = x.core[p] - x.core[q];
            for (Dir dd : kDirs)
                if (dir_vec(dd) == delta) t.moves.push_back(slide(x.core[q], dd));
        }
        VerifyResult r = verify_transformation(c, t, &c);
        if (!r.ok) throw std::runtime_error("inchworm_pull: illegal stage: " + r.detail);
        out.push_back(t);
        std::vector<Cell> emptied_leaves;
        for (auto [p, q] : pulls) {
            x.members.insert(x.core[p]);
            x.members.erase(x.core[q]);
            if (x.is_leaf(q) && !c.occupied(x.core[q])) emptied_leaves.push_back(x.core[q]);
        }

        // Emptied leaves refill from a tail module or shrink the core.
        for (const Cell& leaf : emptied_leaves) {
            CellSet cs = x.core_set();
            CellSet shell = x.shell();
            bool refilled = false;
            for (const Cell& n : neighbors8(leaf)) {
                if (!c.occupied(n) || cs.count(n) || shell.count(n)) continue;
                CellSet rest = c.cells();
                rest.erase(n);
                if (rest.empty() || !is_connected(rest)) continue;
                auto path = route_module(c, n, leaf, expanded(c.bounding_box(), 1));
                if (!path || path->size() > 2) continue;
                for (const Move& m : *path) {
                    out.push_back(Transformation{{m}});
                    c = apply(c, out.back());
                }
                x.members.erase(n);
                x.members.insert(leaf);
                refilled = true;
                break;
            }
            if (refilled) continue;
            // No tail: prune the leaf from the core.
            int qi = core_index(leaf);
            if (qi < 0) continue;
            std::vector<Cell> nc;
            std::vector<int> np;
            std::vector<int> remap(x.core.size(), -1);
            for (size_t i = 0; i < x.core.size(); ++i) {
                if ((int)i == qi) continue;
                remap[i] = (int)nc.size();
                nc.push_back(x.core[i]);
                np.push_back(x.parent[i] < 0 ? -1 : remap[x.parent[i]]);
            }
            x.core = std::move(nc);
            x.parent = std::move(np);
        }
    }
    return out;
}

// ---- gather --------------------------------------------------------------

std::pair<Schedule, Exoskeleton> gather(Config& c, const Skeleton& s, int node) {
    // Modules of the subskeleton: subtree cells plus supported modules.
    std::set<int> sub;
    std::deque<int> q{node};
    while (!q.empty()) {
        int u = q.front();
        q.pop_front();
        sub.insert(u);
        for (int k : s.nodes[u].children) q.push_back(k);
    }
    CellSet members;
    for (int u : sub)
        for (const Cell& m : s.nodes[u].cells) members.insert(m);
    for (const auto& [mod, supp] : s.support)
        if (sub.count(s.node_of.at(supp))) members.insert(mod);
    if (members.size() < 9)
        throw std::invalid_argument("gather: subskeleton holds fewer than nine modules");

    CellSet blob = comb_blob(members.size(), bounding_box(members));
    CellSet target = blob;
    for (const Cell& m : c.cells())
        if (!members.count(m)) {
            if (blob.count(m))
                throw std::runtime_error("gather: target region obstructed by outside modules");
            target.insert(m);
        }
    Box frame = expanded(Box::merge(c.bounding_box(), bounding_box(blob)), 1);
    Config before = c;
    Schedule stream = pack_parallel(before, reshape(c, target, frame, &members));
    Exoskeleton x = comb_exoskeleton(blob);
    std::string why;
    if (!exoskeleton_valid(c, x, &why)) throw std::runtime_error("gather: " + why);
    return {std::move(stream), std::move(x)};
}

std::pair<Schedule, Exoskeleton> phase1(Config& c) {
    if (c.size() < 9) throw std::invalid_argument("phase1: need at least nine modules");
    Skeleton s = compute_skeleton(c);
    return gather(c, s, s.root);
}

}  // namespace sq

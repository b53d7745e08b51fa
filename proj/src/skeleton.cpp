#include "squares/skeleton.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>
#include <stdexcept>

namespace sq {

namespace {

const Cell kSteps[4] = {{0, 1}, {1, 0}, {0, -1}, {-1, 0}};

std::vector<Cell> sorted(const CellSet& s) {
    std::vector<Cell> v(s.begin(), s.end());
    std::sort(v.begin(), v.end());
    return v;
}

int num_components(const CellSet& s) {
    CellSet seen;
    int comps = 0;
    for (const Cell& start : s) {
        if (!seen.insert(start).second) continue;
        ++comps;
        std::deque<Cell> q{start};
        while (!q.empty()) {
            Cell c = q.front();
            q.pop_front();
            for (const Cell& d : kSteps) {
                Cell n = c + d;
                if (s.count(n) && seen.insert(n).second) q.push_back(n);
            }
        }
    }
    return comps;
}

bool connected(const CellSet& s) { return num_components(s) == 1; }

bool dominates(const Config& c, const CellSet& s) {
    for (const Cell& m : c.cells()) {
        if (s.count(m)) continue;
        bool adj = false;
        for (const Cell& d : kSteps)
            if (s.count(m + d)) adj = true;
        if (!adj) return false;
    }
    return true;
}

// Biconnected components of the dual graph of s, as edge lists.
std::vector<std::vector<std::pair<Cell, Cell>>> biconnected_components(const CellSet& s) {
    std::map<Cell, int> num, low;
    std::vector<std::pair<Cell, Cell>> stack;
    std::vector<std::vector<std::pair<Cell, Cell>>> comps;
    int counter = 0;
    std::function<void(Cell, Cell, bool)> dfs = [&](Cell u, Cell parent, bool has_parent) {
        num[u] = low[u] = counter++;
        for (const Cell& d : kSteps) {
            Cell v = u + d;
            if (!s.count(v)) continue;
            if (!num.count(v)) {
                stack.push_back({u, v});
                dfs(v, u, true);
                low[u] = std::min(low[u], low[v]);
                if (low[v] >= num[u]) {
                    comps.emplace_back();
                    for (;;) {
                        auto e = stack.back();
                        stack.pop_back();
                        comps.back().push_back(e);
                        if (e.first == u && e.second == v) break;
                    }
                }
            } else if ((!has_parent || v != parent) && num[v] < num[u]) {
                stack.push_back({u, v});
                low[u] = std::min(low[u], num[v]);
            }
        }
    };
    for (const Cell& c : sorted(s))
        if (!num.count(c)) dfs(c, c, false);
    return comps;
}

std::vector<Cell> comp_vertices(const std::vector<std::pair<Cell, Cell>>& edges) {
    std::set<Cell> v;
    for (auto& e : edges) {
        v.insert(e.first);
        v.insert(e.second);
    }
    return {v.begin(), v.end()};
}

bool is_square_comp(const std::vector<std::pair<Cell, Cell>>& edges) {
    if (edges.size() != 4) return false;
    std::vector<Cell> v = comp_vertices(edges);
    if (v.size() != 4) return false;
    // Sorted order of a 2x2 square anchored at v[0].
    Cell a = v[0];
    return v[1] == a + Cell{0, 1} && v[2] == a + Cell{1, 0} && v[3] == a + Cell{1, 1};
}

struct Badness {
    long long bad_comps = 0;    // components that are neither bridges nor squares
    long long shared = 0;       // cells lying on two 2x2 square components
    long long cyclomatic = 0;   // independent cycles
    long long size = 0;
    long long edges = 0;
    bool operator<(const Badness& o) const {
        return std::tie(bad_comps, shared, cyclomatic, size, edges) <
               std::tie(o.bad_comps, o.shared, o.cyclomatic, o.size, o.edges);
    }
};

// Also reports the cells of one offending structure (a non-square cyclic
// component, or the union of two intersecting squares) if any.
Badness measure(const CellSet& s, std::vector<Cell>* offending) {
    Badness b;
    b.size = (long long)s.size();
    auto comps = biconnected_components(s);
    std::vector<std::vector<Cell>> squares;
    std::vector<Cell> bad_cells;
    for (auto& comp : comps) {
        b.edges += (long long)comp.size();
        if (comp.size() == 1) continue;
        if (is_square_comp(comp)) {
            squares.push_back(comp_vertices(comp));
        } else {
            ++b.bad_comps;
            if (bad_cells.empty()) bad_cells = comp_vertices(comp);
        }
    }
    std::vector<Cell> shared_cells;
    std::map<Cell, int> square_count;
    for (auto& sq : squares)
        for (const Cell& v : sq) ++square_count[v];
    for (auto& [cell, cnt] : square_count)
        if (cnt >= 2) {
            ++b.shared;
            if (shared_cells.empty()) {
                std::set<Cell> u;
                for (auto& sq : squares)
                    if (std::find(sq.begin(), sq.end(), cell) != sq.end())
                        u.insert(sq.begin(), sq.end());
                shared_cells.assign(u.begin(), u.end());
            }
        }
    b.cyclomatic = b.edges - b.size + num_components(s);
    if (offending) {
        if (!bad_cells.empty())
            *offending = bad_cells;
        else
            *offending = shared_cells;
    }
    return b;
}

bool acceptable(const Config& c, const CellSet& s) {
    return !s.empty() && connected(s) && dominates(c, s);
}

// Local repair: while the dual graph has a long cycle or two intersecting
// squares, try removals and bounded swaps around the offending structure,
// committing the first candidate that keeps the skeleton valid and strictly
// decreases the badness measure.
void repair(const Config& c, CellSet& s) {
    int guard = 20 * (int)c.size() + 50;
    for (;;) {
        std::vector<Cell> off;
        Badness cur = measure(s, &off);
        if (cur.bad_comps == 0 && cur.shared == 0) return;
        if (--guard < 0) throw std::logic_error("compute_skeleton: cycle repair did not converge");

        std::sort(off.begin(), off.end());
        std::vector<Cell> adds;  // non-members adjacent to the structure
        {
            std::set<Cell> a;
            for (const Cell& m : off)
                for (const Cell& d : kSteps) {
                    Cell n = m + d;
                    if (c.occupied(n) && !s.count(n)) a.insert(n);
                }
            adds.assign(a.begin(), a.end());
        }
        // Mid-construction the skeleton may still be several components (later
        // bands connect them); a repair step must not split any of them.
        int cur_comps = num_components(s);
        auto try_commit = [&](const std::vector<Cell>& del, const Cell* add) {
            CellSet t = s;
            for (const Cell& m : del) t.erase(m);
            if (add) t.insert(*add);
            if (t.empty() || num_components(t) > cur_comps || !dominates(c, t)) return false;
            if (!(measure(t, nullptr) < cur)) return false;
            s = std::move(t);
            return true;
        };
        bool done = false;
        for (const Cell& m : off)
            if ((done = try_commit({m}, nullptr))) break;
        if (done) continue;
        for (const Cell& m : off) {
            for (const Cell& a : adds)
                if ((done = try_commit({m}, &a))) break;
            if (done) break;
        }
        if (done) continue;
        for (const Cell& m1 : off) {
            for (const Cell& m2 : off) {
                if (!(m1 < m2)) continue;
                for (const Cell& a : adds)
                    if ((done = try_commit({m1, m2}, &a))) break;
                if (done) break;
            }
            if (done) break;
        }
        if (!done) throw std::logic_error("compute_skeleton: no local repair applies");
    }
}

int floor_even(int x) { return x - (((x % 2) + 2) % 2); }

}  // namespace

bool is_skeleton(const Config& c, const CellSet& members) {
    for (const Cell& m : members)
        if (!c.occupied(m)) return false;
    if (!acceptable(c, members)) return false;
    Badness b = measure(members, nullptr);
    return b.bad_comps == 0 && b.shared == 0;
}

Skeleton compute_skeleton(const Config& c) {
    if (c.empty() || !is_connected(c.cells()))
        throw std::invalid_argument("compute_skeleton: configuration must be connected");

    // Seed: even columns plus horizontally isolated odd cells.
    CellSet v;
    for (const Cell& m : c.cells()) {
        bool even = ((m.x % 2) + 2) % 2 == 0;
        if (even || (!c.occupied(m + Cell{1, 0}) && !c.occupied(m + Cell{-1, 0}))) v.insert(m);
    }
    CellSet s = v;

    // Banded connectors: for every window of three columns, join the seed
    // components with a minimum spanning forest over shortest paths that
    // avoid other seed cells.
    Box bb = c.bounding_box();
    for (int i = floor_even(bb.xmin); i <= bb.xmax; i += 2) {
        auto in_band = [&](const Cell& m) { return m.x >= i && m.x <= i + 2; };
        // Components of the seed within the band.
        std::map<Cell, int> comp;
        int ncomp = 0;
        for (const Cell& m : sorted(v)) {
            if (!in_band(m) || comp.count(m)) continue;
            std::deque<Cell> q{m};
            comp[m] = ncomp;
            while (!q.empty()) {
                Cell u = q.front();
                q.pop_front();
                for (const Cell& d : kSteps) {
                    Cell n = u + d;
                    if (v.count(n) && in_band(n) && !comp.count(n)) {
                        comp[n] = ncomp;
                        q.push_back(n);
                    }
                }
            }
            ++ncomp;
        }
        if (ncomp <= 1) continue;
        // Shortest connector between each pair of components through
        // non-seed band cells: multi-source BFS per component.
        std::vector<std::tuple<int, Cell, int, int, std::map<Cell, Cell>, Cell>> edges;
        for (int u = 0; u < ncomp; ++u) {
            std::map<Cell, int> dist;
            std::map<Cell, Cell> parent;
            std::deque<Cell> q;
            for (const Cell& m : sorted(v))
                if (in_band(m) && comp[m] == u) {
                    dist[m] = 0;
                    q.push_back(m);
                }
            std::map<int, std::pair<int, Cell>> best;  // target comp -> (len, final cell)
            while (!q.empty()) {
                Cell x = q.front();
                q.pop_front();
                for (const Cell& d : kSteps) {
                    Cell n = x + d;
                    if (!c.occupied(n) || !in_band(n) || dist.count(n)) continue;
                    if (v.count(n)) {
                        int w = comp[n];
                        if (w > u && !best.count(w)) best[w] = {dist[x], x};
                        continue;
                    }
                    dist[n] = dist[x] + 1;
                    parent[n] = x;
                    q.push_back(n);
                }
            }
            for (auto& [w, p] : best)
                edges.push_back({p.first, p.second, u, w, parent, p.second});
        }
        std::sort(edges.begin(), edges.end(),
                  [](const auto& a, const auto& b) { return std::tie(std::get<0>(a), std::get<1>(a)) < std::tie(std::get<0>(b), std::get<1>(b)); });
        std::vector<int> uf(ncomp);
        for (int k = 0; k < ncomp; ++k) uf[k] = k;
        std::function<int(int)> find = [&](int x) {
            while (uf[x] != x) x = uf[x] = uf[uf[x]];
            return x;
        };
        for (auto& [w, last, u1, u2, parent, final_cell] : edges) {
            if (find(u1) == find(u2)) continue;
            uf[find(u1)] = find(u2);
            Cell p = final_cell;
            while (!v.count(p)) {
                s.insert(p);
                auto it = parent.find(p);
                if (it == parent.end()) break;
                p = it->second;
            }
        }
        repair(c, s);
    }
    repair(c, s);

    Skeleton sk;
    sk.members = s;

    // Contract squares to nodes.
    auto comps = biconnected_components(s);
    for (auto& comp : comps) {
        if (!is_square_comp(comp)) continue;
        SkeletonNode n;
        n.cells = comp_vertices(comp);
        int id = (int)sk.nodes.size();
        for (const Cell& m : n.cells) sk.node_of[m] = id;
        sk.nodes.push_back(std::move(n));
    }
    for (const Cell& m : sorted(s)) {
        if (sk.node_of.count(m)) continue;
        sk.node_of[m] = (int)sk.nodes.size();
        sk.nodes.push_back({{m}, -1, {}});
    }

    // Tree adjacency between nodes.
    std::vector<std::set<int>> adj(sk.nodes.size());
    for (const Cell& m : s)
        for (const Cell& d : {Cell{1, 0}, Cell{0, 1}}) {
            Cell n = m + d;
            if (!s.count(n)) continue;
            int a = sk.node_of[m], b = sk.node_of[n];
            if (a != b) {
                adj[a].insert(b);
                adj[b].insert(a);
            }
        }

    // Root: a leaf node when one exists, with the smallest cell for
    // determinism; then orient the tree away from it.
    sk.root = 0;
    {
        Cell best{0, 0};
        bool have = false;
        for (size_t i = 0; i < sk.nodes.size(); ++i) {
            if (sk.nodes.size() > 1 && adj[i].size() != 1) continue;
            Cell mine = *std::min_element(sk.nodes[i].cells.begin(), sk.nodes[i].cells.end());
            if (!have || mine < best) {
                best = mine;
                sk.root = (int)i;
                have = true;
            }
        }
    }
    {
        std::deque<int> q{sk.root};
        std::vector<char> seen(sk.nodes.size(), 0);
        seen[sk.root] = 1;
        while (!q.empty()) {
            int u = q.front();
            q.pop_front();
            std::vector<int> kids(adj[u].begin(), adj[u].end());
            std::sort(kids.begin(), kids.end(), [&](int a, int b) {
                return sk.nodes[a].cells.front() < sk.nodes[b].cells.front();
            });
            for (int k : kids) {
                if (seen[k]) continue;
                seen[k] = 1;
                sk.nodes[k].parent = u;
                sk.nodes[u].children.push_back(k);
                q.push_back(k);
            }
        }
    }

    // Support assignment and subtree weights.
    for (const Cell& m : c.sorted_cells()) {
        if (s.count(m)) continue;
        for (const Cell& d : {Cell{-1, 0}, Cell{0, -1}, Cell{0, 1}, Cell{1, 0}})
            if (s.count(m + d)) {
                Cell cand = m + d;
                auto it = sk.support.find(m);
                if (it == sk.support.end() || cand < it->second) sk.support[m] = cand;
            }
    }
    sk.weight.assign(sk.nodes.size(), 0);
    for (size_t i = 0; i < sk.nodes.size(); ++i) sk.weight[i] = (long long)sk.nodes[i].cells.size();
    for (auto& [m, sup] : sk.support) ++sk.weight[sk.node_of[sup]];
    // Accumulate bottom-up (children appear after parents in BFS order is
    // not guaranteed; do an explicit post-order).
    {
        std::vector<int> order;
        std::deque<int> q{sk.root};
        while (!q.empty()) {
            int u = q.front();
            q.pop_front();
            order.push_back(u);
            for (int k : sk.nodes[u].children) q.push_back(k);
        }
        for (auto it = order.rbegin(); it != order.rend(); ++it)
            if (sk.nodes[*it].parent >= 0) sk.weight[sk.nodes[*it].parent] += sk.weight[*it];
    }
    return sk;
}

int heavy_node(const Skeleton& s, long long w) {
    long long n = s.weight[s.root];
    if (w <= 1 || w > n) throw std::invalid_argument("heavy_node: need 1 < w <= n");
    int c = s.root;
    for (;;) {
        if (s.weight[c] <= 3 * w) return c;  // weight >= w by the descent invariant
        int next = -1;
        for (int k : s.nodes[c].children) {
            if (s.weight[k] >= w && s.weight[k] <= 3 * w) return k;
            if (s.weight[k] > 3 * w && (next < 0 || s.weight[k] > s.weight[next])) next = k;
        }
        if (next < 0) break;
        c = next;
    }
    // Coarse node weights can step over the window during the descent; fall
    // back to a full scan before giving up.
    for (size_t i = 0; i < s.nodes.size(); ++i)
        if (s.weight[i] >= w && s.weight[i] <= 3 * w) return (int)i;
    throw std::logic_error("heavy_node: no node in the weight window");
}

}  // namespace sq

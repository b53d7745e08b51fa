#pragma once
// Shared helpers for the test suite: ascii-art configurations, an
// independent time-sampled collision checker, and random generators.

#include <random>
#include <string>
#include <vector>

#include "squares/config.hpp"
#include "squares/moves.hpp"

namespace sqtest {

using namespace sq;

// Build a configuration from ascii rows, top row first; '#' marks an
// occupied cell.  The bottom-left corner of the picture is (0,0).
inline Config grid(const std::vector<std::string>& rows) {
    Config c(false);
    int h = (int)rows.size();
    for (int r = 0; r < h; ++r)
        for (int x = 0; x < (int)rows[r].size(); ++x)
            if (rows[r][x] == '#') c.add({x, h - 1 - r});
    return c;
}

// Independent collision oracle: sample the two motions at t = k/1024 for
// k = 1..1024 and report whether the open interiors of the unit squares
// ever overlap.  All arithmetic is integral (positions scaled by 2048).
inline bool sampled_collides(const Move& a, const Move& b) {
    auto pos = [](const Move& m, int k) -> Cell {
        Cell p{m.origin.x * 2048, m.origin.y * 2048};
        Cell v1 = dir_vec(m.d1);
        if (m.kind == MoveKind::Slide) return {p.x + 2 * k * v1.x, p.y + 2 * k * v1.y};
        Cell v2 = dir_vec(m.d2);
        if (2 * k <= 1024) return {p.x + 4 * k * v1.x, p.y + 4 * k * v1.y};
        return {p.x + 2048 * v1.x + (4 * k - 2048) * v2.x,
                p.y + 2048 * v1.y + (4 * k - 2048) * v2.y};
    };
    for (int k = 1; k <= 1024; ++k) {
        Cell pa = pos(a, k), pb = pos(b, k);
        if (std::abs(pa.x - pb.x) < 2048 && std::abs(pa.y - pb.y) < 2048) return true;
    }
    return false;
}

// Random connected configuration of n cells grown inside the given box.
inline Config random_connected_config(int n, Box box, std::mt19937& rng) {
    CellSet cells;
    std::vector<Cell> frontier;
    Cell start{(box.xmin + box.xmax) / 2, (box.ymin + box.ymax) / 2};
    cells.insert(start);
    frontier.push_back(start);
    while ((int)cells.size() < n) {
        Cell base = frontier[rng() % frontier.size()];
        Cell next = neighbors4(base)[rng() % 4];
        if (!box.contains(next) || cells.count(next)) continue;
        cells.insert(next);
        frontier.push_back(next);
    }
    Config c(false);
    for (const Cell& cell : cells) c.add(cell);
    return c;
}

// All connected subsets of the w x h box with exactly n cells, up to
// nothing (absolute positions within the box).  Intended for small sizes.
std::vector<std::vector<Cell>> connected_subsets(int w, int h, int n);

}  // namespace sqtest

#include "squares/scaffold.hpp"

#include <algorithm>
#include <stdexcept>

namespace sq {

namespace {

Box expanded(Box b, int k) {
    b.xmin -= k;
    b.ymin -= k;
    b.xmax += k;
    b.ymax += k;
    return b;
}

// Target = grown cells plus the lowest (then easternmost) remaining cells,
// so the kept slab stays attached to the arm base; the topmost modules
// outside `grown` are the donors.
Schedule reshape_into(Config& c, const CellSet& grown) {
    if (grown.size() > c.size())
        throw std::invalid_argument("scaffold: not enough modules for the arm");
    std::vector<Cell> cells = c.sorted_cells();
    std::stable_sort(cells.begin(), cells.end(), [](const Cell& a, const Cell& b) {
        return a.y != b.y ? a.y < b.y : a.x > b.x;
    });
    CellSet target = grown;
    for (const Cell& k : cells) {
        if (target.size() >= c.size()) break;
        target.insert(k);
    }
    Box frame = expanded(Box::merge(c.bounding_box(), bounding_box(target)), 1);
    Config before = c;
    return pack_parallel(before, reshape(c, target, frame));
}

}  // namespace

Schedule compact_core(Config& c, Exoskeleton& x) {
    int max_depth = 0;
    for (size_t i = 0; i < x.core.size(); ++i) max_depth = std::max(max_depth, x.depth((int)i));
    Schedule out;
    for (int round = 0; round <= max_depth + 4; ++round) {
        bool solid = true;
        for (const Cell& k : x.core)
            if (!c.occupied(k)) solid = false;
        if (solid) return out;
        Schedule s = inchworm_pull(c, x);
        if (s.empty()) throw std::runtime_error("compact_core: no pull applies");
        out.insert(out.end(), s.begin(), s.end());
    }
    throw std::runtime_error("compact_core: core failed to fill");
}

Schedule grow_east(Config& c, const Box& b) {
    CellSet block;
    for (int x = b.xmax + 1; x <= b.xmax + 3; ++x)
        for (int y = b.ymin; y <= b.ymin + 2; ++y) block.insert({x, y});
    return reshape_into(c, block);
}

Schedule grow_vertical(Config& c, const Box& b) {
    CellSet arm;
    for (int x = b.xmax + 1; x <= b.xmax + 3; ++x)
        for (int y = b.ymin; y <= b.ymax; ++y) arm.insert({x, y});
    return reshape_into(c, arm);
}

bool has_scaffold_arm(const Config& c, const Box& b, Box* arm) {
    for (int x = b.xmax + 1; x <= b.xmax + 3; ++x)
        for (int y = b.ymin; y <= b.ymax; ++y)
            if (!c.occupied({x, y})) return false;
    Box bb = c.bounding_box();
    if (bb.xmax > b.xmax + 3) return false;
    if (arm) *arm = Box{b.xmax + 1, b.ymin, b.xmax + 3, b.ymax};
    return true;
}

Schedule phase2(Config& c) {
    Box b = c.bounding_box();
    // Round the arm height up to a multiple of 3 (at least 6) so it splits
    // exactly into 3x3 meta-modules for the sweep.
    int h2 = std::max(6, 3 * ((b.height() + 2) / 3));
    if (c.size() < 3 * (size_t)h2)
        throw std::invalid_argument("phase2: not enough modules for the arm");
    Box b2 = b;
    b2.ymax = b.ymin + h2 - 1;
    Schedule out = grow_east(c, b);
    Schedule up = grow_vertical(c, b2);
    out.insert(out.end(), up.begin(), up.end());
    if (!has_scaffold_arm(c, b))
        throw std::runtime_error("phase2: arm incomplete");
    return out;
}

}  // namespace sq

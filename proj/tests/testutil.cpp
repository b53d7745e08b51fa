#include "testutil.hpp"

#include <stdexcept>

namespace sqtest {

std::vector<std::vector<Cell>> connected_subsets(int w, int h, int n) {
    if (w * h > 24) throw std::logic_error("box too large for exhaustive enumeration");
    std::vector<std::vector<Cell>> out;
    int total = w * h;
    for (uint32_t mask = 0; mask < (1u << total); ++mask) {
        if (__builtin_popcount(mask) != n) continue;
        CellSet cells;
        for (int i = 0; i < total; ++i)
            if (mask & (1u << i)) cells.insert({i % w, i / w});
        if (!is_connected(cells)) continue;
        out.push_back(sorted_cells(cells));
    }
    return out;
}

}  // namespace sqtest

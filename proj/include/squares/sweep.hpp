#pragma once
// Phase III: the 3-wide east arm becomes a sweep line -- a vertical stack of
// meta-modules (3x3 rings around centers 3 rows apart).  The line is cleaned
// (centers empty unless the west strip is full) and advanced west one column
// at a time, absorbing everything in its path into flush east strips, until
// the west half-space is empty.  Finalizing packs the swept material into an
// aligned union of 3x3 blocks plus at most eight parked modules.

#include "squares/gather.hpp"
#include "squares/scaled.hpp"

namespace sq {

struct MetaModule {
    Cell center;
};

struct SweepLine {
    int x = 0;                      // column of the meta centers
    std::vector<MetaModule> metas;  // centers at x, y increasing, 3 apart

    std::vector<Cell> ring_cells(size_t i) const;  // 8 cells around center i
    std::vector<Cell> west_cells(size_t i) const;  // 3 cells at x-2
    int ymin() const { return metas.front().center.y - 1; }
    int ymax() const { return metas.back().center.y + 1; }
};

// Structural invariant: every ring fully occupied; attachment: a cell east
// of the line with an empty west neighbor must rest on an occupied cell
// below (east clumps hang from a flush bottom row).
bool sweepline_ok(const Config& c, const SweepLine& l, std::string* why = nullptr);

// Re-interpret the Phase-II arm east of `b` as a sweep line and clean it.
std::pair<Schedule, SweepLine> arm_to_sweepline(Config& c, const Box& b);

// Normalize the bands: every occupied center whose west strip is partially
// occupied moves into a strip gap (a fully empty strip is left alone, since
// filling it would create new west material).  Leading metas (even index)
// batch first, then trailing.
Schedule clean(Config& c, const SweepLine& l);

// Shift the whole line one column west, absorbing the west-strip cells and
// shedding surplus into the flush east strips; restores the clean invariant.
// Throws std::runtime_error("nothing to sweep") if the west half-space is
// already empty.
std::pair<Schedule, SweepLine> advance(Config& c, const SweepLine& l);

// With the west half-space empty, reshape line plus strips into a union of
// 3x3 blocks on the 3-aligned lattice, parking the n mod 9 leftover modules
// in a column hugging the south-west corner of the block area.
// Returns the stream and the parked cells.
std::pair<Schedule, CellSet> finalize_scaled(Config& c, const SweepLine& l);

struct Phase3Result {
    Schedule stream;
    CellSet parked;          // n mod 9 modules outside the scaled part
    size_t advances = 0;     // number of advance iterations
    size_t max_advance = 0;  // largest per-advance transformation count
};

// Phase III entry point; expects the Phase-II scaffold arm at the east edge.
// The final configuration minus the parked cells is 3-scaled.
Phase3Result phase3(Config& c);

}  // namespace sq

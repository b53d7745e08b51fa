#pragma once
// Reconfiguration between 3-scaled configurations (unions of 3x3 blocks on
// the 3-grid): whole-configuration translation, histogram compaction,
// xy-monotone canonicalisation and histogram-to-histogram reconfiguration.
//
// All planners return verifier-accepted schedules; the step-count contracts
// (6 per translated unit, 6(h-3) for histogram formation, 3(P-6) for the
// xy-monotone form, 12(P1+P2) end to end) are asserted by the test suite.

#include "squares/moves.hpp"
#include "squares/verify.hpp"

namespace sq {

// C is exactly a union of k x k blocks anchored at multiples of k.
bool is_scaled(const Config& c, int k = 3);

// Block-replacement: each cell of c becomes a k x k block.
Config scale_up(const Config& c, int k = 3);

// Inverse of scale_up; throws std::invalid_argument when c is not k-scaled.
Config scale_down(const Config& c, int k = 3);

// Every column's cells are contiguous and grounded at the shared base row
// (resp. column) on the given side of the bounding box.
bool is_histogram(const CellSet& cells, Dir base);

// Down-left closed relative to the bounding-box minimum corner.
bool is_xy_monotone(const CellSet& cells);

// A maximal 3-wide vertical run of blocks: columns [x0, x0+2], rows
// [ylo, yhi], with all three columns occupying exactly the same rows.
struct Strip {
    int x0;
    int ylo, yhi;
};

// Strip decomposition of a (possibly vertically mid-shift) scaled
// configuration; throws std::invalid_argument when the cells do not split
// into such strips.
std::vector<Strip> strips_of(const CellSet& cells);

// Translate the whole configuration by k cells in direction d.
// Emits exactly 6 transformations per unit on well-behaved inputs (padding
// splits chains when a round finishes early); throws on k < 0 or
// non-3-scaled input.
Schedule translate_scaled(const Config& c, Dir d, int k);

// Compact all strips that lack a module at the base side until the
// configuration is a histogram with that base.
Schedule to_histogram(const Config& c, Dir base = Dir::S);

// Histogram passes along both axes; result is an xy-monotone histogram
// with its base corner at the bounding-box minimum.
Schedule to_xy_monotone(const Config& c);

// Reconfigure between two 3-scaled xy-monotone histograms with a common
// minimum corner, by bisector-matched 18-step L-tunnels.
Schedule histogram_to_histogram(const Config& c1, const Config& c2);

// Full 3-scaled pipeline: canonicalise both sides, reconfigure between the
// canonical forms, replay the goal-side canonicalisation in reverse.
Schedule solve_scaled(const Config& c1, const Config& c2);

// --- grid symmetry helpers (shared by the planners and their tests) ------

// Rotation by 90 degrees counter-clockwise that maps blocks anchored at
// multiples of 3 to blocks anchored at multiples of 3.
Cell rot3_ccw(Cell c);
Cell rot3_cw(Cell c);
Dir rot_ccw(Dir d);
Dir rot_cw(Dir d);
Config rotated3_ccw(const Config& c, int times);
Move rotated3_ccw(const Move& m, int times);
Schedule rotated3_ccw(const Schedule& s, int times);

}  // namespace sq

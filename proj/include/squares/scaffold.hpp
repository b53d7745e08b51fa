#pragma once
// Phase II: from the gathered exoskeleton, build the scaffold -- a 3-wide
// vertical arm flush against the east face of the bounding box, spanning its
// full height, plus the remaining slab at the south-west ("|-" rotated: the
// arm is the bar, the slab the stem).
//
// Stages: compact the core until it has no empty cells, grow a 3x3 block
// east of the box at the bottom rows, then extend it upward until the arm
// spans the box height.

#include "squares/gather.hpp"

namespace sq {

// Repeated staged pulls until every core position is occupied; the stream is
// empty when the core is already solid.  Throws std::runtime_error when the
// core fails to fill within a depth-proportional number of rounds.
Schedule compact_core(Config& c, Exoskeleton& x);

// Grow a solid 3x3 block just east of b, occupying columns
// b.xmax+1..b.xmax+3 and rows b.ymin..b.ymin+2 (center column b.xmax+2).
// Requires at least 9 modules.
Schedule grow_east(Config& c, const Box& b);

// Extend the block to a 3-wide arm spanning rows b.ymin..b.ymax.  Requires
// the configuration to hold at least 3 * height(b) modules.
Schedule grow_vertical(Config& c, const Box& b);

// True iff the 3-wide arm east of b is fully occupied over b's height and
// nothing lies east of it; *arm receives its box when given.
bool has_scaffold_arm(const Config& c, const Box& b, Box* arm = nullptr);

// Phase II entry point: grow_east + grow_vertical against the configuration's
// bounding box at entry (the core is solid after Phase I), with the arm
// height rounded up to a multiple of 3 (at least 6) so it splits into 3x3
// meta-modules.  Returns the verified stream; the final configuration
// satisfies has_scaffold_arm.
Schedule phase2(Config& c);

}  // namespace sq

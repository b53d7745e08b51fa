#pragma once
// Skeletons: connected subconfigurations that dominate the whole
// configuration and whose dual-graph cycles are pairwise disjoint 4-cycles.
// The contracted structure (each 4-cycle shrunk to one node) is a tree of
// maximum degree 4; it is rooted, every non-member module is assigned an
// adjacent member as support, and subtree weights drive the selection of a
// "heavy" node whose subskeleton has a prescribed share of the modules.

#include <map>
#include <vector>

#include "squares/config.hpp"

namespace sq {

struct SkeletonNode {
    std::vector<Cell> cells;    // one cell, or the four cells of a 2x2 cycle
    int parent = -1;            // node index; -1 at the root
    std::vector<int> children;  // node indices
};

struct Skeleton {
    CellSet members;
    std::vector<SkeletonNode> nodes;
    int root = -1;
    std::map<Cell, int> node_of;    // member cell -> node index
    std::map<Cell, Cell> support;   // non-member module -> adjacent member
    std::vector<long long> weight;  // per node: |subtree cells| + supported
};

// True iff members is a connected, dominating (C within its closed
// neighborhood) subset of c whose dual-graph cycles are pairwise disjoint
// with length at most 4 (every biconnected component is a bridge or a 2x2
// square, and no cell lies on two squares).
bool is_skeleton(const Config& c, const CellSet& members);

// Column-seeded construction: even columns, horizontally isolated odd
// cells, banded minimum-spanning-forest connectors, then guarded local
// repair of long and intersecting cycles.  Throws std::invalid_argument on
// an empty or disconnected configuration.
Skeleton compute_skeleton(const Config& c);

// A node whose subskeleton weight lies in [w, 3w]; requires 1 < w <= n.
int heavy_node(const Skeleton& s, long long w);

}  // namespace sq

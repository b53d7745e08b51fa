#pragma once
// Phase I: reconfigure a configuration (or a subskeleton's modules) into an
// exoskeleton -- a thickened tree whose interior ("core") is coated by a
// fully occupied shell, with leftover modules parked as tails near leaves.
//
// The long-haul transport underneath is a single-module router: one module
// at a time walks along the surface of the static remainder, each step a
// verified slide or convex transition.  Local operations (seed compaction,
// push, pull) work on the exoskeleton structure itself.

#include <optional>

#include "squares/moves.hpp"
#include "squares/skeleton.hpp"

namespace sq {

// Core tree of lattice positions (occupied or empty), rooted at core[0];
// members are the modules this exoskeleton accounts for.
struct Exoskeleton {
    std::vector<Cell> core;     // core[i] is a lattice position
    std::vector<int> parent;    // parent[i] < i, -1 for the root
    int arity = 0;              // residue class of empty-core-cell depths
    CellSet members;            // modules belonging to the exoskeleton

    CellSet core_set() const;
    std::vector<int> children(int i) const;
    bool is_leaf(int i) const;
    std::vector<Cell> leaf_cells() const;
    // Shell: open 8-neighborhood of the non-leaf core, minus leaf cells.
    CellSet shell() const;
    int depth(int i) const;
};

// The four structural invariants: |core| >= 2 and members within the closed
// 8-neighborhood of the core; leaves occupied; shell fully occupied; every
// empty core cell's depth congruent to arity mod 4.
bool exoskeleton_valid(const Config& c, const Exoskeleton& x, std::string* why = nullptr);

// ---- transport engine ----------------------------------------------------

// Walk the module at `from` to the empty cell `to`, one verified move per
// transformation, staying inside `frame`.  The rest of the configuration is
// static; it must stay connected without the walker.
std::optional<std::vector<Move>> route_module(const Config& c, Cell from, Cell to,
                                              const Box& frame);

// Reconfigure c in place until its occupied set equals `target` (sizes must
// match), one module at a time inside `frame`; throws std::runtime_error
// when no routable source/destination pair remains.  When `movable` is
// non-null only those modules may be relocated.
Schedule reshape(Config& c, const CellSet& target, const Box& frame,
                 const CellSet* movable = nullptr);

// Greedily merge consecutive single-move steps into parallel
// transformations; the result is verified step by step and replays from
// `start` to the same final configuration.
Schedule pack_parallel(const Config& start, const Schedule& singles);

// ---- canonical target shape ----------------------------------------------

// Bottom-up filled slab of width W (a multiple of 3) anchored at the
// south-west corner of b: full rows plus one left-aligned partial row.
CellSet comb_blob(size_t n, const Box& b);

// The comb labeling of such a blob: spine along the second row, teeth up
// the middle columns of each three-column group; solid core, arity 0.
Exoskeleton comb_exoskeleton(const CellSet& blob);

// ---- local operations ----------------------------------------------------

// Compact the <= 9 modules of `cluster` into a solid 3x3 square centred at
// `center`; throws std::runtime_error past the 32-transformation cap.
Schedule base_case_compact(Config& c, const std::vector<Cell>& cluster, Cell center,
                           const Box& frame);

// Form a solid 3x3 from the nine modules nearest `center` and declare it a
// minimal exoskeleton (vertical two-cell core).
std::pair<Schedule, Exoskeleton> make_seed_exoskeleton(Config& c, Cell center, const Box& frame);

// Fill the empty cell e (adjacent to core position d = parent of the core
// cell `child`) by a chain along the ring around d, emptying `child`;
// at most 2 transformations.  Throws std::runtime_error("push not
// applicable") when no legal chain exists.
Schedule inchworm_push(Config& c, const Exoskeleton& x, Cell d, Cell child, Cell e);

// Four staggered stages; in stage j every empty core cell whose occupied
// core child has depth == j (mod 4) is filled from that child; emptied
// leaves refill from tails or are pruned from the core.  `protect` biases
// the child choice away from ancestors of that core cell.
Schedule inchworm_pull(Config& c, Exoskeleton& x, std::optional<Cell> protect = {});

// Gather the modules of the subskeleton rooted at `node` (all modules when
// node is the root) into a comb exoskeleton at the south-west corner of
// their bounding box.
std::pair<Schedule, Exoskeleton> gather(Config& c, const Skeleton& s, int node);

// Phase I entry point: gather the whole configuration.
std::pair<Schedule, Exoskeleton> phase1(Config& c);

}  // namespace sq

#pragma once
// End-to-end solver: run the three phases on both configurations, solve
// between the two scaled cores, and append the goal-side stream reversed.
// Small instances that cannot carry the scaffold arm are reshaped directly.

#include "squares/scaffold.hpp"
#include "squares/sweep.hpp"

namespace sq {

struct SolveStats {
    size_t makespan = 0;       // transformations in the returned schedule
    size_t perimeter = 0;      // P1 + P2 of the two bounding boxes
    bool direct = false;       // solved by direct reshape (small instance)
    bool scaled_middle = true; // middle used the scaled solver (not fallback)
};

// Minimum module count for the phase pipeline; below it the scaffold arm
// cannot be built and the solver reshapes directly.
inline constexpr size_t kPipelineMinModules = 18;

// Schedule turning c1 into c2 (same module count, both connected).  Returns
// an empty schedule when the configurations already coincide.  The result
// verifies end to end and stays weakly in place around the merged bounding
// boxes.
Schedule solve(const Config& c1, const Config& c2, SolveStats* stats = nullptr);

}  // namespace sq

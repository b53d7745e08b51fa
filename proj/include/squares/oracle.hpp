#pragma once
// Brute-force reference implementations for small instances.
//
// The enumerator and the breadth-first makespan search are deliberately
// independent of the production verifier: they use their own support
// templates, a union-find connectivity check and an integer time-sampled
// collision test, so agreement between the two routes is meaningful.

#include <optional>

#include "squares/moves.hpp"

namespace sq {

// All legal non-empty transformations on C, in a deterministic order.
// Throws when |C| exceeds max_modules (the enumeration is exponential).
std::vector<Transformation> enumerate_transformations(const Config& c, size_t max_modules = 8);

struct MakespanResult {
    int makespan = 0;
    Schedule schedule;  // witness realizing the makespan, in C1's frame
};

// Minimum number of transformations turning start into goal up to
// translation, by breadth-first search over translation-normalised states.
// States whose bounding box exceeds box_limit in either dimension are
// pruned; returns nullopt when no schedule of length <= cap exists.
std::optional<MakespanResult> optimal_makespan(const Config& start, const Config& goal, int cap,
                                               int box_limit = 5);

// A deterministic hard instance family: two L-shaped configurations with n
// modules in opposite corners of the n/2 x n/2 box.
std::pair<Config, Config> worst_case_pair(int n);

}  // namespace sq

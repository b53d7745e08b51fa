#pragma once
// Legality checking for transformations and schedules.
//
// A transformation with moving set M is legal on configuration C when
//   * every move origin is occupied,
//   * the backbone C \ M is non-empty and connected (this also keeps the
//     result connected, since every move's support sits in the backbone
//     adjacent to its target),
//   * every move has its support template satisfied by static modules,
//   * no two simultaneous moves collide, and
//   * the resulting cells are pairwise distinct.

#include <string>

#include "squares/moves.hpp"

namespace sq {

enum class ViolationKind {
    None,
    InvalidTransformation,
    InvalidConfig,
    OriginMissing,
    DisconnectedBackbone,
    UnsupportedMove,
    Collision,
    Overlap,
    GoalMismatch,
    OutOfPlace,
};

const char* violation_name(ViolationKind k);

struct VerifyResult {
    bool ok = true;
    ViolationKind kind = ViolationKind::None;
    int step = -1;  // schedule step index (0-based), -1 for single transformations
    std::string detail;

    static VerifyResult fail(ViolationKind k, std::string detail, int step = -1) {
        return {false, k, step, std::move(detail)};
    }
};

enum class InPlaceMode { None, Strict, Weak };

struct VerifyOptions {
    // When set, use the subset-quantified freeness check instead of the
    // backbone criterion (exponential; small moving sets only).
    bool subset_freeness = false;
    InPlaceMode in_place = InPlaceMode::None;
    int weak_k = 0;
};

// Verify one transformation on C; on success *out (if given) receives the
// resulting configuration.
VerifyResult verify_transformation(const Config& c, const Transformation& t,
                                   Config* out = nullptr, const VerifyOptions& opt = {});

// Verify a whole schedule; when goal is non-null the final configuration
// must coincide with it (including labels in labelled mode).
VerifyResult verify_schedule(const Config& start, const Schedule& s, const Config* goal,
                             const VerifyOptions& opt = {});

}  // namespace sq

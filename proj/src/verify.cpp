#include "squares/verify.hpp"

#include <algorithm>

namespace sq {

const char* violation_name(ViolationKind k) {
    switch (k) {
        case ViolationKind::None: return "NONE";
        case ViolationKind::InvalidTransformation: return "INVALID_TRANSFORMATION";
        case ViolationKind::InvalidConfig: return "INVALID_CONFIG";
        case ViolationKind::OriginMissing: return "ORIGIN_MISSING";
        case ViolationKind::DisconnectedBackbone: return "DISCONNECTED_BACKBONE";
        case ViolationKind::UnsupportedMove: return "UNSUPPORTED_MOVE";
        case ViolationKind::Collision: return "COLLISION";
        case ViolationKind::Overlap: return "OVERLAP";
        case ViolationKind::GoalMismatch: return "GOAL_MISMATCH";
        case ViolationKind::OutOfPlace: return "OUT_OF_PLACE";
    }
    return "?";
}

VerifyResult verify_transformation(const Config& c, const Transformation& t, Config* out,
                                   const VerifyOptions& opt) {
    std::string why;
    if (!t.well_formed(&why))
        return VerifyResult::fail(ViolationKind::InvalidTransformation, why);
    if (!c.connected())
        return VerifyResult::fail(ViolationKind::InvalidConfig, "configuration is disconnected");

    for (const Move& m : t.moves) {
        if (!c.occupied(m.origin))
            return VerifyResult::fail(ViolationKind::OriginMissing, m.str());
    }

    if (!t.moves.empty()) {
        CellSet moving = t.origins();
        bool free_ok = opt.subset_freeness ? is_free_subsets(c.cells(), moving)
                                           : is_free_backbone(c.cells(), moving);
        if (!free_ok)
            return VerifyResult::fail(ViolationKind::DisconnectedBackbone,
                                      "moving set of size " + std::to_string(moving.size()) +
                                          " is not free");

        CellSet statics;
        statics.reserve(c.size());
        for (const Cell& cell : c.cells())
            if (!moving.count(cell)) statics.insert(cell);

        for (const Move& m : t.moves) {
            if (!move_supported(statics, m))
                return VerifyResult::fail(ViolationKind::UnsupportedMove, m.str());
        }

        // Pairwise collisions; only moves with nearby origins can interact,
        // so bucket the moves spatially instead of testing all pairs.
        CellMap<std::vector<const Move*>> buckets;
        for (const Move& m : t.moves) buckets[{m.origin.x >> 2, m.origin.y >> 2}].push_back(&m);
        for (const Move& m : t.moves) {
            Cell b{m.origin.x >> 2, m.origin.y >> 2};
            for (int dx = -1; dx <= 1; ++dx)
                for (int dy = -1; dy <= 1; ++dy) {
                    auto it = buckets.find({b.x + dx, b.y + dy});
                    if (it == buckets.end()) continue;
                    for (const Move* o : it->second) {
                        if (o == &m || !(m.origin < o->origin)) continue;
                        if (linf_dist(m.origin, o->origin) > 3) continue;
                        if (moves_collide(m, *o))
                            return VerifyResult::fail(ViolationKind::Collision,
                                                      m.str() + " vs " + o->str());
                    }
                }
        }
    }

    // Distinct targets; a shared target normally manifests as a collision
    // first, but keep the structural check as a backstop.
    Config result(c.labeled());
    try {
        result = apply(c, t);
    } catch (const std::exception& e) {
        return VerifyResult::fail(ViolationKind::Overlap, e.what());
    }
    if (out) *out = std::move(result);
    return {};
}

VerifyResult verify_schedule(const Config& start, const Schedule& s, const Config* goal,
                             const VerifyOptions& opt) {
    Box placebox;
    if (opt.in_place != InPlaceMode::None) {
        placebox = start.bounding_box();
        if (goal) placebox = Box::merge(placebox, goal->bounding_box());
    }
    auto place_ok = [&](const Config& c) {
        if (opt.in_place == InPlaceMode::None) return true;
        int outside = 0;
        for (const Cell& cell : c.cells()) {
            int d = placebox.linf_outside(cell);
            if (d == 0) continue;
            if (opt.in_place == InPlaceMode::Strict) {
                if (++outside > 1) return false;
            } else if (d > opt.weak_k) {
                return false;
            }
        }
        return true;
    };

    Config cur = start;
    if (!place_ok(cur))
        return VerifyResult::fail(ViolationKind::OutOfPlace, "initial configuration", -1);
    for (size_t i = 0; i < s.size(); ++i) {
        Config next(cur.labeled());
        VerifyResult r = verify_transformation(cur, s[i], &next, opt);
        if (!r.ok) {
            r.step = (int)i;
            return r;
        }
        cur = std::move(next);
        if (!place_ok(cur))
            return VerifyResult::fail(ViolationKind::OutOfPlace,
                                      "configuration leaves the working box", (int)i);
    }
    if (goal && !cur.same_as(*goal))
        return VerifyResult::fail(ViolationKind::GoalMismatch,
                                  "final configuration differs from the goal",
                                  (int)s.size() - 1);
    return {};
}

}  // namespace sq

#include "squares/pipeline.hpp"

#include <stdexcept>

#include "squares/scaled.hpp"
#include "squares/verify.hpp"

namespace sq {

namespace {

Box expanded(Box b, int k) {
    b.xmin -= k;
    b.ymin -= k;
    b.xmax += k;
    b.ymax += k;
    return b;
}

struct Side {
    Schedule stream;
    Config state;
    CellSet parked;
};

Side run_phases(const Config& start) {
    Side s;
    s.state = start;
    auto [s1, x] = phase1(s.state);
    s.stream = std::move(s1);
    Schedule s2 = phase2(s.state);
    s.stream.insert(s.stream.end(), s2.begin(), s2.end());
    Phase3Result r3 = phase3(s.state);
    s.stream.insert(s.stream.end(), r3.stream.begin(), r3.stream.end());
    s.parked = std::move(r3.parked);
    return s;
}

Schedule direct_reshape(Config a, const Config& b) {
    CellSet target;
    for (const Cell& p : b.cells()) target.insert(p);
    Box frame = expanded(Box::merge(a.bounding_box(), b.bounding_box()), 2);
    Config before = a;
    return pack_parallel(before, reshape(a, target, frame));
}

}  // namespace

Schedule solve(const Config& c1, const Config& c2, SolveStats* stats) {
    if (c1.size() != c2.size()) throw std::invalid_argument("solve: module counts differ");
    if (c1.size() == 0) throw std::invalid_argument("solve: empty configuration");
    SolveStats st;
    st.perimeter = (size_t)(c1.bounding_box().perimeter() + c2.bounding_box().perimeter());
    auto done = [&](Schedule s) {
        st.makespan = s.size();
        if (stats) *stats = st;
        return s;
    };
    if (c1.silhouette().same_as(c2.silhouette())) {
        st.scaled_middle = false;
        return done({});
    }
    if (c1.size() < kPipelineMinModules) {
        st.direct = true;
        st.scaled_middle = false;
        return done(direct_reshape(c1, c2));
    }

    Side a = run_phases(c1);
    Side b = run_phases(c2);

    Config sa = a.state, sb = b.state;
    for (const Cell& p : a.parked) sa.remove(p);
    for (const Cell& p : b.parked) sb.remove(p);

    // Middle: solve between the scaled cores, replayed with the parked
    // modules present, then walk the parked modules to the goal-side
    // parking cells.  If the replay trips over a parked module, fall back
    // to a direct reshape between the two phase-3 states.
    Schedule middle;
    bool scaled_ok = false;
    try {
        Schedule m = solve_scaled(sa, sb);
        Config cur = a.state;
        scaled_ok = true;
        for (const Transformation& t : m) {
            if (!verify_transformation(cur, t, &cur).ok) {
                scaled_ok = false;
                break;
            }
        }
        if (scaled_ok) {
            CellSet target;
            for (const Cell& p : b.state.cells()) target.insert(p);
            Box frame = expanded(Box::merge(cur.bounding_box(), b.state.bounding_box()), 2);
            CellSet movable = a.parked;
            Config before = cur;
            Schedule glue = pack_parallel(before, reshape(cur, target, frame, &movable));
            middle = std::move(m);
            middle.insert(middle.end(), glue.begin(), glue.end());
        }
    } catch (const std::exception&) {
        scaled_ok = false;
    }
    if (!scaled_ok) {
        st.scaled_middle = false;
        middle = direct_reshape(a.state, b.state);
    }

    Schedule out = std::move(a.stream);
    out.insert(out.end(), middle.begin(), middle.end());
    Schedule back = reversed(b.stream);
    out.insert(out.end(), back.begin(), back.end());
    return done(out);
}

}  // namespace sq

#include "squares/geom.hpp"

namespace sq {

bool dir_from_char(char c, Dir& out) {
    switch (c) {
        case 'N': out = Dir::N; return true;
        case 'E': out = Dir::E; return true;
        case 'S': out = Dir::S; return true;
        case 'W': out = Dir::W; return true;
        default: return false;
    }
}

Box Box::merge(const Box& a, const Box& b) {
    if (a.empty()) return b;
    if (b.empty()) return a;
    Box r = a;
    r.xmin = std::min(a.xmin, b.xmin);
    r.xmax = std::max(a.xmax, b.xmax);
    r.ymin = std::min(a.ymin, b.ymin);
    r.ymax = std::max(a.ymax, b.ymax);
    return r;
}

int Box::linf_outside(const Cell& c) const {
    if (empty()) return 0;
    int dx = 0, dy = 0;
    if (c.x < xmin) dx = xmin - c.x;
    else if (c.x > xmax) dx = c.x - xmax;
    if (c.y < ymin) dy = ymin - c.y;
    else if (c.y > ymax) dy = c.y - ymax;
    return std::max(dx, dy);
}

std::string to_string(const Cell& c) {
    return "(" + std::to_string(c.x) + "," + std::to_string(c.y) + ")";
}

}  // namespace sq

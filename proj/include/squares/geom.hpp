#pragma once
// Basic lattice geometry: cells, directions, bounding boxes.

#include <array>
#include <compare>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

namespace sq {

struct Cell {
    int x = 0;
    int y = 0;

    friend auto operator<=>(const Cell&, const Cell&) = default;
    Cell operator+(const Cell& o) const { return {x + o.x, y + o.y}; }
    Cell operator-(const Cell& o) const { return {x - o.x, y - o.y}; }
    Cell operator*(int k) const { return {x * k, y * k}; }
};

// Lexicographic order: by x, then y.  (The default <=> gives exactly this.)
inline bool lex_less(const Cell& a, const Cell& b) { return a < b; }

struct CellHash {
    size_t operator()(const Cell& c) const {
        // 2D -> 1D mix; coordinates stay far below 2^31 in practice.
        uint64_t h = (uint64_t)(uint32_t)c.x << 32 | (uint32_t)c.y;
        h ^= h >> 33;
        h *= 0xff51afd7ed558ccdULL;
        h ^= h >> 33;
        h *= 0xc4ceb9fe1a85ec53ULL;
        h ^= h >> 33;
        return (size_t)h;
    }
};

enum class Dir : uint8_t { N = 0, E = 1, S = 2, W = 3 };

inline Cell dir_vec(Dir d) {
    switch (d) {
        case Dir::N: return {0, 1};
        case Dir::E: return {1, 0};
        case Dir::S: return {0, -1};
        default: return {-1, 0};
    }
}

inline Dir opposite(Dir d) { return Dir(((int)d + 2) % 4); }
inline bool perpendicular(Dir a, Dir b) { return ((int)a + (int)b) % 2 == 1; }
inline char dir_char(Dir d) { return "NESW"[(int)d]; }
bool dir_from_char(char c, Dir& out);

inline const std::array<Dir, 4> kDirs = {Dir::N, Dir::E, Dir::S, Dir::W};

// Edge-adjacent neighbours N(c).
inline std::array<Cell, 4> neighbors4(const Cell& c) {
    return {Cell{c.x, c.y + 1}, Cell{c.x + 1, c.y}, Cell{c.x, c.y - 1}, Cell{c.x - 1, c.y}};
}

// Edge- or vertex-adjacent neighbours N*(c).
inline std::array<Cell, 8> neighbors8(const Cell& c) {
    return {Cell{c.x - 1, c.y - 1}, Cell{c.x, c.y - 1}, Cell{c.x + 1, c.y - 1},
            Cell{c.x - 1, c.y},     Cell{c.x + 1, c.y}, Cell{c.x - 1, c.y + 1},
            Cell{c.x, c.y + 1},     Cell{c.x + 1, c.y + 1}};
}

inline int linf_dist(const Cell& a, const Cell& b) {
    return std::max(std::abs(a.x - b.x), std::abs(a.y - b.y));
}

inline int l1_dist(const Cell& a, const Cell& b) {
    return std::abs(a.x - b.x) + std::abs(a.y - b.y);
}

// Axis-aligned bounding box, inclusive on all sides.  An empty box is
// represented with min > max.
struct Box {
    int xmin = 0, ymin = 0, xmax = -1, ymax = -1;

    bool empty() const { return xmin > xmax || ymin > ymax; }
    int width() const { return empty() ? 0 : xmax - xmin + 1; }
    int height() const { return empty() ? 0 : ymax - ymin + 1; }
    // Perimeter 2*(w+h) of the box outline.
    int perimeter() const { return empty() ? 0 : 2 * (width() + height()); }
    bool contains(const Cell& c) const {
        return c.x >= xmin && c.x <= xmax && c.y >= ymin && c.y <= ymax;
    }
    void include(const Cell& c) {
        if (empty()) {
            xmin = xmax = c.x;
            ymin = ymax = c.y;
        } else {
            xmin = std::min(xmin, c.x);
            xmax = std::max(xmax, c.x);
            ymin = std::min(ymin, c.y);
            ymax = std::max(ymax, c.y);
        }
    }
    // Smallest box containing both.
    static Box merge(const Box& a, const Box& b);
    // L-infinity distance from c to the box (0 when inside).
    int linf_outside(const Cell& c) const;
    friend bool operator==(const Box&, const Box&) = default;
};

std::string to_string(const Cell& c);

}  // namespace sq

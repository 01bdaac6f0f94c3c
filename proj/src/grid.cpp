#include "rubikroute/grid.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace rubikroute {

Grid3D::Grid3D(int m1, int m2, int m3, ObstaclePattern obstacles)
    : m1_(m1), m2_(m2), m3_(m3), obstacles_(obstacles) {
    if (m1 <= 0 || m2 <= 0 || m3 <= 0)
        throw std::invalid_argument("grid dimensions must be positive");
    if (!(m1 >= m2 && m2 >= m3))
        throw std::invalid_argument("grid requires m1 >= m2 >= m3");
    if (m1 % 3 != 0 || m2 % 3 != 0 || m3 % 3 != 0)
        throw std::invalid_argument("grid dimensions must be multiples of 3, got " +
                                    std::to_string(m1) + "x" + std::to_string(m2) + "x" +
                                    std::to_string(m3));
}

int Grid3D::num_free() const {
    if (obstacles_ == ObstaclePattern::None) return num_cells();
    return num_cells() - (m1_ / 3) * (m2_ / 3) * m3_;
}

int Grid3D::capacity() const {
    if (obstacles_ == ObstaclePattern::None) return num_cells() / 3;
    return 2 * num_cells() / 9;
}

std::vector<Coord> Grid3D::neighbors(Coord c) const {
    if (!is_free(c))
        throw std::invalid_argument("neighbors: coordinate out of bounds or on an obstacle");
    static const int dx[6] = {1, -1, 0, 0, 0, 0};
    static const int dy[6] = {0, 0, 1, -1, 0, 0};
    static const int dz[6] = {0, 0, 0, 0, 1, -1};
    std::vector<Coord> out;
    out.reserve(6);
    for (int k = 0; k < 6; ++k) {
        Coord nb{c.x + dx[k], c.y + dy[k], c.z + dz[k]};
        if (is_free(nb)) out.push_back(nb);
    }
    return out;
}

namespace {

// Is there a building column strictly between lo and hi on the axis?
// Columns sit at coordinates congruent to 1 mod 3.
bool column_strictly_between(int lo, int hi) {
    if (hi - lo < 2) return false;
    int first = lo + 1;
    int r = first % 3;
    if (r != 1) first += (r == 0) ? 1 : 2;
    return first < hi;
}

}  // namespace

int Grid3D::distance(Coord a, Coord b) const {
    if (!is_free(a) || !is_free(b))
        throw std::invalid_argument("distance: endpoints must be free cells");
    int dx = std::abs(a.x - b.x);
    int dy = std::abs(a.y - b.y);
    int dz = std::abs(a.z - b.z);
    int d2 = dx + dy;
    if (obstacles_ == ObstaclePattern::Buildings) {
        // Obstacle columns are isolated with spacing 3, so a monotone x-y
        // path exists whenever both dx and dy are nonzero. Only straight
        // axis-aligned segments through a column need a 2-step detour.
        if (dx == 0 && dy != 0 && a.x % 3 == 1 &&
            column_strictly_between(std::min(a.y, b.y), std::max(a.y, b.y)))
            d2 += 2;
        else if (dy == 0 && dx != 0 && a.y % 3 == 1 &&
                 column_strictly_between(std::min(a.x, b.x), std::max(a.x, b.x)))
            d2 += 2;
    }
    return d2 + dz;
}

std::vector<Coord> Grid3D::centered_slots(Orientation o) const {
    std::vector<Coord> slots;
    slots.reserve(capacity());
    for (int x = 0; x < m1_; ++x)
        for (int y = 0; y < m2_; ++y) {
            if (o == Orientation::VerticalCentered && x % 3 != 1) continue;
            if (o == Orientation::HorizontalCentered && y % 3 != 1) continue;
            if (is_obstacle(Coord{x, y, 0})) continue;
            for (int z = 0; z < m3_; ++z) slots.push_back(Coord{x, y, z});
        }
    return slots;
}

bool Grid3D::is_balanced(const std::vector<Coord>& config) const {
    std::vector<int> count((m1_ / 3) * (m2_ / 3) * m3_, 0);
    for (const Coord& c : config) {
        if (!is_free(c)) throw std::invalid_argument("is_balanced: config cell not free");
        int idx = ((c.x / 3) * (m2_ / 3) + c.y / 3) * m3_ + c.z;
        if (++count[idx] > 3) return false;
    }
    return true;
}

}  // namespace rubikroute

#pragma once

#include <compare>
#include <cstdint>
#include <vector>

namespace rubikroute {

struct Coord {
    int x = 0;
    int y = 0;
    int z = 0;

    auto operator<=>(const Coord&) const = default;
};

/// Which middle line of each 3x3 cell the robots occupy.
enum class Orientation { VerticalCentered, HorizontalCentered };

enum class ObstaclePattern { None, Buildings };

/// Cell (ci,cj) spans x in [3ci,3ci+2], y in [3cj,3cj+2].
struct Cell {
    int ci = 0;
    int cj = 0;

    auto operator<=>(const Cell&) const = default;
};

/// m1 x m2 x m3 grid, 6-connected, m1 >= m2 >= m3, all multiples of 3.
/// The only supported obstacle layout is full-height "building" columns
/// at cell centers (3i+1, 3j+1).
class Grid3D {
public:
    Grid3D(int m1, int m2, int m3, ObstaclePattern obstacles = ObstaclePattern::None);

    int m1() const { return m1_; }
    int m2() const { return m2_; }
    int m3() const { return m3_; }
    ObstaclePattern obstacles() const { return obstacles_; }

    bool in_bounds(Coord c) const {
        return c.x >= 0 && c.x < m1_ && c.y >= 0 && c.y < m2_ && c.z >= 0 && c.z < m3_;
    }
    bool is_obstacle(Coord c) const {
        return obstacles_ == ObstaclePattern::Buildings && c.x % 3 == 1 && c.y % 3 == 1;
    }
    bool is_free(Coord c) const { return in_bounds(c) && !is_obstacle(c); }

    int num_cells() const { return m1_ * m2_ * m3_; }
    int num_free() const;
    /// Maximum supported robot count (= number of centered slots).
    int capacity() const;

    Cell cell_of(Coord c) const { return Cell{c.x / 3, c.y / 3}; }

    /// Flat index for free/any coordinate, row-major (x, y, z).
    int index(Coord c) const { return (c.x * m2_ + c.y) * m3_ + c.z; }
    Coord coord(int idx) const {
        return Coord{idx / (m2_ * m3_), (idx / m3_) % m2_, idx % m3_};
    }

    /// In-bounds, non-obstacle 6-neighbors. Throws on invalid input coordinate.
    std::vector<Coord> neighbors(Coord c) const;

    /// Shortest obstacle-avoiding path length. Equals L1 distance on
    /// obstacle-free grids; building columns only force a +2 detour when
    /// both endpoints share an axis line that passes through a column.
    int distance(Coord a, Coord b) const;

    /// All free coordinates on cell middle lines for the given orientation,
    /// in lexicographic (x, y, z) order.
    std::vector<Coord> centered_slots(Orientation o) const;

    /// True iff every (cell, z) pair holds at most 3 robots of config.
    bool is_balanced(const std::vector<Coord>& config) const;

private:
    int m1_, m2_, m3_;
    ObstaclePattern obstacles_;
};

}  // namespace rubikroute

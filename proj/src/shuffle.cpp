#include "rubikroute/shuffle.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

namespace rubikroute {

namespace {

struct Mover {
    int robot;
    int lane;  // lane-axis coordinate while cruising
    int base;  // lane-axis coordinate of the centered line
    int a0, a1, sign, dist;
};

int& axis_coord(Coord& c, Axis axis) {
    switch (axis) {
        case Axis::X: return c.x;
        case Axis::Y: return c.y;
        default: return c.z;
    }
}

}  // namespace

int execute_round(const Grid3D& grid, Axis axis, const std::vector<Relocation>& moves,
                  std::vector<Coord>& config, std::vector<std::vector<Coord>>& frames) {
    if (moves.empty()) return 0;

    std::vector<int> at(grid.num_cells(), -1);
    for (int i = 0; i < static_cast<int>(config.size()); ++i) at[grid.index(config[i])] = i;

    // Lanes are the empty lines beside the centered ones: x±1 for Y/Z
    // rounds (vertical centered), y±1 for X rounds (horizontal centered).
    const bool lane_in_y = (axis == Axis::X);

    std::vector<Mover> movers;
    movers.reserve(moves.size());
    int max_dist = 0;
    for (const Relocation& m : moves) {
        if (!grid.is_free(m.from) || !grid.is_free(m.to))
            throw std::invalid_argument("execute_round: relocation off the grid");
        int robot = at[grid.index(m.from)];
        if (robot < 0) throw std::invalid_argument("execute_round: no robot at move source");

        Coord from = m.from, to = m.to;
        int a0 = axis_coord(from, axis), a1 = axis_coord(to, axis);
        axis_coord(from, axis) = axis_coord(to, axis) = 0;
        if (from != to) throw std::invalid_argument("execute_round: move leaves its line");
        if (a0 == a1) continue;

        int base = lane_in_y ? m.from.y : m.from.x;
        if (base % 3 != 1)
            throw std::invalid_argument("execute_round: configuration not centered for axis");
        Mover mv{robot, base + (a1 > a0 ? 1 : -1), base, a0, a1, a1 > a0 ? 1 : -1,
                 std::abs(a1 - a0)};
        movers.push_back(mv);
        max_dist = std::max(max_dist, mv.dist);
    }
    if (movers.empty()) return 0;

    int duration = 2 + max_dist;
    for (int t = 1; t <= duration; ++t) {
        for (const Mover& mv : movers) {
            Coord& c = config[mv.robot];
            if (t <= mv.dist + 1) {
                (lane_in_y ? c.y : c.x) = mv.lane;
                axis_coord(c, axis) = mv.a0 + mv.sign * (t - 1);
            } else {
                (lane_in_y ? c.y : c.x) = mv.base;
                axis_coord(c, axis) = mv.a1;
            }
        }
        frames.push_back(config);
    }
    return duration;
}

int recenter(const Grid3D& grid, Orientation to, std::vector<Coord>& config,
             std::vector<std::vector<Coord>>& frames) {
    const bool to_vertical = (to == Orientation::VerticalCentered);
    bool done = true, ready = true;
    for (const Coord& c : config) {
        if ((to_vertical ? c.x : c.y) % 3 != 1) done = false;
        if ((to_vertical ? c.y : c.x) % 3 != 1) ready = false;
    }
    if (done) return 0;
    if (!ready) throw std::invalid_argument("recenter: configuration not centered");

    // Each cell cross-section converts middle line to middle line with the
    // same fixed 2-step corner maneuver; the center robot (absent under
    // buildings) stays put.
    std::vector<Coord> mid = config;
    std::vector<Coord> fin = config;
    for (int i = 0; i < static_cast<int>(config.size()); ++i) {
        Coord c = config[i];
        int off = to_vertical ? c.x % 3 : c.y % 3;  // position along the source line
        if (off == 1) continue;
        int toward = off == 0 ? -1 : 1;  // step toward the near corner
        if (to_vertical) {
            mid[i].y += toward;
            fin[i] = Coord{c.x + (off == 0 ? 1 : -1), c.y + toward, c.z};
        } else {
            mid[i].x += toward;
            fin[i] = Coord{c.x + toward, c.y + (off == 0 ? 1 : -1), c.z};
        }
        if (!grid.is_free(mid[i]) || !grid.is_free(fin[i]))
            throw std::invalid_argument("recenter: maneuver leaves the grid");
    }
    frames.push_back(mid);
    frames.push_back(fin);
    config = fin;
    return 2;
}

}  // namespace rubikroute

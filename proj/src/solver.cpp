#include "rubikroute/solver.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>

#include "rubikroute/rubik.hpp"
#include "rubikroute/shuffle.hpp"
#include "rubikroute/unlabeled.hpp"

namespace rubikroute {

namespace {

void append_unlabeled(const UnlabeledResult& u, std::vector<std::vector<Coord>>& frames,
                      bool reversed) {
    int n = static_cast<int>(u.paths.size());
    for (int s = 1; s <= u.makespan; ++s) {
        int t = reversed ? u.makespan - s : s;
        std::vector<Coord> frame(n);
        for (int i = 0; i < n; ++i) frame[i] = u.paths[i][t];
        frames.push_back(std::move(frame));
    }
}

// Physical x-round: robots sit on horizontal centered lines; each must reach
// the cell column of its target x. Within each (line, target cell) group the
// cell's slots go to the incoming robots in order of current x, which keeps
// every line's move map a permutation.
std::vector<Relocation> build_x_round(const Grid3D& grid, const std::vector<Coord>& cur,
                                      const std::vector<Coord>& g1) {
    int n = static_cast<int>(cur.size());
    std::vector<std::tuple<int, int, int, int>> items;  // (line, target cell, x, robot)
    items.reserve(n);
    for (int i = 0; i < n; ++i)
        items.emplace_back(cur[i].y * grid.m3() + cur[i].z, g1[i].x / 3, cur[i].x, i);
    std::sort(items.begin(), items.end());

    const bool buildings = grid.obstacles() == ObstaclePattern::Buildings;
    std::vector<Relocation> moves;
    size_t a = 0;
    while (a < items.size()) {
        size_t b = a;
        while (b < items.size() && std::get<0>(items[b]) == std::get<0>(items[a]) &&
               std::get<1>(items[b]) == std::get<1>(items[a]))
            ++b;
        int cell = std::get<1>(items[a]);
        std::vector<int> xs;
        for (int off = 0; off < 3; ++off)
            if (!(buildings && off == 1)) xs.push_back(3 * cell + off);
        if (b - a != xs.size())
            throw std::logic_error("solver: x-round cell occupancy mismatch");
        for (size_t k = a; k < b; ++k) {
            const auto& [line, tc, x, robot] = items[k];
            if (xs[k - a] != x)
                moves.push_back(Relocation{cur[robot], Coord{xs[k - a], cur[robot].y,
                                                             cur[robot].z}});
        }
        a = b;
    }
    return moves;
}

void check_budget(int length, int duration, const char* stage) {
    if (duration > length + 5)
        throw std::logic_error(std::string("solver: round budget exceeded in ") + stage);
}

// Full-fleet audit over raw frames; cheaper than the validate module (flat
// occupancy arrays) and run on every solve.
void audit_frames(const Grid3D& grid, const std::vector<std::vector<Coord>>& frames) {
    int n = static_cast<int>(frames.front().size());
    std::vector<int> owner(grid.num_cells(), -1);
    std::vector<int> stamp(grid.num_cells(), -1);
    for (size_t t = 0; t < frames.size(); ++t) {
        const std::vector<Coord>& f = frames[t];
        if (static_cast<int>(f.size()) != n) throw std::logic_error("solver: frame size drift");
        for (int i = 0; i < n; ++i) {
            if (!grid.is_free(f[i])) throw std::logic_error("solver: robot off the grid");
            int idx = grid.index(f[i]);
            if (stamp[idx] == static_cast<int>(t))
                throw std::logic_error("solver: vertex collision in synthesized plan");
            stamp[idx] = static_cast<int>(t);
            if (t > 0) {
                Coord p = frames[t - 1][i];
                int step =
                    std::abs(f[i].x - p.x) + std::abs(f[i].y - p.y) + std::abs(f[i].z - p.z);
                if (step > 1) throw std::logic_error("solver: discontinuous step");
                if (step == 1) {
                    int j = owner[idx];  // occupant of this cell at t-1, possibly stale
                    if (j >= 0 && j != i && frames[t - 1][j] == f[i] && frames[t][j] == p)
                        throw std::logic_error("solver: edge swap in synthesized plan");
                }
            }
        }
        for (int i = 0; i < n; ++i) owner[grid.index(f[i])] = i;
    }
}

}  // namespace

int solve_lower_bound(const Instance& instance) {
    int lb = 0;
    for (int i = 0; i < instance.num_real(); ++i)
        lb = std::max(lb, instance.grid.distance(instance.starts[i], instance.goals[i]));
    return lb;
}

Plan solve(const Instance& instance, const SolverOptions& opts) {
    const Grid3D& grid = instance.grid;
    const bool use_lba = opts.algorithm == Algorithm::Rth3dLba;
    Instance padded = pad_virtual(instance);
    int n = padded.num_robots();

    std::vector<Coord> slots = grid.centered_slots(Orientation::VerticalCentered);

    UnlabeledResult u1 = schedule(grid, padded.starts, slots,
                                  assign_slots(grid, padded.starts, slots));
    UnlabeledResult u2 = schedule(grid, padded.goals, slots,
                                  assign_slots(grid, padded.goals, slots));
    std::vector<Coord> g1(n);
    for (int i = 0; i < n; ++i) g1[i] = u2.paths[i].back();

    std::vector<std::vector<Coord>> frames;
    frames.push_back(padded.starts);
    append_unlabeled(u1, frames, false);
    std::vector<Coord> cur(n);
    for (int i = 0; i < n; ++i) cur[i] = u1.paths[i].back();

    Plan plan;
    plan.phases.unlabeled1 = u1.makespan;

    StagePlan mz = matching_xy(grid, cur, g1, use_lba);
    plan.phases.z1 = execute_round(grid, Axis::Z, mz.rounds[0].moves, cur, frames);
    check_budget(grid.m3(), plan.phases.z1, "z1");
    if (cur != mz.result) throw std::logic_error("solver: z1 round drifted from plan");

    StagePlan fit = xy_fitting(grid, cur, g1, use_lba);
    int dur_a = execute_round(grid, Axis::Y, fit.rounds[0].moves, cur, frames);
    dur_a += recenter(grid, Orientation::HorizontalCentered, cur, frames);
    check_budget(grid.m2(), dur_a, "xy round a");

    int dur_b = execute_round(grid, Axis::X, build_x_round(grid, cur, g1), cur, frames);
    dur_b += recenter(grid, Orientation::VerticalCentered, cur, frames);
    check_budget(grid.m1(), dur_b, "xy round b");

    std::vector<Relocation> moves_c;
    for (int i = 0; i < n; ++i) {
        if (cur[i].x != g1[i].x) throw std::logic_error("solver: robot missed target column");
        if (cur[i].y != g1[i].y)
            moves_c.push_back(Relocation{cur[i], Coord{g1[i].x, g1[i].y, cur[i].z}});
    }
    int dur_c = execute_round(grid, Axis::Y, moves_c, cur, frames);
    check_budget(grid.m2(), dur_c, "xy round c");
    plan.phases.xy = dur_a + dur_b + dur_c;
    if (cur != fit.result) throw std::logic_error("solver: xy stage drifted from plan");

    StagePlan zf = z_fitting(grid, cur, g1);
    plan.phases.z2 = execute_round(grid, Axis::Z, zf.rounds[0].moves, cur, frames);
    check_budget(grid.m3(), plan.phases.z2, "z2");
    if (cur != g1) throw std::logic_error("solver: pipeline did not reach G1");

    plan.phases.unlabeled2 = u2.makespan;
    append_unlabeled(u2, frames, true);
    if (frames.back() != padded.goals)
        throw std::logic_error("solver: reversed tail did not reach goals");

    audit_frames(grid, frames);

    // Report real robots only, trimmed to their last movement.
    int real = padded.num_real();
    size_t horizon = 1;
    for (size_t t = 1; t < frames.size(); ++t)
        for (int i = 0; i < real; ++i)
            if (frames[t][i] != frames[t - 1][i]) {
                horizon = t + 1;
                break;
            }
    plan.makespan = static_cast<int>(horizon) - 1;
    plan.paths.assign(real, {});
    for (int i = 0; i < real; ++i) {
        plan.paths[i].reserve(horizon);
        for (size_t t = 0; t < horizon; ++t) plan.paths[i].push_back(frames[t][i]);
    }
    plan.lower_bound = solve_lower_bound(instance);
    plan.ratio = optimality_ratio(plan.makespan, plan.lower_bound);
    return plan;
}

}  // namespace rubikroute

#include "rubikroute/unlabeled.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <stdexcept>

#include "rubikroute/matching.hpp"

namespace rubikroute {

namespace {

// Candidate slots within grid distance <= radius of a start, sorted by
// (distance, slot index). Enumerates the L1 ball, which contains the true
// distance ball on supported obstacle patterns.
std::vector<std::pair<int, int>> candidates_within(const Grid3D& grid,
                                                   const std::vector<int>& slot_at, Coord s,
                                                   int radius) {
    std::vector<std::pair<int, int>> out;
    for (int dx = -radius; dx <= radius; ++dx) {
        int x = s.x + dx;
        if (x < 0 || x >= grid.m1()) continue;
        int ry = radius - std::abs(dx);
        for (int dy = -ry; dy <= ry; ++dy) {
            int y = s.y + dy;
            if (y < 0 || y >= grid.m2()) continue;
            if (grid.is_obstacle(Coord{x, y, 0})) continue;
            int rz = ry - std::abs(dy);
            for (int dz = -rz; dz <= rz; ++dz) {
                int z = s.z + dz;
                if (z < 0 || z >= grid.m3()) continue;
                int slot = slot_at[grid.index(Coord{x, y, z})];
                if (slot < 0) continue;
                int d = grid.distance(s, Coord{x, y, z});
                if (d <= radius) out.emplace_back(d, slot);
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

SlotAssignment assign_slots(const Grid3D& grid, const std::vector<Coord>& starts,
                            const std::vector<Coord>& slots) {
    int n = static_cast<int>(starts.size());
    if (static_cast<int>(slots.size()) < n)
        throw std::invalid_argument("assign_slots: fewer slots than robots");
    if (n == 0) return {};

    std::vector<int> slot_at(grid.num_cells(), -1);
    for (int s = 0; s < static_cast<int>(slots.size()); ++s) slot_at[grid.index(slots[s])] = s;

    const int diameter = grid.m1() + grid.m2() + grid.m3() + 2;

    // Lower bound: every robot needs at least its nearest slot.
    int t_lo = 0;
    for (const Coord& s : starts) {
        int r = 0;
        while (candidates_within(grid, slot_at, s, r).empty()) {
            if (++r > diameter) throw std::runtime_error("assign_slots: no reachable slot");
        }
        t_lo = std::max(t_lo, r);
    }

    auto build_adj = [&](int radius, std::vector<std::vector<std::pair<int, int>>>& cand) {
        cand.resize(n);
        for (int i = 0; i < n; ++i) cand[i] = candidates_within(grid, slot_at, starts[i], radius);
    };

    // Grow the radius until a perfect matching exists, then binary search.
    std::vector<std::vector<std::pair<int, int>>> cand;
    std::vector<int> match_l(n, -1), match_r(slots.size(), -1);
    std::vector<std::vector<int>> adj(n);
    auto feasible = [&](int radius) {
        for (int i = 0; i < n; ++i) {
            adj[i].clear();
            for (const auto& [d, slot] : cand[i]) {
                if (d > radius) break;
                adj[i].push_back(slot);
            }
            if (match_l[i] >= 0) {
                // Warm start: drop pairs that exceed the new radius.
                bool keep = false;
                for (int s : adj[i])
                    if (s == match_l[i]) {
                        keep = true;
                        break;
                    }
                if (!keep) {
                    match_r[match_l[i]] = -1;
                    match_l[i] = -1;
                }
            }
        }
        return hopcroft_karp(n, static_cast<int>(slots.size()), adj, match_l, match_r) == n;
    };

    int t_hi = std::max(t_lo, 1);
    build_adj(t_hi, cand);
    while (!feasible(t_hi)) {
        if (t_hi > diameter) throw std::runtime_error("assign_slots: matching infeasible");
        t_hi *= 2;
        build_adj(t_hi, cand);
    }
    int lo = t_lo, hi = t_hi;
    while (lo < hi) {
        int mid = (lo + hi) / 2;
        if (feasible(mid))
            hi = mid;
        else
            lo = mid + 1;
    }
    feasible(hi);  // leave match_l at the optimal radius

    SlotAssignment result;
    result.slot_of_robot.assign(match_l.begin(), match_l.end());
    for (int i = 0; i < n; ++i)
        result.bottleneck_distance =
            std::max(result.bottleneck_distance, grid.distance(starts[i], slots[match_l[i]]));
    return result;
}

namespace {

// One robot at a time along a path through currently free cells. Used only
// when the parallel scheduler stalls; costs makespan but always progresses.
class SequentialFallback {
public:
    SequentialFallback(const Grid3D& grid, std::vector<Coord>& pos, std::vector<Coord>& target,
                       std::vector<std::vector<Coord>>& paths, std::vector<int>& occ)
        : grid_(grid), pos_(pos), target_(target), paths_(paths), occ_(occ) {}

    void run() {
        resolve_parked();
        while (true) {
            std::vector<int> unfinished;
            for (int i = 0; i < static_cast<int>(pos_.size()); ++i)
                if (pos_[i] != target_[i]) unfinished.push_back(i);
            if (unfinished.empty()) return;
            std::sort(unfinished.begin(), unfinished.end(), [&](int a, int b) {
                return grid_.distance(pos_[a], target_[a]) > grid_.distance(pos_[b], target_[b]);
            });
            bool advanced = false;
            for (int i : unfinished) {
                std::vector<Coord> path = bfs_free_path(pos_[i], target_[i]);
                if (path.empty()) continue;
                apply_path(i, path);
                advanced = true;
                break;
            }
            if (!advanced)
                throw std::runtime_error("unlabeled scheduler: sequential fallback wedged");
            resolve_parked();
        }
    }

private:
    // A robot sitting on another robot's target takes over that target.
    void resolve_parked() {
        bool changed = true;
        while (changed) {
            changed = false;
            std::vector<int> robot_at_target(grid_.num_cells(), -1);
            for (int i = 0; i < static_cast<int>(pos_.size()); ++i)
                robot_at_target[grid_.index(target_[i])] = i;
            for (int i = 0; i < static_cast<int>(pos_.size()); ++i) {
                if (pos_[i] == target_[i]) continue;
                int j = robot_at_target[grid_.index(pos_[i])];
                if (j >= 0 && j != i) {
                    std::swap(target_[i], target_[j]);
                    changed = true;
                    break;
                }
            }
        }
    }

    std::vector<Coord> bfs_free_path(Coord from, Coord to) {
        std::vector<int> prev(grid_.num_cells(), -2);
        std::queue<Coord> q;
        q.push(from);
        prev[grid_.index(from)] = -1;
        while (!q.empty()) {
            Coord c = q.front();
            q.pop();
            if (c == to) break;
            for (const Coord& nb : grid_.neighbors(c)) {
                int idx = grid_.index(nb);
                if (prev[idx] != -2) continue;
                if (occ_[idx] >= 0) continue;
                prev[idx] = grid_.index(c);
                q.push(nb);
            }
        }
        if (prev[grid_.index(to)] == -2) return {};
        std::vector<Coord> path;
        for (int idx = grid_.index(to); idx != -1; idx = prev[idx])
            path.push_back(grid_.coord(idx));
        std::reverse(path.begin(), path.end());
        return path;
    }

    void apply_path(int robot, const std::vector<Coord>& path) {
        occ_[grid_.index(pos_[robot])] = -1;
        for (size_t t = 1; t < path.size(); ++t)
            for (int i = 0; i < static_cast<int>(pos_.size()); ++i)
                paths_[i].push_back(i == robot ? path[t] : pos_[i]);
        pos_[robot] = path.back();
        occ_[grid_.index(pos_[robot])] = robot;
    }

    const Grid3D& grid_;
    std::vector<Coord>& pos_;
    std::vector<Coord>& target_;
    std::vector<std::vector<Coord>>& paths_;
    std::vector<int>& occ_;
};

}  // namespace

UnlabeledResult schedule(const Grid3D& grid, const std::vector<Coord>& starts,
                         const std::vector<Coord>& slots, const SlotAssignment& assignment) {
    int n = static_cast<int>(starts.size());
    if (static_cast<int>(assignment.slot_of_robot.size()) != n)
        throw std::invalid_argument("schedule: assignment size mismatch");

    std::vector<Coord> pos = starts;
    std::vector<Coord> target(n);
    for (int i = 0; i < n; ++i) target[i] = slots[assignment.slot_of_robot[i]];

    std::vector<std::vector<Coord>> paths(n);
    for (int i = 0; i < n; ++i) paths[i].push_back(pos[i]);

    std::vector<int> occ(grid.num_cells(), -1);
    for (int i = 0; i < n; ++i) {
        if (occ[grid.index(pos[i])] >= 0)
            throw std::invalid_argument("schedule: duplicate start cell");
        occ[grid.index(pos[i])] = i;
    }

    auto dist = [&](int i) { return grid.distance(pos[i], target[i]); };

    const int stall_limit = 3 * (grid.m1() + grid.m2() + grid.m3());
    int stall = 0;
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::vector<int> next_cell(n);
    std::vector<char> decided(n);
    std::vector<int> reserved(grid.num_cells());

    while (true) {
        bool done = true;
        for (int i = 0; i < n && done; ++i)
            if (pos[i] != target[i]) done = false;
        if (done) break;

        std::vector<int> d(n);
        for (int i = 0; i < n; ++i) d[i] = dist(i);
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            if (d[a] != d[b]) return d[a] > d[b];
            return a < b;
        });

        std::fill(reserved.begin(), reserved.end(), -1);
        std::fill(decided.begin(), decided.end(), 0);
        for (int i = 0; i < n; ++i) {
            next_cell[i] = grid.index(pos[i]);
            if (d[i] == 0) {
                decided[i] = 1;
                reserved[next_cell[i]] = i;
            }
        }

        // Commit moves in priority order; chains unlock over repeated passes.
        bool progress = true;
        while (progress) {
            progress = false;
            for (int i : order) {
                if (decided[i]) continue;
                for (const Coord& nb : grid.neighbors(pos[i])) {
                    if (grid.distance(nb, target[i]) >= d[i]) continue;
                    int idx = grid.index(nb);
                    if (reserved[idx] >= 0) continue;
                    int j = occ[idx];
                    if (j >= 0) {
                        if (!decided[j] || next_cell[j] == idx) continue;      // not vacating
                        if (next_cell[j] == grid.index(pos[i])) continue;      // head-on swap
                    }
                    decided[i] = 1;
                    next_cell[i] = idx;
                    reserved[idx] = i;
                    progress = true;
                    break;
                }
            }
        }

        // A blocked robot trades targets with a stationary robot sitting on
        // its shortest path (legal: the phase is unlabeled). The blocker is
        // strictly closer to the traded-away target, so the sum of remaining
        // distances never grows and congested clusters drain outward.
        bool swapped = false;
        std::vector<char> traded(n, 0);
        for (int i : order) {
            if (decided[i] || traded[i]) continue;
            for (const Coord& nb : grid.neighbors(pos[i])) {
                if (grid.distance(nb, target[i]) >= d[i]) continue;
                int j = occ[grid.index(nb)];
                if (j < 0 || j == i) continue;
                if (next_cell[j] != grid.index(pos[j])) continue;  // j is moving anyway
                std::swap(target[i], target[j]);
                traded[i] = traded[j] = 1;
                swapped = true;
                break;
            }
        }

        bool moved = false;
        for (int i = 0; i < n; ++i)
            if (next_cell[i] != grid.index(pos[i])) moved = true;

        if (moved) {
            stall = 0;
            for (int i = 0; i < n; ++i) occ[grid.index(pos[i])] = -1;
            for (int i = 0; i < n; ++i) {
                pos[i] = grid.coord(next_cell[i]);
                occ[next_cell[i]] = i;
                paths[i].push_back(pos[i]);
            }
        } else {
            ++stall;
            // Without movement or target trades the step is a fixpoint.
            if (!swapped || stall >= stall_limit) {
                SequentialFallback(grid, pos, target, paths, occ).run();
                break;
            }
        }
    }

    UnlabeledResult result;
    result.makespan = static_cast<int>(paths[0].size()) - 1;
    result.paths = std::move(paths);
    result.assignment = assignment;
    return result;
}

namespace {

// Dinic max flow, small scale.
class MaxFlow {
public:
    explicit MaxFlow(int nodes) : head_(nodes, -1) {}

    void add_edge(int from, int to, int cap) {
        edges_.push_back({to, head_[from], cap});
        head_[from] = static_cast<int>(edges_.size()) - 1;
        edges_.push_back({from, head_[to], 0});
        head_[to] = static_cast<int>(edges_.size()) - 1;
    }

    int run(int source, int sink) {
        int flow = 0;
        while (bfs(source, sink)) {
            iter_ = head_;
            while (int f = dfs(source, sink, 1 << 30)) flow += f;
        }
        return flow;
    }

private:
    struct Edge {
        int to, next, cap;
    };

    bool bfs(int source, int sink) {
        level_.assign(head_.size(), -1);
        std::queue<int> q;
        q.push(source);
        level_[source] = 0;
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int e = head_[u]; e != -1; e = edges_[e].next)
                if (edges_[e].cap > 0 && level_[edges_[e].to] < 0) {
                    level_[edges_[e].to] = level_[u] + 1;
                    q.push(edges_[e].to);
                }
        }
        return level_[sink] >= 0;
    }

    int dfs(int u, int sink, int limit) {
        if (u == sink) return limit;
        for (int& e = iter_[u]; e != -1; e = edges_[e].next) {
            Edge& ed = edges_[e];
            if (ed.cap > 0 && level_[ed.to] == level_[u] + 1) {
                int f = dfs(ed.to, sink, std::min(limit, ed.cap));
                if (f > 0) {
                    ed.cap -= f;
                    edges_[e ^ 1].cap += f;
                    return f;
                }
            }
        }
        return 0;
    }

    std::vector<int> head_;
    std::vector<Edge> edges_;
    std::vector<int> level_;
    std::vector<int> iter_;
};

}  // namespace

bool exact_feasible(const Grid3D& grid, const std::vector<Coord>& starts,
                    const std::vector<Coord>& slots, int horizon) {
    if (horizon < 0) throw std::invalid_argument("exact_feasible: negative horizon");
    long states = static_cast<long>(grid.num_free()) * (horizon + 1);
    if (states > 20000)
        throw std::invalid_argument("exact_feasible: instance beyond oracle size guard");

    // Compact ids for free cells.
    std::vector<int> cell_id(grid.num_cells(), -1);
    std::vector<Coord> cells;
    for (int idx = 0; idx < grid.num_cells(); ++idx) {
        Coord c = grid.coord(idx);
        if (grid.is_free(c)) {
            cell_id[idx] = static_cast<int>(cells.size());
            cells.push_back(c);
        }
    }
    int nc = static_cast<int>(cells.size());

    // Node layout per time layer: in(c), out(c); swap gadgets appended after.
    auto node_in = [&](int c, int t) { return 2 * (t * nc + c); };
    auto node_out = [&](int c, int t) { return 2 * (t * nc + c) + 1; };
    int base = 2 * nc * (horizon + 1);

    // Count directed grid edges once (u < v) for gadget node allocation.
    std::vector<std::pair<int, int>> grid_edges;
    for (int c = 0; c < nc; ++c)
        for (const Coord& nb : grid.neighbors(cells[c])) {
            int c2 = cell_id[grid.index(nb)];
            if (c < c2) grid_edges.emplace_back(c, c2);
        }

    int gadgets = static_cast<int>(grid_edges.size()) * horizon;
    int source = base + 2 * gadgets;
    int sink = source + 1;
    MaxFlow flow(sink + 1);

    for (int t = 0; t <= horizon; ++t)
        for (int c = 0; c < nc; ++c) flow.add_edge(node_in(c, t), node_out(c, t), 1);
    for (int t = 0; t < horizon; ++t) {
        for (int c = 0; c < nc; ++c) flow.add_edge(node_out(c, t), node_in(c, t + 1), 1);
        for (size_t e = 0; e < grid_edges.size(); ++e) {
            // A single unit may cross the edge per step, in either direction.
            int g_in = base + 2 * (t * grid_edges.size() + e);
            int g_out = g_in + 1;
            auto [u, v] = grid_edges[e];
            flow.add_edge(g_in, g_out, 1);
            flow.add_edge(node_out(u, t), g_in, 1);
            flow.add_edge(node_out(v, t), g_in, 1);
            flow.add_edge(g_out, node_in(u, t + 1), 1);
            flow.add_edge(g_out, node_in(v, t + 1), 1);
        }
    }
    for (const Coord& s : starts) flow.add_edge(source, node_in(cell_id[grid.index(s)], 0), 1);
    for (const Coord& g : slots) flow.add_edge(node_out(cell_id[grid.index(g)], horizon), sink, 1);

    return flow.run(source, sink) == static_cast<int>(starts.size());
}

}  // namespace rubikroute

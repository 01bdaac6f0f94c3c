#include "rubikroute/matching.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <queue>
#include <stdexcept>

namespace rubikroute {

namespace {

constexpr int kInf = std::numeric_limits<int>::max();

struct HopcroftKarp {
    int n_left, n_right;
    const std::vector<std::vector<int>>& adj;
    std::vector<int>& match_l;
    std::vector<int>& match_r;
    std::vector<int> dist;

    bool bfs() {
        std::queue<int> q;
        dist.assign(n_left, kInf);
        for (int l = 0; l < n_left; ++l)
            if (match_l[l] < 0) {
                dist[l] = 0;
                q.push(l);
            }
        bool found = false;
        while (!q.empty()) {
            int l = q.front();
            q.pop();
            for (int r : adj[l]) {
                int l2 = match_r[r];
                if (l2 < 0) {
                    found = true;
                } else if (dist[l2] == kInf) {
                    dist[l2] = dist[l] + 1;
                    q.push(l2);
                }
            }
        }
        return found;
    }

    bool dfs(int l) {
        for (int r : adj[l]) {
            int l2 = match_r[r];
            if (l2 < 0 || (dist[l2] == dist[l] + 1 && dfs(l2))) {
                match_l[l] = r;
                match_r[r] = l;
                return true;
            }
        }
        dist[l] = kInf;
        return false;
    }
};

}  // namespace

int hopcroft_karp(int n_left, int n_right, const std::vector<std::vector<int>>& adj,
                  std::vector<int>& match_l, std::vector<int>& match_r) {
    match_l.resize(n_left, -1);
    match_r.resize(n_right, -1);
    int matched = 0;
    for (int l = 0; l < n_left; ++l)
        if (match_l[l] >= 0) ++matched;
    HopcroftKarp hk{n_left, n_right, adj, match_l, match_r, {}};
    while (hk.bfs()) {
        for (int l = 0; l < n_left; ++l)
            if (match_l[l] < 0 && hk.dfs(l)) ++matched;
    }
    return matched;
}

MatchingSet decompose_regular(const BipartiteMultigraph& g, int degree) {
    if (g.n_left != g.n_right)
        throw std::invalid_argument("decompose_regular: partite sets must have equal size");
    int n = g.n_left;
    std::vector<int> deg_l(n, 0), deg_r(n, 0);
    for (const MultiEdge& e : g.edges) {
        if (e.left < 0 || e.left >= n || e.right < 0 || e.right >= n)
            throw std::invalid_argument("decompose_regular: edge endpoint out of range");
        ++deg_l[e.left];
        ++deg_r[e.right];
    }
    for (int v = 0; v < n; ++v)
        if (deg_l[v] != degree || deg_r[v] != degree)
            throw std::invalid_argument("decompose_regular: graph is not " +
                                        std::to_string(degree) + "-regular");

    // Remaining edge instances per (left,right) pair, smallest index first.
    std::map<std::pair<int, int>, std::vector<int>> instances;
    for (int i = static_cast<int>(g.edges.size()) - 1; i >= 0; --i)
        instances[{g.edges[i].left, g.edges[i].right}].push_back(i);

    MatchingSet result;
    for (int round = 0; round < degree; ++round) {
        std::vector<std::vector<int>> adj(n);
        for (const auto& [pair, idxs] : instances)
            if (!idxs.empty()) adj[pair.first].push_back(pair.second);
        std::vector<int> match_l(n, -1), match_r(n, -1);
        if (hopcroft_karp(n, n, adj, match_l, match_r) != n)
            throw std::runtime_error("decompose_regular: no perfect matching found");
        std::vector<MultiEdge> matching;
        matching.reserve(n);
        for (int l = 0; l < n; ++l) {
            auto& idxs = instances[{l, match_l[l]}];
            matching.push_back(g.edges[idxs.back()]);
            idxs.pop_back();
        }
        result.matchings.push_back(std::move(matching));
    }
    return result;
}

namespace {

// Perfect matching using only cost <= threshold; true on success.
bool threshold_feasible(const CostMatrix& c, int64_t threshold, std::vector<int>& match_l) {
    std::vector<std::vector<int>> adj(c.n);
    for (int i = 0; i < c.n; ++i)
        for (int j = 0; j < c.n; ++j)
            if (c.at(i, j) <= threshold) adj[i].push_back(j);
    match_l.assign(c.n, -1);
    std::vector<int> match_r(c.n, -1);
    return hopcroft_karp(c.n, c.n, adj, match_l, match_r) == c.n;
}

}  // namespace

std::vector<int> hungarian(const CostMatrix& costs) {
    // Jonker-Volgenant style shortest augmenting path, 1-based internals.
    int n = costs.n;
    const int64_t inf = std::numeric_limits<int64_t>::max() / 4;
    std::vector<int64_t> u(n + 1, 0), v(n + 1, 0), minv(n + 1);
    std::vector<int> p(n + 1, 0), way(n + 1, 0);
    for (int i = 1; i <= n; ++i) {
        p[0] = i;
        int j0 = 0;
        minv.assign(n + 1, inf);
        std::vector<char> used(n + 1, false);
        do {
            used[j0] = true;
            int i0 = p[j0], j1 = 0;
            int64_t delta = inf;
            for (int j = 1; j <= n; ++j)
                if (!used[j]) {
                    int64_t cur = costs.at(i0 - 1, j - 1) - u[i0] - v[j];
                    if (cur < minv[j]) {
                        minv[j] = cur;
                        way[j] = j0;
                    }
                    if (minv[j] < delta) {
                        delta = minv[j];
                        j1 = j;
                    }
                }
            for (int j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            int j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0);
    }
    std::vector<int> assignment(n, -1);
    for (int j = 1; j <= n; ++j)
        if (p[j]) assignment[p[j] - 1] = j - 1;
    return assignment;
}

LbaResult lba(const CostMatrix& costs) {
    if (costs.n == 0) return {};
    if (static_cast<int>(costs.cost.size()) != costs.n * costs.n)
        throw std::invalid_argument("lba: matrix must be square");
    std::vector<int64_t> values = costs.cost;
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());

    std::vector<int> match_l;
    int lo = 0, hi = static_cast<int>(values.size()) - 1;
    if (!threshold_feasible(costs, values[hi], match_l))
        throw std::invalid_argument("lba: no perfect assignment exists");
    while (lo < hi) {
        int mid = (lo + hi) / 2;
        if (threshold_feasible(costs, values[mid], match_l))
            hi = mid;
        else
            lo = mid + 1;
    }
    int64_t bottleneck = values[lo];

    // Tie-break: min total cost among assignments within the bottleneck.
    CostMatrix masked = costs;
    int64_t big = bottleneck < 0 ? 1 : bottleneck + 1;
    big += static_cast<int64_t>(costs.n) * (bottleneck > 0 ? bottleneck : 1);
    for (auto& c : masked.cost)
        if (c > bottleneck) c = big;
    return LbaResult{hungarian(masked), bottleneck};
}

MatchingSet lba_matching_sequence(int num_columns, const std::vector<SequenceRobot>& robots,
                                  int heights,
                                  const std::function<int64_t(int robot, int height)>& cost) {
    if (static_cast<int>(robots.size()) != num_columns * heights)
        throw std::invalid_argument("lba_matching_sequence: robot count mismatch");
    std::vector<int> deg_l(num_columns, 0), deg_r(num_columns, 0);
    for (const SequenceRobot& r : robots) {
        ++deg_l[r.current_column];
        ++deg_r[r.target_column];
    }
    for (int c = 0; c < num_columns; ++c)
        if (deg_l[c] != heights || deg_r[c] != heights)
            throw std::invalid_argument("lba_matching_sequence: graph is not regular");

    std::vector<char> taken(robots.size(), false);
    MatchingSet result;
    for (int k = 0; k < heights; ++k) {
        // Collapse remaining robots to one edge per (column, color), keeping
        // the cheapest robot for height k (smallest index on ties).
        std::map<std::pair<int, int>, std::pair<int64_t, int>> best;
        for (int i = 0; i < static_cast<int>(robots.size()); ++i) {
            if (taken[i]) continue;
            int64_t c = cost(i, k);
            auto key = std::make_pair(robots[i].current_column, robots[i].target_column);
            auto it = best.find(key);
            if (it == best.end() || c < it->second.first) best[key] = {c, i};
        }
        std::vector<int64_t> values;
        values.reserve(best.size());
        for (const auto& [key, val] : best) values.push_back(val.first);
        std::sort(values.begin(), values.end());
        values.erase(std::unique(values.begin(), values.end()), values.end());

        auto feasible = [&](int64_t threshold, std::vector<int>& match_l) {
            std::vector<std::vector<int>> adj(num_columns);
            for (const auto& [key, val] : best)
                if (val.first <= threshold) adj[key.first].push_back(key.second);
            match_l.assign(num_columns, -1);
            std::vector<int> match_r(num_columns, -1);
            return hopcroft_karp(num_columns, num_columns, adj, match_l, match_r) ==
                   num_columns;
        };

        std::vector<int> match_l;
        int lo = 0, hi = static_cast<int>(values.size()) - 1;
        if (values.empty() || !feasible(values[hi], match_l))
            throw std::runtime_error("lba_matching_sequence: regularity lost mid-sequence");
        while (lo < hi) {
            int mid = (lo + hi) / 2;
            if (feasible(values[mid], match_l))
                hi = mid;
            else
                lo = mid + 1;
        }
        feasible(values[lo], match_l);

        std::vector<MultiEdge> matching;
        matching.reserve(num_columns);
        for (int c = 0; c < num_columns; ++c) {
            int robot = best.at({c, match_l[c]}).second;
            matching.push_back(MultiEdge{c, match_l[c], robot});
            taken[robot] = true;
        }
        result.matchings.push_back(std::move(matching));
    }
    return result;
}

std::vector<int> assign_matchings_to_heights(
    int num_matchings, const std::function<int64_t(int matching, int height)>& cost) {
    CostMatrix c;
    c.n = num_matchings;
    c.cost.resize(static_cast<size_t>(num_matchings) * num_matchings);
    for (int m = 0; m < num_matchings; ++m)
        for (int h = 0; h < num_matchings; ++h) c.at(m, h) = cost(m, h);
    return lba(c).assignment;
}

}  // namespace rubikroute

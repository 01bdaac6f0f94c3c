#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace rubikroute {

/// One edge of a bipartite multigraph; tag identifies the robot that
/// contributed the edge.
struct MultiEdge {
    int left = 0;
    int right = 0;
    int tag = 0;
};

struct BipartiteMultigraph {
    int n_left = 0;
    int n_right = 0;
    std::vector<MultiEdge> edges;
};

/// d perfect matchings partitioning the edge multiset of a d-regular graph.
struct MatchingSet {
    std::vector<std::vector<MultiEdge>> matchings;
};

/// Maximum bipartite matching (Hopcroft-Karp). adj[l] lists right nodes.
/// match_l/match_r may carry a valid partial matching as a warm start;
/// pass vectors of -1 for a cold start. Returns the matching size.
int hopcroft_karp(int n_left, int n_right, const std::vector<std::vector<int>>& adj,
                  std::vector<int>& match_l, std::vector<int>& match_r);

/// Split a d-regular bipartite multigraph into d perfect matchings by
/// repeated augmenting-path matching extraction.
MatchingSet decompose_regular(const BipartiteMultigraph& g, int degree);

struct CostMatrix {
    int n = 0;
    std::vector<int64_t> cost;  // row-major

    int64_t at(int i, int j) const { return cost[static_cast<size_t>(i) * n + j]; }
    int64_t& at(int i, int j) { return cost[static_cast<size_t>(i) * n + j]; }
};

struct LbaResult {
    std::vector<int> assignment;  // row i -> column assignment[i]
    int64_t bottleneck = 0;
};

/// Linear bottleneck assignment: permutation minimizing the maximum selected
/// cost. Threshold binary search with matching feasibility tests; among
/// assignments achieving the optimal bottleneck, the minimum-total-cost one
/// is returned (deterministic).
LbaResult lba(const CostMatrix& costs);

/// Min-sum assignment (Kuhn-Munkres), used for LBA tie-breaking.
std::vector<int> hungarian(const CostMatrix& costs);

/// A robot edge for the greedy LBA matching sequence.
struct SequenceRobot {
    int current_column = 0;
    int target_column = 0;
};

/// Greedy bottleneck matching sequence: matching k minimizes the bottleneck
/// of cost(robot, k) over the robots remaining after matchings 0..k-1.
/// The robot multiset must induce a d-regular multigraph on columns with
/// d == heights. Edge tags carry the concrete robot achieving the per-edge
/// cost minimum.
MatchingSet lba_matching_sequence(int num_columns, const std::vector<SequenceRobot>& robots,
                                  int heights,
                                  const std::function<int64_t(int robot, int height)>& cost);

/// LBA over the matrix C[m][h] = cost(matching m, height h); returns the
/// height assigned to each matching.
std::vector<int> assign_matchings_to_heights(
    int num_matchings, const std::function<int64_t(int matching, int height)>& cost);

}  // namespace rubikroute

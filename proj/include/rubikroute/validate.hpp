#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rubikroute/grid.hpp"

namespace rubikroute {

struct Violation {
    std::string kind;  // "endpoint", "continuity", "bounds", "obstacle", "vertex", "swap"
    int timestep = 0;
    std::vector<int> robots;
    std::string detail;
};

struct ValidationReport {
    bool ok = false;
    std::vector<Violation> violations;  // first 100 only
    int makespan = 0;                   // last timestep with any movement
    int lower_bound = 0;
    double ratio = 0.0;
};

/// Independent audit of raw per-robot paths against start/goal endpoints:
/// continuity (wait or 6-neighbor step), bounds, obstacles, vertex
/// collisions, and edge-swap collisions. Paths shorter than the longest one
/// are treated as waiting at their final position. Deliberately shares no
/// code with the motion-synthesis modules.
ValidationReport validate_paths(const Grid3D& grid, const std::vector<Coord>& starts,
                                const std::vector<Coord>& goals,
                                const std::vector<std::vector<Coord>>& paths);

/// makespan / max(lower_bound, 1); 0 for an empty plan.
double optimality_ratio(int makespan, int lower_bound);

struct PhaseBreakdown {
    int unlabeled1 = 0;
    int z1 = 0;
    int xy = 0;
    int z2 = 0;
    int unlabeled2 = 0;
};

struct BenchRow {
    std::string algorithm;
    int m1 = 0, m2 = 0, m3 = 0;
    double density = 0.0;
    uint64_t seed = 0;
    int robots = 0;
    int makespan = 0;
    int lower_bound = 0;
    double ratio = 0.0;
    int64_t runtime_ms = 0;
    PhaseBreakdown phases;
};

std::string csv_header();
std::string csv_row(const BenchRow& row);

struct AggregateRow {
    std::string algorithm;
    int m1 = 0, m2 = 0, m3 = 0;
    double density = 0.0;
    int count = 0;
    double mean_makespan = 0.0, min_makespan = 0.0, max_makespan = 0.0;
    double mean_ratio = 0.0, mean_runtime_ms = 0.0;
};

/// One row per (algorithm, size, density) in deterministic order.
std::vector<AggregateRow> aggregate(const std::vector<BenchRow>& rows);

}  // namespace rubikroute

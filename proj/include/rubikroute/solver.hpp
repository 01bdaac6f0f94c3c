#pragma once

#include <vector>

#include "rubikroute/instance.hpp"
#include "rubikroute/validate.hpp"

namespace rubikroute {

enum class Algorithm { Rth3d, Rth3dLba };

struct SolverOptions {
    Algorithm algorithm = Algorithm::Rth3dLba;
};

struct Plan {
    std::vector<std::vector<Coord>> paths;  // real robots only, uniform length
    int makespan = 0;
    int lower_bound = 0;
    double ratio = 0.0;
    PhaseBreakdown phases;
};

/// Runs the full pipeline: pad to capacity, route starts and goals onto the
/// vertical centered slots (unlabeled), z-round, xy fitting with the two
/// orientation conversions, final z-round, then the goal-side unlabeled plan
/// time-reversed. Every stage is executed for the whole padded fleet and
/// audited internally; virtual robots are stripped from the returned plan.
Plan solve(const Instance& instance, const SolverOptions& opts = {});

/// max over real robots of grid distance(start, goal).
int solve_lower_bound(const Instance& instance);

}  // namespace rubikroute

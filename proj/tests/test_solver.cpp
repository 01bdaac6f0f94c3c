#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>

#include "rubikroute/solver.hpp"

using namespace rubikroute;

namespace {

void check_plan(const Instance& inst, const Plan& plan) {
    REQUIRE(static_cast<int>(plan.paths.size()) == inst.num_real());
    std::vector<Coord> starts(inst.starts.begin(), inst.starts.begin() + inst.num_real());
    std::vector<Coord> goals(inst.goals.begin(), inst.goals.begin() + inst.num_real());
    ValidationReport rep = validate_paths(inst.grid, starts, goals, plan.paths);
    if (!rep.ok)
        for (const Violation& v : rep.violations)
            MESSAGE(v.kind, " at t=", v.timestep, ": ", v.detail);
    CHECK(rep.ok);
    CHECK(rep.makespan == plan.makespan);
    CHECK(plan.lower_bound == solve_lower_bound(inst));
    CHECK(plan.ratio == doctest::Approx(optimality_ratio(plan.makespan, plan.lower_bound)));
}

int phase_sum(const PhaseBreakdown& p) {
    return p.unlabeled1 + p.z1 + p.xy + p.z2 + p.unlabeled2;
}

}  // namespace

TEST_CASE("start-equals-goal instances still produce valid round trips") {
    // The pipeline routes through the centered slots even when nobody has to
    // move, so the plan is nontrivial but must end where it started.
    Grid3D g(6, 6, 3);
    Instance inst = generate(g, {PatternKind::UniformRandom, 1.0 / 3.0}, 4);
    inst.goals = inst.starts;
    for (Algorithm algo : {Algorithm::Rth3d, Algorithm::Rth3dLba}) {
        Plan plan = solve(inst, {algo});
        check_plan(inst, plan);
        CHECK(plan.lower_bound == 0);
    }
}

TEST_CASE("small uniform instances produce valid plans within the phase budget") {
    for (ObstaclePattern obs : {ObstaclePattern::None, ObstaclePattern::Buildings}) {
        Grid3D g(6, 6, 3, obs);
        double density = obs == ObstaclePattern::None ? 1.0 / 3.0 : 2.0 / 9.0;
        for (uint64_t seed = 1; seed <= 5; ++seed) {
            Instance inst = generate(g, {PatternKind::UniformRandom, density}, seed);
            for (Algorithm algo : {Algorithm::Rth3d, Algorithm::Rth3dLba}) {
                Plan plan = solve(inst, {algo});
                check_plan(inst, plan);
                CHECK(plan.makespan <= phase_sum(plan.phases));
                // Prop. 3 shape: each shuffle phase fits its round budgets.
                CHECK(plan.phases.z1 <= 3 + 5 + 2);           // m3 round + slack
                CHECK(plan.phases.xy <= 3 * (6 + 5) + 2 * 3);  // three rounds + recenters
                CHECK(plan.phases.z2 <= 3 + 1);
            }
        }
    }
}

TEST_CASE("sub-capacity fleets are padded transparently") {
    Grid3D g(6, 6, 3);
    Instance inst = generate(g, {PatternKind::UniformRandom, 0.1}, 11);
    REQUIRE(inst.num_real() < g.capacity());
    Plan plan = solve(inst);
    check_plan(inst, plan);
}

TEST_CASE("solving is deterministic") {
    Grid3D g(9, 6, 3, ObstaclePattern::Buildings);
    Instance inst = generate(g, {PatternKind::UniformRandom, 0.15}, 21);
    Plan a = solve(inst, {Algorithm::Rth3dLba});
    Plan b = solve(inst, {Algorithm::Rth3dLba});
    CHECK(a.paths == b.paths);
    CHECK(a.makespan == b.makespan);
}

TEST_CASE("lower bound is the worst single-robot distance over real robots") {
    Grid3D g(6, 6, 3, ObstaclePattern::Buildings);
    Instance inst = pad_virtual(generate(g, {PatternKind::UniformRandom, 0.15}, 31));
    int want = 0;
    for (int i = 0; i < inst.num_real(); ++i)
        want = std::max(want, g.distance(inst.starts[i], inst.goals[i]));
    CHECK(solve_lower_bound(inst) == want);
}

TEST_CASE("structured patterns solve with both algorithms") {
    Grid3D cube(12, 12, 12);
    for (PatternKind kind : {PatternKind::Rings, PatternKind::Blocks}) {
        Instance inst = generate(cube, {kind, 0.25}, 2);
        for (Algorithm algo : {Algorithm::Rth3d, Algorithm::Rth3dLba}) {
            Plan plan = solve(inst, {algo});
            check_plan(inst, plan);
        }
    }
}

TEST_CASE("the balanced variant does not lose to the plain one on average") {
    Grid3D g(12, 12, 6);
    double plain = 0.0, balanced = 0.0;
    for (uint64_t seed = 1; seed <= 8; ++seed) {
        Instance inst = generate(g, {PatternKind::UniformRandom, 1.0 / 3.0}, seed);
        plain += solve(inst, {Algorithm::Rth3d}).makespan;
        balanced += solve(inst, {Algorithm::Rth3dLba}).makespan;
    }
    CHECK(balanced <= plain);
}

TEST_CASE("path length is uniform and equals makespan + 1") {
    Grid3D g(6, 6, 3);
    Instance inst = generate(g, {PatternKind::UniformRandom, 0.2}, 41);
    Plan plan = solve(inst);
    for (const auto& p : plan.paths)
        CHECK(static_cast<int>(p.size()) == plan.makespan + 1);
}

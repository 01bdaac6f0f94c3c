// Acceptance gate: one pass/fail line per criterion, nonzero exit on any
// failure. Tolerances are pinned in the constants below.
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <string>
#include <vector>

#include "rubikroute/instance.hpp"
#include "rubikroute/matching.hpp"
#include "rubikroute/rng.hpp"
#include "rubikroute/rubik.hpp"
#include "rubikroute/solver.hpp"
#include "rubikroute/unlabeled.hpp"
#include "rubikroute/validate.hpp"

using namespace rubikroute;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

void verdict(int criterion, bool pass, const std::string& detail) {
    std::printf("criterion %2d: %s — %s\n", criterion, pass ? "PASS" : "FAIL",
                detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct SolveRecord {
    int m1, m2, m3;
    Plan plan;
};

bool validate_real(const Instance& inst, const Plan& plan) {
    std::vector<Coord> s(inst.starts.begin(), inst.starts.begin() + inst.num_real());
    std::vector<Coord> g(inst.goals.begin(), inst.goals.begin() + inst.num_real());
    ValidationReport rep = validate_paths(inst.grid, s, g, plan.paths);
    return rep.ok && rep.makespan == plan.makespan;
}

// --- criteria 1, 3, 4: correctness sweep + worst-case and round budgets ----

void criteria_1_3_4() {
    const std::vector<std::array<int, 3>> sizes{
        {6, 6, 3}, {12, 12, 6}, {24, 12, 6}, {48, 24, 12}};
    const std::vector<double> densities{1.0 / 9.0, 2.0 / 9.0, 1.0 / 3.0};
    const int kInstances = 100;
    const double kBudgetSeconds = 600.0;

    Clock::time_point t0 = Clock::now();
    bool all_valid = true, prop3 = true, rounds_ok = true;
    std::string first_fail;
    int made = 0;
    std::vector<SolveRecord> records;
    for (uint64_t seed = 1; made < kInstances; ++seed) {
        for (const auto& dims : sizes) {
            for (double density : densities) {
                if (made == kInstances) break;
                ++made;
                Grid3D grid(dims[0], dims[1], dims[2]);
                Instance inst = generate(grid, {PatternKind::UniformRandom, density}, seed);
                for (Algorithm algo : {Algorithm::Rth3d, Algorithm::Rth3dLba}) {
                    Plan plan = solve(inst, {algo});
                    if (!validate_real(inst, plan)) {
                        all_valid = false;
                        if (first_fail.empty())
                            first_fail = std::to_string(dims[0]) + "x" +
                                         std::to_string(dims[1]) + "x" +
                                         std::to_string(dims[2]) + " seed " +
                                         std::to_string(seed);
                    }
                    if (plan.makespan > 3 * dims[0] + 4 * dims[1] + 4 * dims[2] + 50)
                        prop3 = false;
                    // Round budgets, aggregated per phase (the solver also
                    // hard-asserts <= L+5 per executed round).
                    if (plan.phases.z1 > dims[2] + 5 || plan.phases.z2 > dims[2] + 5 ||
                        plan.phases.xy > (dims[1] + 5) + (dims[0] + 5) + (dims[1] + 5))
                        rounds_ok = false;
                }
            }
        }
    }
    double elapsed = seconds_since(t0);
    bool in_time = elapsed < kBudgetSeconds;
    char buf[160];
    std::snprintf(buf, sizeof buf, "%d instances x 2 algorithms valid in %.1f s (< %.0f s)",
                  kInstances, elapsed, kBudgetSeconds);
    verdict(1, all_valid && in_time,
            all_valid ? buf : ("first invalid plan at " + first_fail).c_str());
    verdict(3, prop3, "makespan <= 3*m1 + 4*m2 + 4*m3 + 50 on every sweep instance");
    verdict(4, rounds_ok,
            "every shuffle round within axis length + 5 (solver hard-asserts per round)");
}

// --- criteria 2 and 5: Rubik-portion bound + 4:2:1 ratio trend -------------

void criteria_2_5() {
    const int kSeeds = 20;
    const std::vector<std::array<int, 3>> sizes{{24, 12, 6}, {48, 24, 12}, {96, 48, 24}};

    bool rubik_bound = true;
    int worst_rubik = 0;
    std::map<Algorithm, std::vector<double>> mean_ratio;
    for (const auto& dims : sizes) {
        Grid3D grid(dims[0], dims[1], dims[2]);
        for (Algorithm algo : {Algorithm::Rth3d, Algorithm::Rth3dLba}) {
            double sum = 0.0;
            for (uint64_t seed = 1; seed <= kSeeds; ++seed) {
                Instance inst = generate(grid, {PatternKind::UniformRandom, 1.0 / 3.0}, seed);
                Plan plan = solve(inst, {algo});
                sum += plan.ratio;
                if (dims[0] == 48) {
                    int rubik = plan.phases.z1 + plan.phases.xy + plan.phases.z2;
                    worst_rubik = std::max(worst_rubik, rubik);
                    if (rubik > 48 + 2 * 24 + 2 * 12 + 50) rubik_bound = false;
                }
            }
            mean_ratio[algo].push_back(sum / kSeeds);
        }
    }
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "48x24x12: z1+xy+z2 <= 170 for all %d seeds, both algorithms (worst %d)",
                  kSeeds, worst_rubik);
    verdict(2, rubik_bound, buf);

    const auto& plain = mean_ratio[Algorithm::Rth3d];
    const auto& lba = mean_ratio[Algorithm::Rth3dLba];
    bool trend = plain[0] > plain[1] && plain[1] > plain[2] && lba[0] > lba[1] &&
                 lba[1] > lba[2];
    bool caps = lba[2] <= 1.75 && plain[2] <= 1.95;
    std::snprintf(buf, sizeof buf,
                  "mean ratio rth3d %.3f>%.3f>%.3f (<=1.95), rth3d-lba %.3f>%.3f>%.3f (<=1.75)",
                  plain[0], plain[1], plain[2], lba[0], lba[1], lba[2]);
    verdict(5, trend && caps, buf);
}

// --- criterion 6: flat-grid trend -------------------------------------------

void criterion_6() {
    const int kSeeds = 20;
    std::vector<double> means;
    for (int m : {24, 48, 96}) {
        Grid3D grid(m, m, 6);
        double sum = 0.0;
        for (uint64_t seed = 1; seed <= kSeeds; ++seed) {
            Instance inst = generate(grid, {PatternKind::UniformRandom, 1.0 / 3.0}, seed);
            sum += solve(inst, {Algorithm::Rth3dLba}).ratio;
        }
        means.push_back(sum / kSeeds);
    }
    bool pass = means[0] > means[1] && means[1] > means[2] && means[2] <= 1.75;
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "m x m x 6 rth3d-lba mean ratio %.3f > %.3f > %.3f, largest <= 1.75",
                  means[0], means[1], means[2]);
    verdict(6, pass, buf);
}

// --- criterion 7: building obstacles ----------------------------------------

void criterion_7() {
    const int kSeeds = 20;
    Grid3D grid(36, 18, 9, ObstaclePattern::Buildings);
    bool all_valid = true;
    double sum = 0.0;
    for (uint64_t seed = 1; seed <= kSeeds; ++seed) {
        Instance inst = generate(grid, {PatternKind::UniformRandom, 2.0 / 9.0}, seed);
        Plan plan = solve(inst, {Algorithm::Rth3dLba});
        if (!validate_real(inst, plan)) all_valid = false;
        sum += plan.ratio;
    }
    double mean = sum / kSeeds;
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "36x18x9 buildings at 2/9: all valid, mean ratio %.3f <= 2.2", mean);
    verdict(7, all_valid && mean <= 2.2, buf);
}

// --- criterion 8: ring and block patterns -----------------------------------

void criterion_8() {
    const int kRingSeeds = 10, kBlockSeeds = 3;
    std::vector<double> ring_means;
    bool valid = true;
    for (int m : {12, 24, 36}) {
        Grid3D grid(m, m, m);
        double sum = 0.0;
        for (uint64_t seed = 1; seed <= kRingSeeds; ++seed) {
            Instance inst = generate(grid, {PatternKind::Rings, 1.0 / 3.0}, seed);
            Plan plan = solve(inst, {Algorithm::Rth3dLba});
            if (!validate_real(inst, plan)) valid = false;
            sum += plan.ratio;
        }
        ring_means.push_back(sum / kRingSeeds);
        for (uint64_t seed = 1; seed <= kBlockSeeds; ++seed) {
            Instance inst = generate(grid, {PatternKind::Blocks, 1.0 / 3.0}, seed);
            if (!validate_real(inst, solve(inst, {Algorithm::Rth3dLba}))) valid = false;
        }
    }
    bool trend = ring_means[0] > ring_means[1] && ring_means[1] > ring_means[2];
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "ring mean ratio %.3f > %.3f > %.3f; blocks valid at all sizes",
                  ring_means[0], ring_means[1], ring_means[2]);
    verdict(8, trend && valid, buf);
}

// --- criterion 9: abstract Rubik shuffle counts ------------------------------

void criterion_9() {
    Rng rng(901);
    bool ok = true;
    for (int trial = 0; trial < 200 && ok; ++trial) {
        int m1 = 2 + static_cast<int>(rng.below(8));
        int m2 = 2 + static_cast<int>(rng.below(m1 - 1));
        AbstractTable2D t{m1, m2, std::vector<int>(static_cast<size_t>(m1) * m2)};
        std::iota(t.item.begin(), t.item.end(), 0);
        rng.shuffle(t.item);
        std::vector<TableShuffle> shuffles = rta2d(t);
        if (static_cast<int>(shuffles.size()) > m1 + 2 * m2) ok = false;
        for (const TableShuffle& s : shuffles) apply_shuffle(t, s);
        if (!t.sorted()) ok = false;
    }
    for (int trial = 0; trial < 200 && ok; ++trial) {
        int m1 = 2 + static_cast<int>(rng.below(5));
        int m2 = 2 + static_cast<int>(rng.below(m1 - 1));
        int m3 = 2 + static_cast<int>(rng.below(m2 - 1));
        AbstractTable3D t{m1, m2, m3, std::vector<int>(static_cast<size_t>(m1) * m2 * m3)};
        std::iota(t.item.begin(), t.item.end(), 0);
        rng.shuffle(t.item);
        std::vector<TableShuffle> shuffles = rta3d(t);
        if (static_cast<int>(shuffles.size()) > 2 * m1 * m2 + m3 * (2 * m2 + m1)) ok = false;
        for (const TableShuffle& s : shuffles) apply_shuffle(t, s);
        if (!t.sorted()) ok = false;
    }
    verdict(9, ok, "200 random tables each: rta2d/rta3d within shuffle budget and sorted");
}

// --- criterion 10: combinatorial oracles -------------------------------------

int64_t exhaustive_bottleneck(const CostMatrix& c) {
    std::vector<int> perm(c.n);
    std::iota(perm.begin(), perm.end(), 0);
    int64_t best = INT64_MAX;
    do {
        int64_t worst = 0;
        for (int i = 0; i < c.n; ++i) worst = std::max(worst, c.at(i, perm[i]));
        best = std::min(best, worst);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

int brute_force_makespan(const Grid3D& grid, const std::vector<Coord>& starts,
                         const std::vector<Coord>& slots, int cap) {
    auto mask_of = [&](const std::vector<Coord>& v) {
        uint32_t m = 0;
        for (const Coord& c : v) m |= 1u << grid.index(c);
        return m;
    };
    uint32_t start = mask_of(starts), goal = mask_of(slots);
    if (start == goal) return 0;
    std::map<uint32_t, int> depth{{start, 0}};
    std::queue<uint32_t> q;
    q.push(start);
    while (!q.empty()) {
        uint32_t mask = q.front();
        q.pop();
        int d = depth[mask];
        if (d >= cap) continue;
        std::vector<int> cells;
        for (int i = 0; i < grid.num_cells(); ++i)
            if (mask & (1u << i)) cells.push_back(i);
        std::set<uint32_t> successors;
        std::vector<int> dest(cells.size());
        std::function<void(size_t, uint32_t)> rec = [&](size_t k, uint32_t used) {
            if (k == cells.size()) {
                for (size_t a = 0; a < cells.size(); ++a)
                    for (size_t b = a + 1; b < cells.size(); ++b)
                        if (dest[a] == cells[b] && dest[b] == cells[a] && dest[a] != cells[a])
                            return;
                uint32_t next = 0;
                for (int cell : dest) next |= 1u << cell;
                successors.insert(next);
                return;
            }
            Coord c = grid.coord(cells[k]);
            std::vector<int> options{cells[k]};
            for (const Coord& nb : grid.neighbors(c)) options.push_back(grid.index(nb));
            for (int o : options) {
                if (used & (1u << o)) continue;
                dest[k] = o;
                rec(k + 1, used | (1u << o));
            }
        };
        rec(0, 0);
        for (uint32_t next : successors) {
            if (depth.count(next)) continue;
            if (next == goal) return d + 1;
            depth[next] = d + 1;
            q.push(next);
        }
    }
    return -1;
}

void criterion_10() {
    Rng rng(1001);
    bool lba_ok = true;
    for (int trial = 0; trial < 500 && lba_ok; ++trial) {
        int n = 2 + static_cast<int>(rng.below(6));
        CostMatrix c;
        c.n = n;
        c.cost.resize(static_cast<size_t>(n) * n);
        for (auto& v : c.cost) v = static_cast<int64_t>(rng.below(60));
        if (lba(c).bottleneck != exhaustive_bottleneck(c)) lba_ok = false;
    }

    bool decomp_ok = true;
    for (int trial = 0; trial < 500 && decomp_ok; ++trial) {
        int n = 2 + static_cast<int>(rng.below(29));
        int d = 1 + static_cast<int>(rng.below(6));
        BipartiteMultigraph g{n, n, {}};
        std::vector<int> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        int tag = 0;
        for (int k = 0; k < d; ++k) {
            rng.shuffle(perm);
            for (int l = 0; l < n; ++l) g.edges.push_back(MultiEdge{l, perm[l], tag++});
        }
        MatchingSet ms = decompose_regular(g, d);
        std::multiset<int> seen;
        for (const auto& matching : ms.matchings) {
            if (static_cast<int>(matching.size()) != n) decomp_ok = false;
            std::set<int> lefts, rights;
            for (const MultiEdge& e : matching) {
                if (!lefts.insert(e.left).second || !rights.insert(e.right).second)
                    decomp_ok = false;
                seen.insert(e.tag);
            }
        }
        if (static_cast<int>(seen.size()) != n * d) decomp_ok = false;
    }

    bool flow_ok = true;
    Grid3D cube(3, 3, 3);
    for (int trial = 0; trial < 100 && flow_ok; ++trial) {
        int k = 2 + static_cast<int>(rng.below(3));
        auto draw = [&](int count) {
            std::set<Coord> out;
            while (static_cast<int>(out.size()) < count)
                out.insert(cube.coord(static_cast<int>(rng.below(cube.num_cells()))));
            return std::vector<Coord>(out.begin(), out.end());
        };
        std::vector<Coord> starts = draw(k), slots = draw(k);
        int opt = brute_force_makespan(cube, starts, slots, 8);
        if (opt < 0 || !exact_feasible(cube, starts, slots, opt) ||
            (opt > 0 && exact_feasible(cube, starts, slots, opt - 1)))
            flow_ok = false;
    }

    verdict(10, lba_ok && decomp_ok && flow_ok,
            "lba (500), decompose_regular (500), exact_feasible vs brute force (100)");
}

// --- criterion 11: scale check ------------------------------------------------

void criterion_11() {
    Clock::time_point t0 = Clock::now();
    Grid3D grid(120, 60, 6);
    Instance inst = generate(grid, {PatternKind::UniformRandom, 1.0 / 3.0}, 1);
    Plan plan = solve(inst, {Algorithm::Rth3dLba});
    bool valid = validate_real(inst, plan);
    double elapsed = seconds_since(t0);
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "120x60x6 (14400 robots): valid plan, makespan %d, %.1f s (< 120 s)",
                  plan.makespan, elapsed);
    verdict(11, valid && elapsed < 120.0, buf);
}

// --- criterion 12: fault injection --------------------------------------------

void criterion_12() {
    Grid3D grid(6, 6, 3);
    Instance inst = generate(grid, {PatternKind::UniformRandom, 1.0 / 3.0}, 12);
    Plan plan = solve(inst, {Algorithm::Rth3dLba});
    std::vector<Coord> starts(inst.starts.begin(), inst.starts.begin() + inst.num_real());
    std::vector<Coord> goals(inst.goals.begin(), inst.goals.begin() + inst.num_real());
    if (!validate_paths(grid, starts, goals, plan.paths).ok || plan.makespan < 3) {
        verdict(12, false, "baseline plan unusable for mutation");
        return;
    }

    Rng rng(1201);
    int n = static_cast<int>(plan.paths.size());
    int rejected = 0;
    for (int trial = 0; trial < 50; ++trial) {
        auto paths = plan.paths;
        int i = static_cast<int>(rng.below(n));
        int t = 1 + static_cast<int>(rng.below(plan.makespan - 1));
        switch (trial % 3) {
            case 0:  // teleport
                paths[i][t] = Coord{(paths[i][t].x + 3) % 6, paths[i][t].y, paths[i][t].z};
                break;
            case 1: {  // vertex share
                int j = (i + 1 + static_cast<int>(rng.below(n - 1))) % n;
                paths[i][t] = paths[j][t];
                break;
            }
            default: {  // forced edge swap onto a moving robot
                while (paths[i][t] == paths[i][t - 1])
                    t = 1 + static_cast<int>(rng.below(plan.makespan - 1));
                int j = (i + 1) % n;
                paths[j][t - 1] = paths[i][t];
                paths[j][t] = paths[i][t - 1];
                break;
            }
        }
        if (!validate_paths(grid, starts, goals, paths).ok) ++rejected;
    }
    char buf[120];
    std::snprintf(buf, sizeof buf, "%d/50 mutated plans rejected", rejected);
    verdict(12, rejected == 50, buf);
}

}  // namespace

int main() {
    criteria_1_3_4();
    criteria_2_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    criterion_11();
    criterion_12();
    if (g_failures) std::printf("%d criterion(s) FAILED\n", g_failures);
    else std::printf("all 12 criteria passed\n");
    return g_failures ? 1 : 0;
}

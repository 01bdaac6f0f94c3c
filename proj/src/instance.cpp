#include "rubikroute/instance.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

#include <json.hpp>

#include "rubikroute/rng.hpp"

namespace rubikroute {

namespace {

constexpr uint64_t kPadSeedSalt = 0x7061645f76697274ULL;    // "pad_virt"
constexpr uint64_t kBlockCellSalt = 0x626c6f636b73ULL;      // "blocks"

std::vector<Coord> free_cells(const Grid3D& grid) {
    std::vector<Coord> cells;
    cells.reserve(grid.num_free());
    for (int x = 0; x < grid.m1(); ++x)
        for (int y = 0; y < grid.m2(); ++y)
            for (int z = 0; z < grid.m3(); ++z)
                if (!grid.is_obstacle(Coord{x, y, z})) cells.push_back(Coord{x, y, z});
    return cells;
}

int robot_count(const Grid3D& grid, double density) {
    if (!(density > 0.0))
        throw std::invalid_argument("density must be positive");
    int n = static_cast<int>(std::llround(density * grid.num_cells()));
    if (n <= 0) throw std::invalid_argument("density too low: no robots");
    if (n > grid.capacity())
        throw std::invalid_argument("density exceeds grid capacity of " +
                                    std::to_string(grid.capacity()) + " robots");
    return n;
}

std::vector<Coord> pick(const std::vector<Coord>& pool, const std::vector<int>& idx) {
    std::vector<Coord> out;
    out.reserve(idx.size());
    for (int i : idx) out.push_back(pool[i]);
    return out;
}

Instance generate_uniform(const Grid3D& grid, double density, uint64_t seed) {
    int n = robot_count(grid, density);
    std::vector<Coord> cells = free_cells(grid);
    Rng rng(seed);
    Instance inst{grid, pick(cells, rng.sample(static_cast<int>(cells.size()), n)),
                  pick(cells, rng.sample(static_cast<int>(cells.size()), n)), seed, n};
    return inst;
}

Instance generate_rings(const Grid3D& grid, double density, uint64_t seed) {
    if (grid.m1() != grid.m2() || grid.m2() != grid.m3())
        throw std::invalid_argument("ring pattern requires a cubic grid");
    if (grid.obstacles() != ObstaclePattern::None)
        throw std::invalid_argument("ring pattern requires an obstacle-free grid");
    int n = robot_count(grid, density);
    int m = grid.m1();
    // Concentric square rings per x-y plane: cells whose ring index
    // (distance to the plane boundary) is even, thinned at random.
    std::vector<Coord> candidates;
    for (int x = 0; x < m; ++x)
        for (int y = 0; y < m; ++y) {
            int ring = std::min(std::min(x, y), std::min(m - 1 - x, m - 1 - y));
            if (ring % 2 != 0) continue;
            for (int z = 0; z < m; ++z) candidates.push_back(Coord{x, y, z});
        }
    if (n > static_cast<int>(candidates.size()))
        throw std::invalid_argument("ring pattern cannot host the requested density");
    Rng rng(seed);
    std::vector<Coord> starts = pick(candidates, rng.sample(static_cast<int>(candidates.size()), n));
    std::vector<Coord> goals;
    goals.reserve(n);
    for (const Coord& s : starts)
        goals.push_back(Coord{m - 1 - s.x, m - 1 - s.y, m - 1 - s.z});
    return Instance{grid, std::move(starts), std::move(goals), seed, n};
}

}  // namespace

Instance generate_blocks_with_permutation(const Grid3D& grid, double density, uint64_t seed,
                                          const std::array<int, 27>& perm) {
    if (grid.m1() != grid.m2() || grid.m2() != grid.m3())
        throw std::invalid_argument("block pattern requires a cubic grid");
    if (grid.obstacles() != ObstaclePattern::None)
        throw std::invalid_argument("block pattern requires an obstacle-free grid");
    {
        std::array<bool, 27> seen{};
        for (int p : perm) {
            if (p < 0 || p >= 27 || seen[p])
                throw std::invalid_argument("block permutation is not a permutation of 0..26");
            seen[p] = true;
        }
    }
    int n = robot_count(grid, density);
    int b = grid.m1() / 3;  // block side length
    std::vector<Coord> cells = free_cells(grid);
    Rng rng(seed ^ kBlockCellSalt);
    std::vector<Coord> starts = pick(cells, rng.sample(static_cast<int>(cells.size()), n));
    std::vector<Coord> goals;
    goals.reserve(n);
    for (const Coord& s : starts) {
        int id = (s.x / b) * 9 + (s.y / b) * 3 + (s.z / b);
        int to = perm[id];
        goals.push_back(Coord{s.x % b + (to / 9) * b, s.y % b + (to / 3 % 3) * b,
                              s.z % b + (to % 3) * b});
    }
    return Instance{grid, std::move(starts), std::move(goals), seed, n};
}

Instance generate(const Grid3D& grid, const PatternSpec& spec, uint64_t seed) {
    switch (spec.kind) {
        case PatternKind::UniformRandom:
            return generate_uniform(grid, spec.density, seed);
        case PatternKind::Rings:
            return generate_rings(grid, spec.density, seed);
        case PatternKind::Blocks: {
            std::array<int, 27> perm;
            for (int i = 0; i < 27; ++i) perm[i] = i;
            std::vector<int> v(perm.begin(), perm.end());
            Rng rng(seed);
            rng.shuffle(v);
            std::copy(v.begin(), v.end(), perm.begin());
            return generate_blocks_with_permutation(grid, spec.density, seed, perm);
        }
    }
    throw std::invalid_argument("unknown pattern kind");
}

Instance pad_virtual(const Instance& instance) {
    const Grid3D& grid = instance.grid;
    int n = instance.num_robots();
    int want = grid.capacity() - n;
    if (want < 0) throw std::invalid_argument("instance exceeds grid capacity");
    if (want == 0) return instance;

    std::unordered_set<int> used;
    used.reserve(2 * n);
    for (const Coord& c : instance.starts) used.insert(grid.index(c));
    for (const Coord& c : instance.goals) used.insert(grid.index(c));
    std::vector<Coord> eligible;
    for (const Coord& c : free_cells(grid))
        if (!used.count(grid.index(c))) eligible.push_back(c);

    Rng rng(instance.seed ^ kPadSeedSalt);
    std::vector<Coord> extra = pick(eligible, rng.sample(static_cast<int>(eligible.size()), want));

    Instance out = instance;
    out.virtual_from = n;
    for (const Coord& c : extra) {
        out.starts.push_back(c);
        out.goals.push_back(c);
    }
    return out;
}

std::string save_instance(const Instance& instance) {
    nlohmann::ordered_json j;
    j["dims"] = {instance.grid.m1(), instance.grid.m2(), instance.grid.m3()};
    j["obstacles"] =
        instance.grid.obstacles() == ObstaclePattern::Buildings ? "buildings" : "none";
    j["seed"] = instance.seed;
    j["virtual_from"] = instance.virtual_from;
    auto coords = [](const std::vector<Coord>& v) {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const Coord& c : v) arr.push_back({c.x, c.y, c.z});
        return arr;
    };
    j["starts"] = coords(instance.starts);
    j["goals"] = coords(instance.goals);
    return j.dump();
}

namespace {

std::vector<Coord> parse_coords(const nlohmann::json& arr, const Grid3D& grid,
                                const char* what) {
    if (!arr.is_array()) throw std::runtime_error(std::string(what) + " must be an array");
    std::vector<Coord> out;
    std::unordered_set<int> seen;
    out.reserve(arr.size());
    for (const auto& e : arr) {
        if (!e.is_array() || e.size() != 3 || !e[0].is_number_integer() ||
            !e[1].is_number_integer() || !e[2].is_number_integer())
            throw std::runtime_error(std::string(what) + " entries must be [x,y,z] integers");
        Coord c{e[0].get<int>(), e[1].get<int>(), e[2].get<int>()};
        if (!grid.is_free(c))
            throw std::runtime_error(std::string(what) +
                                     " coordinate out of bounds or on an obstacle");
        if (!seen.insert(grid.index(c)).second)
            throw std::runtime_error(std::string("duplicate coordinate in ") + what);
        out.push_back(c);
    }
    return out;
}

}  // namespace

Instance load_instance(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(std::string("malformed instance file: ") + e.what());
    }
    if (!j.contains("dims") || !j["dims"].is_array() || j["dims"].size() != 3)
        throw std::runtime_error("instance file missing dims [m1,m2,m3]");
    std::string obs = j.value("obstacles", "none");
    ObstaclePattern pattern;
    if (obs == "none")
        pattern = ObstaclePattern::None;
    else if (obs == "buildings")
        pattern = ObstaclePattern::Buildings;
    else
        throw std::runtime_error("obstacles must be \"none\" or \"buildings\"");
    Grid3D grid(j["dims"][0].get<int>(), j["dims"][1].get<int>(), j["dims"][2].get<int>(),
                pattern);

    Instance inst{grid, parse_coords(j.at("starts"), grid, "starts"),
                  parse_coords(j.at("goals"), grid, "goals"), j.value("seed", uint64_t{0}), 0};
    if (inst.starts.size() != inst.goals.size())
        throw std::runtime_error("starts and goals must have equal length");
    if (inst.num_robots() > grid.capacity())
        throw std::runtime_error("instance exceeds grid capacity");
    inst.virtual_from = j.value("virtual_from", inst.num_robots());
    if (inst.virtual_from < 0 || inst.virtual_from > inst.num_robots())
        throw std::runtime_error("virtual_from out of range");
    for (int i = inst.virtual_from; i < inst.num_robots(); ++i)
        if (inst.starts[i] != inst.goals[i])
            throw std::runtime_error("virtual robots must have start == goal");
    return inst;
}

}  // namespace rubikroute

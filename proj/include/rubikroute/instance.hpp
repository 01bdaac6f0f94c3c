#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "rubikroute/grid.hpp"

namespace rubikroute {

enum class PatternKind { UniformRandom, Rings, Blocks };

struct PatternSpec {
    PatternKind kind = PatternKind::UniformRandom;
    double density = 1.0 / 3.0;  // robots per grid cell, in (0, 1/3]
};

/// A labeled MRPP instance. Robots with index >= virtual_from are virtual
/// padding robots (start == goal); they never appear in reported plans.
struct Instance {
    Grid3D grid;
    std::vector<Coord> starts;
    std::vector<Coord> goals;
    uint64_t seed = 0;
    int virtual_from = 0;

    int num_robots() const { return static_cast<int>(starts.size()); }
    int num_real() const { return virtual_from; }
};

/// Deterministic in (grid, spec, seed).
Instance generate(const Grid3D& grid, const PatternSpec& spec, uint64_t seed);

/// Block-pattern generator with an explicit permutation of the 27 cubic
/// blocks (block id = bi*9 + bj*3 + bk for block coords along x, y, z).
Instance generate_blocks_with_permutation(const Grid3D& grid, double density, uint64_t seed,
                                          const std::array<int, 27>& perm);

/// Append virtual robots (start == goal, uniformly random over cells unused
/// by any start or goal) until the instance sits at exactly full capacity.
/// Real robots are never touched or reordered.
Instance pad_virtual(const Instance& instance);

std::string save_instance(const Instance& instance);
Instance load_instance(const std::string& text);

}  // namespace rubikroute

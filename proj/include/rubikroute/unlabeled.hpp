#pragma once

#include <cstdint>
#include <vector>

#include "rubikroute/grid.hpp"

namespace rubikroute {

struct SlotAssignment {
    std::vector<int> slot_of_robot;   // robot i -> index into the slot list
    int bottleneck_distance = 0;      // max start-to-slot distance, timesteps
};

struct UnlabeledResult {
    std::vector<std::vector<Coord>> paths;  // uniform length makespan+1
    int makespan = 0;
    SlotAssignment assignment;
};

/// Injective robot->slot assignment minimizing the maximum grid distance
/// (bottleneck LBA; the distance matrix is never materialized — candidate
/// slots are enumerated by growing distance balls around each start).
SlotAssignment assign_slots(const Grid3D& grid, const std::vector<Coord>& starts,
                            const std::vector<Coord>& slots);

/// Collision-free routing of interchangeable robots to their assigned slots.
/// The scheduler may exchange target slots between robots; the contract is
/// that the final configuration equals the assigned slot set.
UnlabeledResult schedule(const Grid3D& grid, const std::vector<Coord>& starts,
                         const std::vector<Coord>& slots, const SlotAssignment& assignment);

/// Test oracle: is there an unlabeled plan of makespan <= horizon? Decided
/// by unit-capacity max flow on a time-expanded network with swap-prevention
/// gadgets. Refuses instances beyond desk scale.
bool exact_feasible(const Grid3D& grid, const std::vector<Coord>& starts,
                    const std::vector<Coord>& slots, int horizon);

}  // namespace rubikroute

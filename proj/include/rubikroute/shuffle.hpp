#pragma once

#include <vector>

#include "rubikroute/grid.hpp"
#include "rubikroute/rubik.hpp"

namespace rubikroute {

/// Per-timestep joint positions realizing one pipeline stage. frames[0] is
/// the configuration the segment starts from; duration = frames.size() - 1.
struct MotionSegment {
    std::vector<std::vector<Coord>> frames;

    int duration() const { return static_cast<int>(frames.size()) - 1; }
};

/// Simulates one shuffle round with the two-highway-lane scheme: movers step
/// into the empty side lane matching their travel direction, cruise at speed
/// 1, and step back into the centered line at their destination. `config` is
/// the full-fleet configuration before the round and is updated in place;
/// the produced frames (excluding the input state) are appended.
///
/// Requires a centered configuration whose side lanes are empty: vertical
/// centered for Y and Z rounds (lanes at x±1), horizontal centered for X
/// rounds (lanes at y±1). Duration is 0 for an empty round and otherwise
/// 2 + max displacement <= axis length + 1.
int execute_round(const Grid3D& grid, Axis axis, const std::vector<Relocation>& moves,
                  std::vector<Coord>& config, std::vector<std::vector<Coord>>& frames);

/// Converts between the two centered orientations, each robot staying inside
/// its 3x3 cell. On full-capacity configurations every cell cross-section
/// holds one robot per middle-line slot, so the conversion is a fixed
/// 2-step local maneuver (identity when already in the target orientation).
int recenter(const Grid3D& grid, Orientation to, std::vector<Coord>& config,
             std::vector<std::vector<Coord>>& frames);

}  // namespace rubikroute

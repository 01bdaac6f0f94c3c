#pragma once

#include <vector>

#include "rubikroute/grid.hpp"
#include "rubikroute/matching.hpp"

namespace rubikroute {

enum class Axis { X, Y, Z };

/// One robot relocation within a shuffle round; from and to differ only
/// along the round's axis. Robots without an entry stay put.
struct Relocation {
    Coord from;
    Coord to;
};

/// All columns of one axis permuted in parallel.
struct ShuffleRound {
    Axis axis = Axis::Z;
    std::vector<Relocation> moves;
};

/// Fully occupied abstract table; item[cell] is a permutation of cell
/// indices and item k belongs at cell k.
struct AbstractTable2D {
    int m1 = 0, m2 = 0;
    std::vector<int> item;  // index (x * m2 + y)

    int idx(int x, int y) const { return x * m2 + y; }
    bool sorted() const;
};

struct AbstractTable3D {
    int m1 = 0, m2 = 0, m3 = 0;
    std::vector<int> item;  // index ((x * m2 + y) * m3 + z)

    int idx(int x, int y, int z) const { return (x * m2 + y) * m3 + z; }
    bool sorted() const;
};

/// A single abstract column shuffle. The permuted line is fixed by the
/// coordinates on the other axes (a, and b in 3D); take_from[p] is the old
/// position along the axis whose item lands at position p.
struct TableShuffle {
    Axis axis = Axis::X;
    int a = 0;
    int b = 0;  // unused in 2D
    std::vector<int> take_from;
};

void apply_shuffle(AbstractTable2D& table, const TableShuffle& s);
void apply_shuffle(AbstractTable3D& table, const TableShuffle& s);

/// Sorts the table with at most m1 + 2*m2 column shuffles, grouped as
/// x-rounds / y-round / x-rounds. Identity shuffles are omitted.
std::vector<TableShuffle> rta2d(const AbstractTable2D& table);

/// Sorts the table with at most 2*m1*m2 + m3*(m1 + 2*m2) shuffles:
/// a z-shuffle round, per-plane rta2d, and a final z-shuffle round.
std::vector<TableShuffle> rta3d(const AbstractTable3D& table);

/// Output of one pipeline matching stage: the abstract shuffle rounds and
/// the per-robot configuration they produce. Composing the rounds as
/// permutations maps the stage input exactly onto `result`.
struct StagePlan {
    std::vector<ShuffleRound> rounds;
    std::vector<Coord> result;
};

/// First z-round: decomposes the column/target-column multigraph into m3
/// perfect matchings (plain or bottleneck-optimized) and assigns each robot
/// an intermediate height, giving S2 with s2 = (s1.x, s1.y, h).
StagePlan matching_xy(const Grid3D& grid, const std::vector<Coord>& s1,
                      const std::vector<Coord>& g1, bool use_lba);

/// Per-plane 2D fitting: rounds y (to matched rows), x (to the target
/// column), y (to the target row). After the stage every robot sits at
/// (g1.x, g1.y) in its plane.
StagePlan xy_fitting(const Grid3D& grid, const std::vector<Coord>& s2,
                     const std::vector<Coord>& g1, bool use_lba);

/// Final z-round placing each robot at g1 exactly.
StagePlan z_fitting(const Grid3D& grid, const std::vector<Coord>& current,
                    const std::vector<Coord>& g1);

}  // namespace rubikroute

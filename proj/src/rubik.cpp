#include "rubikroute/rubik.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

namespace rubikroute {

bool AbstractTable2D::sorted() const {
    for (int i = 0; i < static_cast<int>(item.size()); ++i)
        if (item[i] != i) return false;
    return true;
}

bool AbstractTable3D::sorted() const {
    for (int i = 0; i < static_cast<int>(item.size()); ++i)
        if (item[i] != i) return false;
    return true;
}

namespace {

void check_permutation(const std::vector<int>& item, size_t size) {
    if (item.size() != size) throw std::invalid_argument("abstract table size mismatch");
    std::vector<char> seen(size, 0);
    for (int v : item) {
        if (v < 0 || v >= static_cast<int>(size) || seen[v])
            throw std::invalid_argument("abstract table items are not a permutation");
        seen[v] = 1;
    }
}

template <typename Index>
void apply_line_shuffle(std::vector<int>& item, int length, const TableShuffle& s,
                        Index cell_at) {
    if (static_cast<int>(s.take_from.size()) != length)
        throw std::invalid_argument("shuffle length mismatch");
    std::vector<int> old(length);
    for (int p = 0; p < length; ++p) old[p] = item[cell_at(p)];
    for (int p = 0; p < length; ++p) item[cell_at(p)] = old[s.take_from[p]];
}

}  // namespace

void apply_shuffle(AbstractTable2D& table, const TableShuffle& s) {
    if (s.axis == Axis::X)
        apply_line_shuffle(table.item, table.m1, s, [&](int p) { return table.idx(p, s.a); });
    else
        apply_line_shuffle(table.item, table.m2, s, [&](int p) { return table.idx(s.a, p); });
}

void apply_shuffle(AbstractTable3D& table, const TableShuffle& s) {
    switch (s.axis) {
        case Axis::X:
            apply_line_shuffle(table.item, table.m1, s,
                               [&](int p) { return table.idx(p, s.a, s.b); });
            break;
        case Axis::Y:
            apply_line_shuffle(table.item, table.m2, s,
                               [&](int p) { return table.idx(s.a, p, s.b); });
            break;
        case Axis::Z:
            apply_line_shuffle(table.item, table.m3, s,
                               [&](int p) { return table.idx(s.a, s.b, p); });
            break;
    }
}

namespace {

// Emit one shuffle realizing dest[p] = where the item at position p goes;
// skipped when it is the identity.
void emit_shuffle(std::vector<TableShuffle>& out, Axis axis, int a, int b,
                  const std::vector<int>& dest) {
    int length = static_cast<int>(dest.size());
    bool identity = true;
    std::vector<int> take(length, -1);
    for (int p = 0; p < length; ++p) {
        if (dest[p] != p) identity = false;
        take[dest[p]] = p;
    }
    if (identity) return;
    out.push_back(TableShuffle{axis, a, b, std::move(take)});
}

}  // namespace

std::vector<TableShuffle> rta2d(const AbstractTable2D& table) {
    check_permutation(table.item, static_cast<size_t>(table.m1) * table.m2);
    const int m1 = table.m1, m2 = table.m2;
    AbstractTable2D work = table;

    // Colors are target rows; the row/color multigraph is m1-regular, so it
    // splits into m1 perfect matchings, one per intermediate column.
    BipartiteMultigraph g{m2, m2, {}};
    for (int x = 0; x < m1; ++x)
        for (int y = 0; y < m2; ++y) {
            int item = work.item[work.idx(x, y)];
            g.edges.push_back(MultiEdge{y, item % m2, item});
        }
    MatchingSet ms = decompose_regular(g, m1);

    std::vector<int> mid_x(work.item.size());  // intermediate column per item
    for (int c = 0; c < m1; ++c)
        for (const MultiEdge& e : ms.matchings[c]) mid_x[e.tag] = c;

    std::vector<TableShuffle> shuffles;
    // Round A: x-shuffles move each item to its matched column.
    for (int y = 0; y < m2; ++y) {
        std::vector<int> dest(m1);
        for (int x = 0; x < m1; ++x) dest[x] = mid_x[work.item[work.idx(x, y)]];
        emit_shuffle(shuffles, Axis::X, y, 0, dest);
        if (!shuffles.empty() && shuffles.back().a == y && shuffles.back().axis == Axis::X)
            apply_shuffle(work, shuffles.back());
    }
    // Round B: y-shuffles place each item on its target row.
    for (int x = 0; x < m1; ++x) {
        std::vector<int> dest(m2);
        for (int y = 0; y < m2; ++y) dest[y] = work.item[work.idx(x, y)] % m2;
        emit_shuffle(shuffles, Axis::Y, x, 0, dest);
        if (!shuffles.empty() && shuffles.back().a == x && shuffles.back().axis == Axis::Y)
            apply_shuffle(work, shuffles.back());
    }
    // Round C: x-shuffles place each item on its target column.
    for (int y = 0; y < m2; ++y) {
        std::vector<int> dest(m1);
        for (int x = 0; x < m1; ++x) dest[x] = work.item[work.idx(x, y)] / m2;
        emit_shuffle(shuffles, Axis::X, y, 0, dest);
        if (!shuffles.empty() && shuffles.back().a == y && shuffles.back().axis == Axis::X)
            apply_shuffle(work, shuffles.back());
    }
    if (!work.sorted()) throw std::runtime_error("rta2d: table not sorted");
    return shuffles;
}

std::vector<TableShuffle> rta3d(const AbstractTable3D& table) {
    check_permutation(table.item, static_cast<size_t>(table.m1) * table.m2 * table.m3);
    const int m1 = table.m1, m2 = table.m2, m3 = table.m3;
    AbstractTable3D work = table;

    auto col_of_cell = [&](int cell) { return cell / m3; };  // (x,y) column id

    // Phase 1: column/target-column multigraph, m3 perfect matchings; the
    // matching index is the intermediate height of the chosen item.
    BipartiteMultigraph g{m1 * m2, m1 * m2, {}};
    for (int cell = 0; cell < static_cast<int>(work.item.size()); ++cell)
        g.edges.push_back(
            MultiEdge{col_of_cell(cell), col_of_cell(work.item[cell]), work.item[cell]});
    MatchingSet ms = decompose_regular(g, m3);

    std::vector<int> mid_z(work.item.size());
    for (int h = 0; h < m3; ++h)
        for (const MultiEdge& e : ms.matchings[h]) mid_z[e.tag] = h;

    std::vector<TableShuffle> shuffles;
    for (int x = 0; x < m1; ++x)
        for (int y = 0; y < m2; ++y) {
            std::vector<int> dest(m3);
            for (int z = 0; z < m3; ++z) dest[z] = mid_z[work.item[work.idx(x, y, z)]];
            size_t before = shuffles.size();
            emit_shuffle(shuffles, Axis::Z, x, y, dest);
            if (shuffles.size() > before) apply_shuffle(work, shuffles.back());
        }

    // Phase 2: each plane now holds one item per target column; solve it as
    // a 2D table whose labels are target columns.
    for (int z = 0; z < m3; ++z) {
        AbstractTable2D plane{m1, m2, std::vector<int>(static_cast<size_t>(m1) * m2)};
        for (int x = 0; x < m1; ++x)
            for (int y = 0; y < m2; ++y)
                plane.item[plane.idx(x, y)] = col_of_cell(work.item[work.idx(x, y, z)]);
        for (const TableShuffle& s2d : rta2d(plane)) {
            TableShuffle lifted{s2d.axis, s2d.a, z, s2d.take_from};
            shuffles.push_back(lifted);
            apply_shuffle(work, lifted);
        }
    }

    // Phase 3: z-shuffles sort every column.
    for (int x = 0; x < m1; ++x)
        for (int y = 0; y < m2; ++y) {
            std::vector<int> dest(m3);
            for (int z = 0; z < m3; ++z) dest[z] = work.item[work.idx(x, y, z)] % m3;
            size_t before = shuffles.size();
            emit_shuffle(shuffles, Axis::Z, x, y, dest);
            if (shuffles.size() > before) apply_shuffle(work, shuffles.back());
        }
    if (!work.sorted()) throw std::runtime_error("rta3d: table not sorted");
    return shuffles;
}

namespace {

// Index map over the occupied (x,y) columns of a vertical centered config.
struct ColumnIndex {
    std::vector<int> id;       // m1*m2, -1 where unoccupied
    std::vector<Coord> coord;  // column id -> (x, y, 0)
    int m2;

    int at(int x, int y) const { return id[x * m2 + y]; }
};

ColumnIndex vertical_columns(const Grid3D& grid) {
    ColumnIndex ci;
    ci.m2 = grid.m2();
    ci.id.assign(grid.m1() * grid.m2(), -1);
    for (int x = 1; x < grid.m1(); x += 3)
        for (int y = 0; y < grid.m2(); ++y) {
            if (grid.is_obstacle(Coord{x, y, 0})) continue;
            ci.id[x * grid.m2() + y] = static_cast<int>(ci.coord.size());
            ci.coord.push_back(Coord{x, y, 0});
        }
    return ci;
}

// y values available on a vertical centered line (all of them, minus
// building rows).
std::vector<int> vertical_line_yslots(const Grid3D& grid) {
    std::vector<int> ys;
    for (int y = 0; y < grid.m2(); ++y)
        if (!(grid.obstacles() == ObstaclePattern::Buildings && y % 3 == 1)) ys.push_back(y);
    return ys;
}

void require_full_vertical(const Grid3D& grid, const std::vector<Coord>& config,
                           const char* stage) {
    if (static_cast<int>(config.size()) != grid.capacity())
        throw std::invalid_argument(std::string(stage) +
                                    ": configuration must fill all centered slots");
    for (const Coord& c : config)
        if (!grid.is_free(c) || c.x % 3 != 1)
            throw std::invalid_argument(std::string(stage) +
                                        ": configuration is not vertical centered");
}

}  // namespace

StagePlan matching_xy(const Grid3D& grid, const std::vector<Coord>& s1,
                      const std::vector<Coord>& g1, bool use_lba) {
    require_full_vertical(grid, s1, "matching_xy");
    require_full_vertical(grid, g1, "matching_xy");
    int n = static_cast<int>(s1.size());
    int m3 = grid.m3();
    ColumnIndex cols = vertical_columns(grid);
    int num_cols = static_cast<int>(cols.coord.size());

    std::vector<int> height(n, -1);
    if (use_lba) {
        std::vector<SequenceRobot> robots(n);
        for (int i = 0; i < n; ++i)
            robots[i] = SequenceRobot{cols.at(s1[i].x, s1[i].y), cols.at(g1[i].x, g1[i].y)};
        auto phase1_cost = [&](int i, int h) -> int64_t { return std::abs(s1[i].z - h); };
        MatchingSet ms = lba_matching_sequence(num_cols, robots, m3, phase1_cost);
        std::vector<int> to_height = assign_matchings_to_heights(m3, [&](int m, int h) {
            int64_t worst = 0;
            for (const MultiEdge& e : ms.matchings[m])
                worst = std::max(worst, phase1_cost(e.tag, h));
            return worst;
        });
        for (int m = 0; m < m3; ++m)
            for (const MultiEdge& e : ms.matchings[m]) height[e.tag] = to_height[m];
    } else {
        BipartiteMultigraph g{num_cols, num_cols, {}};
        for (int i = 0; i < n; ++i)
            g.edges.push_back(MultiEdge{cols.at(s1[i].x, s1[i].y), cols.at(g1[i].x, g1[i].y), i});
        MatchingSet ms = decompose_regular(g, m3);
        for (int h = 0; h < m3; ++h)
            for (const MultiEdge& e : ms.matchings[h]) height[e.tag] = h;
    }

    StagePlan plan;
    plan.result.resize(n);
    ShuffleRound round{Axis::Z, {}};
    for (int i = 0; i < n; ++i) {
        plan.result[i] = Coord{s1[i].x, s1[i].y, height[i]};
        if (plan.result[i] != s1[i]) round.moves.push_back(Relocation{s1[i], plan.result[i]});
    }
    plan.rounds.push_back(std::move(round));
    return plan;
}

StagePlan xy_fitting(const Grid3D& grid, const std::vector<Coord>& s2,
                     const std::vector<Coord>& g1, bool use_lba) {
    require_full_vertical(grid, s2, "xy_fitting");
    int n = static_cast<int>(s2.size());
    std::vector<int> yslots = vertical_line_yslots(grid);
    int d = static_cast<int>(yslots.size());

    std::vector<int> line_id(grid.m1(), -1);
    int num_lines = 0;
    for (int x = 1; x < grid.m1(); x += 3) line_id[x] = num_lines++;

    std::vector<int> row(n, -1);  // index into yslots
    for (int h = 0; h < grid.m3(); ++h) {
        std::vector<int> members;
        for (int i = 0; i < n; ++i)
            if (s2[i].z == h) members.push_back(i);
        if (static_cast<int>(members.size()) != num_lines * d)
            throw std::invalid_argument("xy_fitting: plane occupancy mismatch");

        if (use_lba) {
            std::vector<SequenceRobot> robots(members.size());
            for (size_t j = 0; j < members.size(); ++j)
                robots[j] = SequenceRobot{line_id[s2[members[j]].x], line_id[g1[members[j]].x]};
            auto round_a_cost = [&](int j, int k) -> int64_t {
                return std::abs(s2[members[j]].y - yslots[k]);
            };
            MatchingSet ms = lba_matching_sequence(num_lines, robots, d, round_a_cost);
            std::vector<int> to_row = assign_matchings_to_heights(d, [&](int m, int k) {
                int64_t worst = 0;
                for (const MultiEdge& e : ms.matchings[m])
                    worst = std::max(worst, round_a_cost(e.tag, k));
                return worst;
            });
            for (int m = 0; m < d; ++m)
                for (const MultiEdge& e : ms.matchings[m]) row[members[e.tag]] = to_row[m];
        } else {
            BipartiteMultigraph g{num_lines, num_lines, {}};
            for (int i : members)
                g.edges.push_back(MultiEdge{line_id[s2[i].x], line_id[g1[i].x], i});
            MatchingSet ms = decompose_regular(g, d);
            for (int k = 0; k < d; ++k)
                for (const MultiEdge& e : ms.matchings[k]) row[e.tag] = k;
        }
    }

    StagePlan plan;
    plan.result.resize(n);
    ShuffleRound round_a{Axis::Y, {}}, round_b{Axis::X, {}}, round_c{Axis::Y, {}};
    for (int i = 0; i < n; ++i) {
        Coord a{s2[i].x, yslots[row[i]], s2[i].z};
        Coord b{g1[i].x, yslots[row[i]], s2[i].z};
        Coord c{g1[i].x, g1[i].y, s2[i].z};
        if (a != s2[i]) round_a.moves.push_back(Relocation{s2[i], a});
        if (b != a) round_b.moves.push_back(Relocation{a, b});
        if (c != b) round_c.moves.push_back(Relocation{b, c});
        plan.result[i] = c;
    }
    plan.rounds.push_back(std::move(round_a));
    plan.rounds.push_back(std::move(round_b));
    plan.rounds.push_back(std::move(round_c));
    return plan;
}

StagePlan z_fitting(const Grid3D& grid, const std::vector<Coord>& current,
                    const std::vector<Coord>& g1) {
    require_full_vertical(grid, current, "z_fitting");
    int n = static_cast<int>(current.size());
    StagePlan plan;
    plan.result = g1;
    ShuffleRound round{Axis::Z, {}};
    for (int i = 0; i < n; ++i) {
        if (current[i].x != g1[i].x || current[i].y != g1[i].y)
            throw std::invalid_argument("z_fitting: robot not in its target column");
        if (current[i] != g1[i]) round.moves.push_back(Relocation{current[i], g1[i]});
    }
    plan.rounds.push_back(std::move(round));
    return plan;
}

}  // namespace rubikroute

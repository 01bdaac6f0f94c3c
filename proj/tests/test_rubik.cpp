#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "rubikroute/rng.hpp"
#include "rubikroute/rubik.hpp"

using namespace rubikroute;

namespace {

AbstractTable2D random_table2d(int m1, int m2, Rng& rng) {
    AbstractTable2D t{m1, m2, std::vector<int>(static_cast<size_t>(m1) * m2)};
    std::iota(t.item.begin(), t.item.end(), 0);
    rng.shuffle(t.item);
    return t;
}

AbstractTable3D random_table3d(int m1, int m2, int m3, Rng& rng) {
    AbstractTable3D t{m1, m2, m3, std::vector<int>(static_cast<size_t>(m1) * m2 * m3)};
    std::iota(t.item.begin(), t.item.end(), 0);
    rng.shuffle(t.item);
    return t;
}

void check_valid_shuffle(const TableShuffle& s, int length) {
    REQUIRE(static_cast<int>(s.take_from.size()) == length);
    std::set<int> seen(s.take_from.begin(), s.take_from.end());
    CHECK(static_cast<int>(seen.size()) == length);
    CHECK(*seen.begin() == 0);
    CHECK(*seen.rbegin() == length - 1);
    // Identity shuffles must have been skipped.
    bool identity = true;
    for (int p = 0; p < length; ++p)
        if (s.take_from[p] != p) identity = false;
    CHECK_FALSE(identity);
}

// Replays stage rounds on a configuration and checks move legality.
std::vector<Coord> replay_rounds(const std::vector<Coord>& start,
                                 const std::vector<ShuffleRound>& rounds) {
    std::vector<Coord> config = start;
    for (const ShuffleRound& round : rounds) {
        std::map<Coord, int> at;
        for (int i = 0; i < static_cast<int>(config.size()); ++i) at[config[i]] = i;
        std::set<Coord> froms, tos;
        for (const Relocation& mv : round.moves) {
            CHECK(froms.insert(mv.from).second);
            CHECK(tos.insert(mv.to).second);
            // from and to differ only along the round axis.
            CHECK((mv.from.x == mv.to.x) == (round.axis != Axis::X));
            CHECK((mv.from.y == mv.to.y) == (round.axis != Axis::Y));
            CHECK((mv.from.z == mv.to.z) == (round.axis != Axis::Z));
            auto it = at.find(mv.from);
            REQUIRE(it != at.end());
            config[it->second] = mv.to;
        }
    }
    std::set<Coord> distinct(config.begin(), config.end());
    CHECK(distinct.size() == config.size());
    return config;
}

}  // namespace

TEST_CASE("rta2d: sorted input needs no shuffles") {
    AbstractTable2D t{4, 3, std::vector<int>(12)};
    std::iota(t.item.begin(), t.item.end(), 0);
    CHECK(rta2d(t).empty());
}

TEST_CASE("rta2d rejects non-permutations") {
    AbstractTable2D t{2, 2, {0, 0, 1, 2}};
    CHECK_THROWS_AS(rta2d(t), std::invalid_argument);
    AbstractTable2D wrong{2, 2, {0, 1, 2}};
    CHECK_THROWS_AS(rta2d(wrong), std::invalid_argument);
}

TEST_CASE("rta2d sorts random tables within m1 + 2*m2 shuffles, rounds x/y/x") {
    Rng rng(61);
    for (int trial = 0; trial < 50; ++trial) {
        int m1 = 2 + static_cast<int>(rng.below(8));
        int m2 = 2 + static_cast<int>(rng.below(m1 - 1));
        AbstractTable2D t = random_table2d(m1, m2, rng);
        std::vector<TableShuffle> shuffles = rta2d(t);
        CHECK(static_cast<int>(shuffles.size()) <= m1 + 2 * m2);

        // Axis pattern X* Y* X* with per-round caps m2, m1, m2.
        int phase = 0, in_phase = 0;
        for (const TableShuffle& s : shuffles) {
            check_valid_shuffle(s, s.axis == Axis::X ? m1 : m2);
            Axis want = phase == 1 ? Axis::Y : Axis::X;
            if (s.axis != want) {
                ++phase;
                in_phase = 0;
                REQUIRE(phase <= 2);
                REQUIRE(s.axis == (phase == 1 ? Axis::Y : Axis::X));
            }
            ++in_phase;
            CHECK(in_phase <= (phase == 1 ? m1 : m2));
            apply_shuffle(t, s);
        }
        CHECK(t.sorted());
    }
}

TEST_CASE("rta3d: identity and random tables") {
    AbstractTable3D id{3, 3, 3, std::vector<int>(27)};
    std::iota(id.item.begin(), id.item.end(), 0);
    CHECK(rta3d(id).empty());

    Rng rng(67);
    for (int trial = 0; trial < 30; ++trial) {
        int m1 = 3, m2 = 3, m3 = 2 + static_cast<int>(rng.below(2));
        if (trial % 3 == 0) m1 = 6;
        AbstractTable3D t = random_table3d(m1, m2, m3, rng);
        std::vector<TableShuffle> shuffles = rta3d(t);
        CHECK(static_cast<int>(shuffles.size()) <= 2 * m1 * m2 + m3 * (m1 + 2 * m2));
        for (const TableShuffle& s : shuffles) {
            int len = s.axis == Axis::X ? m1 : (s.axis == Axis::Y ? m2 : m3);
            check_valid_shuffle(s, len);
            apply_shuffle(t, s);
        }
        CHECK(t.sorted());
    }
}

TEST_CASE("matching_xy: identity goals keep every robot in place") {
    Grid3D g(6, 6, 3);
    auto slots = g.centered_slots(Orientation::VerticalCentered);
    for (bool lba : {false, true}) {
        StagePlan plan = matching_xy(g, slots, slots, lba);
        REQUIRE(plan.rounds.size() == 1);
        CHECK(plan.rounds[0].axis == Axis::Z);
        for (int i = 0; i < static_cast<int>(slots.size()); ++i) {
            CHECK(plan.result[i].x == slots[i].x);
            CHECK(plan.result[i].y == slots[i].y);
        }
    }
    // The bottleneck variant finds the zero-cost heights and stays put.
    StagePlan plan = matching_xy(g, slots, slots, true);
    CHECK(plan.rounds[0].moves.empty());
    CHECK(plan.result == slots);
}

TEST_CASE("matching_xy places one robot per target column in each plane") {
    for (ObstaclePattern obs : {ObstaclePattern::None, ObstaclePattern::Buildings}) {
        Grid3D g(6, 6, 3, obs);
        auto slots = g.centered_slots(Orientation::VerticalCentered);
        Rng rng(71);
        for (int trial = 0; trial < 10; ++trial) {
            std::vector<Coord> goals = slots;
            rng.shuffle(goals);
            for (bool lba : {false, true}) {
                StagePlan plan = matching_xy(g, slots, goals, lba);
                REQUIRE(plan.rounds.size() == 1);
                CHECK(plan.rounds[0].axis == Axis::Z);
                CHECK(replay_rounds(slots, plan.rounds) == plan.result);
                std::set<std::tuple<int, int, int>> plane_cols;
                for (int i = 0; i < static_cast<int>(slots.size()); ++i) {
                    CHECK(plan.result[i].x == slots[i].x);
                    CHECK(plan.result[i].y == slots[i].y);
                    // (height, target column) pairs are unique: each plane
                    // holds exactly one robot per goal column.
                    CHECK(plane_cols
                              .insert({plan.result[i].z, goals[i].x, goals[i].y})
                              .second);
                }
            }
        }
    }
}

TEST_CASE("matching_xy rejects non-centered or partial configurations") {
    Grid3D g(6, 6, 3);
    auto slots = g.centered_slots(Orientation::VerticalCentered);
    std::vector<Coord> partial(slots.begin(), slots.end() - 1);
    CHECK_THROWS_AS(matching_xy(g, partial, partial, false), std::invalid_argument);
    std::vector<Coord> off = slots;
    off[0].x = 0;
    CHECK_THROWS_AS(matching_xy(g, off, slots, false), std::invalid_argument);
}

TEST_CASE("xy_fitting routes every robot to its goal column, rounds y/x/y") {
    for (ObstaclePattern obs : {ObstaclePattern::None, ObstaclePattern::Buildings}) {
        Grid3D g(9, 6, 3, obs);
        auto slots = g.centered_slots(Orientation::VerticalCentered);
        Rng rng(73);
        for (int trial = 0; trial < 10; ++trial) {
            std::vector<Coord> goals = slots;
            rng.shuffle(goals);
            for (bool lba : {false, true}) {
                StagePlan m = matching_xy(g, slots, goals, lba);
                StagePlan fit = xy_fitting(g, m.result, goals, lba);
                REQUIRE(fit.rounds.size() == 3);
                CHECK(fit.rounds[0].axis == Axis::Y);
                CHECK(fit.rounds[1].axis == Axis::X);
                CHECK(fit.rounds[2].axis == Axis::Y);
                CHECK(replay_rounds(m.result, fit.rounds) == fit.result);
                for (int i = 0; i < static_cast<int>(slots.size()); ++i) {
                    CHECK(fit.result[i].x == goals[i].x);
                    CHECK(fit.result[i].y == goals[i].y);
                    CHECK(fit.result[i].z == m.result[i].z);
                }
            }
        }
    }
}

TEST_CASE("z_fitting: identity, reversal, and full pipeline closure") {
    Grid3D g(6, 6, 3);
    auto slots = g.centered_slots(Orientation::VerticalCentered);

    StagePlan id = z_fitting(g, slots, slots);
    CHECK(id.rounds.size() == 1);
    CHECK(id.rounds[0].moves.empty());
    CHECK(id.result == slots);

    // Reverse every column along z.
    std::vector<Coord> rev = slots;
    for (Coord& c : rev) c.z = 2 - c.z;
    StagePlan plan = z_fitting(g, rev, slots);
    CHECK(replay_rounds(rev, plan.rounds) == slots);

    // Abstract pipeline: matching_xy + xy_fitting + z_fitting ends at goals.
    Rng rng(79);
    std::vector<Coord> goals = slots;
    rng.shuffle(goals);
    StagePlan m = matching_xy(g, slots, goals, true);
    StagePlan fit = xy_fitting(g, m.result, goals, true);
    StagePlan zf = z_fitting(g, fit.result, goals);
    CHECK(replay_rounds(fit.result, zf.rounds) == goals);
    CHECK(zf.result == goals);
}

TEST_CASE("z_fitting rejects robots outside their target column") {
    Grid3D g(6, 6, 3);
    auto slots = g.centered_slots(Orientation::VerticalCentered);
    std::vector<Coord> goals = slots;
    std::swap(goals[0], goals[1]);  // different (x,y) columns within slot order
    if (goals[0].x == slots[0].x && goals[0].y == slots[0].y)
        std::swap(goals[0], goals.back());
    CHECK_THROWS_AS(z_fitting(g, slots, goals), std::invalid_argument);
}

#include "rubikroute/validate.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace rubikroute {

namespace {

constexpr size_t kMaxViolations = 100;

void report(ValidationReport& r, std::string kind, int t, std::vector<int> robots,
            std::string detail) {
    if (r.violations.size() < kMaxViolations)
        r.violations.push_back(
            Violation{std::move(kind), t, std::move(robots), std::move(detail)});
}

std::string coord_str(Coord c) {
    std::ostringstream os;
    os << "(" << c.x << "," << c.y << "," << c.z << ")";
    return os.str();
}

}  // namespace

ValidationReport validate_paths(const Grid3D& grid, const std::vector<Coord>& starts,
                                const std::vector<Coord>& goals,
                                const std::vector<std::vector<Coord>>& paths) {
    if (paths.empty() || paths.size() != starts.size() || starts.size() != goals.size())
        throw std::invalid_argument("validate_paths: path/start/goal counts disagree");

    ValidationReport r;
    int n = static_cast<int>(paths.size());
    size_t horizon = 1;
    for (const auto& p : paths) {
        if (p.empty()) throw std::invalid_argument("validate_paths: empty path");
        horizon = std::max(horizon, p.size());
    }
    auto pos = [&](int i, size_t t) {
        return t < paths[i].size() ? paths[i][t] : paths[i].back();
    };

    for (int i = 0; i < n; ++i) {
        if (pos(i, 0) != starts[i])
            report(r, "endpoint", 0, {i}, "path starts at " + coord_str(pos(i, 0)) +
                                              " not " + coord_str(starts[i]));
        if (pos(i, horizon - 1) != goals[i])
            report(r, "endpoint", static_cast<int>(horizon - 1), {i},
                   "path ends at " + coord_str(pos(i, horizon - 1)) + " not " +
                       coord_str(goals[i]));
    }

    for (size_t t = 0; t < horizon; ++t) {
        std::map<Coord, int> occupied;
        for (int i = 0; i < n; ++i) {
            Coord c = pos(i, t);
            if (!grid.in_bounds(c))
                report(r, "bounds", static_cast<int>(t), {i}, coord_str(c));
            else if (grid.is_obstacle(c))
                report(r, "obstacle", static_cast<int>(t), {i}, coord_str(c));
            auto [it, inserted] = occupied.emplace(c, i);
            if (!inserted)
                report(r, "vertex", static_cast<int>(t), {it->second, i},
                       "both at " + coord_str(c));
            if (t > 0) {
                Coord p = pos(i, t - 1);
                int step = std::abs(c.x - p.x) + std::abs(c.y - p.y) + std::abs(c.z - p.z);
                if (step > 1)
                    report(r, "continuity", static_cast<int>(t), {i},
                           coord_str(p) + " -> " + coord_str(c));
            }
        }
        if (t > 0) {
            // Edge swap: i moves onto j's previous cell while j moves onto i's.
            std::map<Coord, int> prev;
            for (int i = 0; i < n; ++i) prev.emplace(pos(i, t - 1), i);
            for (int i = 0; i < n; ++i) {
                Coord c = pos(i, t);
                if (c == pos(i, t - 1)) continue;
                auto it = prev.find(c);
                if (it != prev.end() && it->second != i && it->second > i &&
                    pos(it->second, t) == pos(i, t - 1))
                    report(r, "swap", static_cast<int>(t), {i, it->second},
                           coord_str(pos(i, t - 1)) + " <-> " + coord_str(c));
            }
        }
    }

    r.makespan = 0;
    for (size_t t = 1; t < horizon; ++t)
        for (int i = 0; i < n; ++i)
            if (pos(i, t) != pos(i, t - 1)) {
                r.makespan = static_cast<int>(t);
                break;
            }
    for (int i = 0; i < n; ++i)
        r.lower_bound = std::max(r.lower_bound, grid.distance(starts[i], goals[i]));
    r.ratio = optimality_ratio(r.makespan, r.lower_bound);
    r.ok = r.violations.empty();
    return r;
}

double optimality_ratio(int makespan, int lower_bound) {
    if (makespan == 0) return 0.0;
    return static_cast<double>(makespan) / std::max(lower_bound, 1);
}

std::string csv_header() {
    return "algorithm,m1,m2,m3,density,seed,robots,makespan,lower_bound,ratio,runtime_ms,"
           "phase_unlabeled1,phase_z1,phase_xy,phase_z2,phase_unlabeled2";
}

namespace {

std::string fmt_double(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

}  // namespace

std::string csv_row(const BenchRow& row) {
    std::ostringstream os;
    os << row.algorithm << ',' << row.m1 << ',' << row.m2 << ',' << row.m3 << ','
       << fmt_double(row.density) << ',' << row.seed << ',' << row.robots << ','
       << row.makespan << ',' << row.lower_bound << ',' << fmt_double(row.ratio) << ','
       << row.runtime_ms << ',' << row.phases.unlabeled1 << ',' << row.phases.z1 << ','
       << row.phases.xy << ',' << row.phases.z2 << ',' << row.phases.unlabeled2;
    return os.str();
}

std::vector<AggregateRow> aggregate(const std::vector<BenchRow>& rows) {
    std::map<std::tuple<std::string, int, int, int, double>, std::vector<const BenchRow*>>
        groups;
    for (const BenchRow& row : rows)
        groups[{row.algorithm, row.m1, row.m2, row.m3, row.density}].push_back(&row);

    std::vector<AggregateRow> out;
    for (const auto& [key, members] : groups) {
        AggregateRow a;
        std::tie(a.algorithm, a.m1, a.m2, a.m3, a.density) = key;
        a.count = static_cast<int>(members.size());
        a.min_makespan = a.max_makespan = members.front()->makespan;
        for (const BenchRow* b : members) {
            a.mean_makespan += b->makespan;
            a.min_makespan = std::min(a.min_makespan, static_cast<double>(b->makespan));
            a.max_makespan = std::max(a.max_makespan, static_cast<double>(b->makespan));
            a.mean_ratio += b->ratio;
            a.mean_runtime_ms += static_cast<double>(b->runtime_ms);
        }
        a.mean_makespan /= a.count;
        a.mean_ratio /= a.count;
        a.mean_runtime_ms /= a.count;
        out.push_back(a);
    }
    return out;
}

}  // namespace rubikroute

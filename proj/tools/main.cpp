#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "rubikroute/instance.hpp"
#include "rubikroute/solver.hpp"
#include "rubikroute/validate.hpp"

namespace rr = rubikroute;
using ordered_json = nlohmann::ordered_json;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

std::string plan_to_json(const rr::Plan& plan) {
    ordered_json j;
    j["makespan"] = plan.makespan;
    ordered_json paths = ordered_json::array();
    for (const auto& path : plan.paths) {
        ordered_json p = ordered_json::array();
        for (const rr::Coord& c : path) p.push_back({c.x, c.y, c.z});
        paths.push_back(std::move(p));
    }
    j["paths"] = std::move(paths);
    j["phases"] = {{"unlabeled1", plan.phases.unlabeled1},
                   {"z1", plan.phases.z1},
                   {"xy", plan.phases.xy},
                   {"z2", plan.phases.z2},
                   {"unlabeled2", plan.phases.unlabeled2}};
    j["lower_bound"] = plan.lower_bound;
    return j.dump();
}

std::vector<std::vector<rr::Coord>> paths_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    std::vector<std::vector<rr::Coord>> paths;
    for (const auto& jp : j.at("paths")) {
        std::vector<rr::Coord> path;
        for (const auto& jc : jp)
            path.push_back(rr::Coord{jc.at(0).get<int>(), jc.at(1).get<int>(),
                                     jc.at(2).get<int>()});
        paths.push_back(std::move(path));
    }
    return paths;
}

rr::Algorithm parse_algo(const std::string& name) {
    if (name == "rth3d") return rr::Algorithm::Rth3d;
    if (name == "rth3d-lba") return rr::Algorithm::Rth3dLba;
    throw CLI::ValidationError("--algo", "unknown algorithm '" + name + "'");
}

struct BenchJob {
    int m1, m2, m3;
    double density;
    std::string algo;
    uint64_t seed;
    rr::ObstaclePattern obstacles;
    rr::PatternKind pattern;
};

int worker_count() {
    const char* env = std::getenv("RUBIKROUTE_THREADS");
    int n = env ? std::atoi(env) : 0;
    if (n <= 0) n = static_cast<int>(std::thread::hardware_concurrency());
    return std::max(n, 1);
}

rr::BenchRow run_job(const BenchJob& job) {
    rr::Grid3D grid(job.m1, job.m2, job.m3, job.obstacles);
    rr::Instance inst = rr::generate(grid, {job.pattern, job.density}, job.seed);
    auto t0 = std::chrono::steady_clock::now();
    rr::Plan plan = rr::solve(inst, {parse_algo(job.algo)});
    auto t1 = std::chrono::steady_clock::now();

    rr::BenchRow row;
    row.algorithm = job.algo;
    row.m1 = job.m1;
    row.m2 = job.m2;
    row.m3 = job.m3;
    row.density = job.density;
    row.seed = job.seed;
    row.robots = inst.num_real();
    row.makespan = plan.makespan;
    row.lower_bound = plan.lower_bound;
    row.ratio = plan.ratio;
    row.runtime_ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
    row.phases = plan.phases;
    return row;
}

int run(int argc, char** argv) {
    CLI::App app{"rubikroute: Rubik-Table multi-robot path planning on 3D grids"};
    app.require_subcommand(1);

    // generate
    auto* gen = app.add_subcommand("generate", "generate a random instance file");
    std::vector<int> dims;
    double density = 1.0 / 3.0;
    uint64_t seed = 0;
    std::string pattern = "uniform", obstacles = "none", out_path = "instance.json";
    gen->add_option("--dims", dims, "grid dimensions m1 m2 m3")->expected(3)->required();
    gen->add_option("--density", density, "robots per grid cell, in (0, 1/3]");
    gen->add_option("--seed", seed, "random seed");
    gen->add_option("--pattern", pattern, "uniform | rings | blocks");
    gen->add_option("--obstacles", obstacles, "none | buildings");
    gen->add_option("-o,--output", out_path, "output instance file");

    // solve
    auto* sol = app.add_subcommand("solve", "solve an instance file");
    std::string sol_in, sol_out = "plan.json", algo = "rth3d-lba";
    sol->add_option("instance", sol_in, "instance file")->required();
    sol->add_option("-o,--output", sol_out, "output plan file");
    sol->add_option("--algo", algo, "rth3d | rth3d-lba");

    // validate
    auto* val = app.add_subcommand("validate", "audit a plan against its instance");
    std::string val_inst, val_plan;
    val->add_option("instance", val_inst, "instance file")->required();
    val->add_option("plan", val_plan, "plan file")->required();

    // bench
    auto* ben = app.add_subcommand("bench", "sweep sizes/densities/seeds to CSV");
    std::string sizes_arg = "24x12x6", densities_arg = "0.3333333333333333";
    std::string algos_arg = "rth3d,rth3d-lba", bench_out = "bench.csv", agg_out;
    std::string bench_pattern = "uniform", bench_obstacles = "none";
    int num_seeds = 1;
    ben->add_option("--sizes", sizes_arg, "comma list of m1xm2xm3");
    ben->add_option("--densities", densities_arg, "comma list of densities");
    ben->add_option("--algos", algos_arg, "comma list of algorithms");
    ben->add_option("--seeds", num_seeds, "number of seeds (1..N)");
    ben->add_option("--pattern", bench_pattern, "uniform | rings | blocks");
    ben->add_option("--obstacles", bench_obstacles, "none | buildings");
    ben->add_option("-o,--output", bench_out, "output CSV file");
    ben->add_option("--aggregate", agg_out, "also write per-configuration aggregate CSV");

    // export
    auto* exp = app.add_subcommand("export", "export per-robot timed waypoints");
    std::string exp_inst, exp_plan, exp_out = "waypoints.txt";
    exp->add_option("instance", exp_inst, "instance file")->required();
    exp->add_option("plan", exp_plan, "plan file")->required();
    exp->add_option("-o,--output", exp_out, "output waypoint file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    auto parse_pattern = [](const std::string& p) {
        if (p == "uniform") return rr::PatternKind::UniformRandom;
        if (p == "rings") return rr::PatternKind::Rings;
        if (p == "blocks") return rr::PatternKind::Blocks;
        throw std::runtime_error("unknown pattern '" + p + "'");
    };
    auto parse_obstacles = [](const std::string& o) {
        if (o == "none") return rr::ObstaclePattern::None;
        if (o == "buildings") return rr::ObstaclePattern::Buildings;
        throw std::runtime_error("unknown obstacle pattern '" + o + "'");
    };
    auto split = [](const std::string& s) {
        std::vector<std::string> parts;
        std::stringstream ss(s);
        std::string item;
        while (std::getline(ss, item, ','))
            if (!item.empty()) parts.push_back(item);
        return parts;
    };

    if (*gen) {
        rr::Grid3D grid(dims[0], dims[1], dims[2], parse_obstacles(obstacles));
        rr::Instance inst = rr::generate(grid, {parse_pattern(pattern), density}, seed);
        write_file(out_path, rr::save_instance(inst));
        std::cout << "wrote " << out_path << " (" << inst.num_real() << " robots)\n";
        return 0;
    }

    if (*sol) {
        rr::Instance inst = rr::load_instance(read_file(sol_in));
        auto t0 = std::chrono::steady_clock::now();
        rr::Plan plan = rr::solve(inst, {parse_algo(algo)});
        auto t1 = std::chrono::steady_clock::now();
        write_file(sol_out, plan_to_json(plan));
        std::cout << "makespan=" << plan.makespan << " lower_bound=" << plan.lower_bound
                  << " ratio=" << plan.ratio << " runtime_ms="
                  << std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count()
                  << "\n";
        return 0;
    }

    if (*val) {
        rr::Instance inst = rr::load_instance(read_file(val_inst));
        auto paths = paths_from_json(read_file(val_plan));
        std::vector<rr::Coord> starts(inst.starts.begin(),
                                      inst.starts.begin() + inst.num_real());
        std::vector<rr::Coord> goals(inst.goals.begin(),
                                     inst.goals.begin() + inst.num_real());
        rr::ValidationReport report = rr::validate_paths(inst.grid, starts, goals, paths);
        if (report.ok) {
            std::cout << "ok makespan=" << report.makespan
                      << " lower_bound=" << report.lower_bound << " ratio=" << report.ratio
                      << "\n";
            return 0;
        }
        for (const rr::Violation& v : report.violations) {
            std::cerr << v.kind << " at t=" << v.timestep << " robots";
            for (int r : v.robots) std::cerr << " " << r;
            std::cerr << ": " << v.detail << "\n";
        }
        std::cerr << report.violations.size() << " violation(s)\n";
        return 1;
    }

    if (*ben) {
        std::vector<BenchJob> jobs;
        for (const std::string& size : split(sizes_arg)) {
            int m1, m2, m3;
            char x1, x2;
            std::istringstream ss(size);
            if (!(ss >> m1 >> x1 >> m2 >> x2 >> m3) || x1 != 'x' || x2 != 'x')
                throw std::runtime_error("bad size '" + size + "', expected m1xm2xm3");
            for (const std::string& dens : split(densities_arg))
                for (const std::string& a : split(algos_arg))
                    for (int s = 1; s <= num_seeds; ++s)
                        jobs.push_back(BenchJob{m1, m2, m3, std::stod(dens), a,
                                                static_cast<uint64_t>(s),
                                                parse_obstacles(bench_obstacles),
                                                parse_pattern(bench_pattern)});
        }

        std::vector<rr::BenchRow> rows(jobs.size());
        std::mutex mu;
        size_t next = 0;
        auto work = [&]() {
            for (;;) {
                size_t i;
                {
                    std::lock_guard<std::mutex> lock(mu);
                    if (next >= jobs.size()) return;
                    i = next++;
                }
                rows[i] = run_job(jobs[i]);
            }
        };
        int threads = std::min<int>(worker_count(), static_cast<int>(jobs.size()));
        std::vector<std::thread> pool;
        for (int i = 1; i < threads; ++i) pool.emplace_back(work);
        work();
        for (auto& t : pool) t.join();

        std::sort(rows.begin(), rows.end(), [](const rr::BenchRow& a, const rr::BenchRow& b) {
            return std::tie(a.algorithm, a.m1, a.m2, a.m3, a.density, a.seed) <
                   std::tie(b.algorithm, b.m1, b.m2, b.m3, b.density, b.seed);
        });
        std::ostringstream csv;
        csv << rr::csv_header() << "\n";
        for (const rr::BenchRow& row : rows) csv << rr::csv_row(row) << "\n";
        write_file(bench_out, csv.str());
        std::cout << "wrote " << bench_out << " (" << rows.size() << " rows)\n";

        if (!agg_out.empty()) {
            std::ostringstream agg;
            agg << "algorithm,m1,m2,m3,density,count,mean_makespan,min_makespan,"
                   "max_makespan,mean_ratio,mean_runtime_ms\n";
            for (const rr::AggregateRow& a : rr::aggregate(rows))
                agg << a.algorithm << ',' << a.m1 << ',' << a.m2 << ',' << a.m3 << ','
                    << a.density << ',' << a.count << ',' << a.mean_makespan << ','
                    << a.min_makespan << ',' << a.max_makespan << ',' << a.mean_ratio << ','
                    << a.mean_runtime_ms << "\n";
            write_file(agg_out, agg.str());
        }
        return 0;
    }

    if (*exp) {
        auto paths = paths_from_json(read_file(exp_plan));
        std::ostringstream out;
        for (size_t i = 0; i < paths.size(); ++i) {
            if (i) out << "\n";
            for (size_t t = 0; t < paths[i].size(); ++t)
                out << t << " " << paths[i][t].x << " " << paths[i][t].y << " "
                    << paths[i][t].z << "\n";
        }
        write_file(exp_out, out.str());
        std::cout << "wrote " << exp_out << " (" << paths.size() << " robots)\n";
        return 0;
    }

    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

/*
   Copyright 2026 The wicklab authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include <fstream>
#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "wicklab/problem.hpp"

namespace {

std::vector<double> parse_grid(const std::string& spec) {
    std::vector<double> grid;
    std::string cur;
    for (char c : spec + ",") {
        if (c == ',') {
            if (!cur.empty()) grid.push_back(std::stod(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    return grid;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"wicklab: Wick expansions of finite-dimensional integrals"};
    app.require_subcommand(1);

    std::string problem_path;
    std::string out_path;
    std::string backend;
    std::string grid_spec;
    int order = -1;
    int nodes = -1;
    double tolerance = 1e-9;
    std::uint64_t seed = 0;

    // lattice-demo can run without a problem file
    int lat_n = 4;
    int lat_dim = 1;
    std::string lat_dx = "1";

    const std::vector<std::string> commands = {
        "expand",         "transform", "check-ibp",   "morse-bott", "gauge-slice",
        "gauge-weighted", "fp-volume", "asymptotics", "lattice-demo"};
    std::map<std::string, CLI::App*> subs;
    for (const auto& name : commands) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("problem", problem_path, "problem file (JSON)");
        sub->add_option("--order", order, "truncation order N");
        sub->add_option("--backend", backend, "exact | float");
        sub->add_option("--tolerance", tolerance, "numeric tolerance");
        sub->add_option("--out", out_path, "output path for the JSON report");
        sub->add_option("--seed", seed, "seed for randomized checks");
        sub->add_option("--nodes", nodes, "quadrature nodes on Z");
        sub->add_option("--grid", grid_spec, "hbar grid: \"h1,h2,...\"");
        if (name == "lattice-demo") {
            sub->add_option("--n", lat_n, "sites per side");
            sub->add_option("--dim", lat_dim, "lattice dimension (1 or 2)");
            sub->add_option("--dx", lat_dx, "lattice spacing (rational)");
        }
        subs[name] = sub;
    }

    CLI11_PARSE(app, argc, argv);

    std::string command;
    for (const auto& [name, sub] : subs)
        if (sub->parsed()) command = name;

    try {
        wicklab::Problem problem;
        if (!problem_path.empty()) {
            problem = wicklab::Problem::from_file(problem_path);
        } else if (command == "lattice-demo") {
            problem.order = 1;
        } else {
            std::cerr << "error: a problem file is required for " << command << "\n";
            return 1;
        }
        if (command == "lattice-demo" && !problem.lattice) {
            problem.lattice = wicklab::Problem::Lattice{lat_dim, lat_n, lat_dx};
        }

        wicklab::RunOptions opts;
        if (order >= 0) opts.order = order;
        if (!backend.empty()) opts.backend = backend;
        opts.tolerance = tolerance;
        opts.seed = seed;
        if (nodes > 0) opts.nodes = nodes;
        if (!grid_spec.empty()) opts.grid = parse_grid(grid_spec);
        opts.out_path = out_path;

        wicklab::RunResult result = wicklab::run_command(command, problem, opts);

        if (out_path.empty()) {
            std::cout << result.report_json << "\n";
        } else {
            std::ofstream out(out_path);
            if (!out) {
                std::cerr << "error: cannot write " << out_path << "\n";
                return 1;
            }
            out << result.report_json << "\n";
            if (!result.report_csv.empty()) {
                std::string csv_path = out_path;
                auto dot = csv_path.rfind('.');
                if (dot != std::string::npos) csv_path.resize(dot);
                csv_path += ".csv";
                std::ofstream csv(csv_path);
                csv << result.report_csv;
            }
        }
        return result.exit_code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

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

#ifndef WICKLAB_PROBLEM_HPP
#define WICKLAB_PROBLEM_HPP

#include <optional>
#include <string>

#include "wicklab/expansion.hpp"

namespace wicklab {

/// Declarative problem file: expressions are strings in the CLI grammar,
/// parsed against the declared variables. Optional blocks configure the
/// gauge, Morse-Bott, transform, sweep and lattice subcommands.
struct Problem {
    int dimension = 1;
    std::vector<std::string> variables;
    std::string action;
    std::string observable = "1";
    std::vector<std::string> point;
    int order = 2;
    Backend backend = Backend::Exact;

    struct Gauge {
        std::vector<std::vector<std::vector<std::string>>> generators;  // g x d x d entries
        // slice: affine or level set
        std::optional<std::vector<std::string>> slice_base;
        std::optional<std::vector<std::vector<std::string>>> slice_directions;  // d x m
        double slice_param_lo = -1e300, slice_param_hi = 1e300;
        std::optional<std::vector<std::string>> level_f;
        std::optional<std::vector<std::string>> level_q0;
        // weighted gauge
        std::optional<std::vector<std::string>> weighted_f;
        std::string weighted_h;
        std::vector<std::string> weighted_q0;
    };
    std::optional<Gauge> gauge;

    struct MorseBott {
        std::string fibration = "radial";  // radial | sheared
        double radius = 1.0;
        double shear = 0.5;
        int nodes = 64;
    };
    std::optional<MorseBott> morse_bott;

    struct Sweep {
        std::vector<double> grid;
    };
    std::optional<Sweep> sweep;

    struct Transform {
        std::vector<std::string> phi;  // d component expressions
        int degree_cap = -1;
    };
    std::optional<Transform> transform;

    struct Lattice {
        int dim = 1;
        int n = 4;
        std::string dx = "1";
    };
    std::optional<Lattice> lattice;

    static Problem from_json_text(const std::string& text);
    static Problem from_file(const std::string& path);
    std::string to_json_text() const;

    Integrand build_integrand() const;
    std::vector<Coefficient> build_point() const;
};

struct RunOptions {
    std::optional<int> order;
    std::optional<std::string> backend;
    double tolerance = 1e-9;
    std::string out_path;  // empty = stdout
    std::uint64_t seed = 0;
    std::optional<int> nodes;
    std::optional<std::vector<double>> grid;
};

struct RunResult {
    int exit_code = 0;  // 0 ok, 1 error, 2 identity-check failure
    std::string report_json;
    std::string report_csv;  // non-empty only for sweep commands
};

/// Dispatches a CLI subcommand against a problem. Valid commands: expand,
/// transform, check-ibp, morse-bott, gauge-slice, gauge-weighted, fp-volume,
/// asymptotics, lattice-demo.
RunResult run_command(const std::string& command, const Problem& problem,
                      const RunOptions& options);

/// JSON form of a Wick series per the report schema.
std::string wick_series_json(const WickSeries& w);

}  // namespace wicklab

#endif

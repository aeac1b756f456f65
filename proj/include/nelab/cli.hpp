#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "nelab/scalar.hpp"

namespace nelab::cli {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Parsed command line. parse_args(render(config)) == config.
struct RunConfig {
    std::string command = "check";  // check | suite
    std::string check = "daugavet";
    std::string space_dsl = "linf(2)";
    Field field = Field::real;

    Scalar omega{-1.0, 0.0};
    Scalar a{2.0, 0.0};
    Scalar b{-3.0, 0.0};
    Scalar g0{-1.0, 0.0};
    std::string g_dsl = "poly:0,0,1";
    Scalar lambda{1.0, 0.0};
    double eps = 0.5;
    double alpha = 0.5;
    int sign = 1;
    int budget = 512;
    std::vector<double> t_grid{0.0, 0.5, 1.0, 5.0, 50.0};
    std::vector<double> eps_grid{0.5, 0.25, 0.1};
    std::vector<double> scalar_grid{0.0, 0.5, 1.0, 2.0, 5.0};
    std::vector<double> x_coords;  // empty: per-check default
    std::vector<double> f_coords;

    int samples = 1000;
    std::uint64_t seed = 42;
    double tolerance = 1e-9;
    int parallel = 1;
    std::string out_path;  // empty: stdout
    std::string format = "json";

    bool operator==(const RunConfig&) const = default;
};

/// Arguments exclude the program name. NELAB_SEED overrides the default seed.
RunConfig parse_args(const std::vector<std::string>& args);

/// Canonical argument vector reproducing the config.
std::vector<std::string> render(const RunConfig& config);

/// Executes the run and writes the report. Exit codes: 0 holds, 1 fails,
/// 2 undecided, 3 usage error, 4 I/O error.
int run(const RunConfig& config);

int cli_main(int argc, char** argv);

}  // namespace nelab::cli

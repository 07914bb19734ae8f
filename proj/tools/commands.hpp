#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace hetrrr::cli {

enum ExitCode : int { kOk = 0, kInvalid = 2, kDiverged = 3 };

struct FitArgs {
    std::string x_path;
    std::string y_path;
    std::string out_path;
    std::string penalty = "mcp";
    std::optional<double> gamma;
    double theta = 1.0;
    double epsilon = 1e-4;
    double dual_epsilon = 1e-3;
    int max_iter = 1000;
    std::optional<int> rank_max;
    int n_lambda = 20;
    double lambda_star = 0.001;
    bool cold_start = false;
    std::uint64_t seed = 0;
    std::optional<int> rank;
    std::optional<double> lambda;
    int jobs = 1;
};

struct SimulateArgs {
    int example = 1;
    std::string setting = "i";
    std::optional<double> snr;
    std::optional<double> mu;
    std::uint64_t seed = 0;
    std::string out_dir;
};

struct ReplicateArgs {
    int example = 1;
    std::string setting = "i";
    std::optional<double> snr;
    std::optional<double> mu;
    int reps = 20;
    std::string methods = "sr-mcp";
    std::uint64_t seed = 0;
    std::string out_path;
    double theta = 1.0;
    double epsilon = 1e-4;
    double dual_epsilon = 1e-3;
    int max_iter = 1000;
    int n_lambda = 20;
    bool cold_start = false;
    int jobs = 1;
};

// Each returns the process exit code; diagnostics go to standard error.
int cmd_fit(const FitArgs& args);
int cmd_simulate(const SimulateArgs& args);
int cmd_replicate(const ReplicateArgs& args);

/// --jobs unless HETRRR_THREADS holds a positive integer.
int effective_jobs(int requested);

}  // namespace hetrrr::cli

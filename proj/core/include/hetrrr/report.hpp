#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "hetrrr/methods.hpp"
#include "hetrrr/selection.hpp"
#include "hetrrr/simulate.hpp"

namespace hetrrr {

// JSON documents written by the command-line tool. Matrices are row-major
// nested arrays, labels are 1-based, doubles use the shortest round-trip
// form, and nothing time-dependent is recorded, so identical inputs give
// byte-identical files.

/// truth.json: the simulation spec, B*, C*, training and test labels, sigma,
/// mu and b_n (null for a single group).
std::string truth_json(const SimulationSpec& spec, const SimulatedData& sim);

struct FitRunConfig {
    std::string x_path;
    std::string y_path;
    PenaltySpec penalty;
    AdmmConfig admm;
    int rank_max = 0;
    int n_lambda = kDefaultLambdaCount;
    double lambda_star = kDefaultRidgeLambda;
    bool cold_start = false;
    std::uint64_t seed = 0;
    std::optional<int> rank;       // pinned rank
    std::optional<double> lambda;  // pinned lambda
};

/// report.json with top-level keys config, fit, selection, diagnostics.
/// `selection` is null for a pinned single-point fit.
std::string fit_report_json(const FitRunConfig& config, const Dataset& data, const FitResult& fit,
                            const SelectionReport* selection);

std::string penalty_name(PenaltyKind kind);

}  // namespace hetrrr

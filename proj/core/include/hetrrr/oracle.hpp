#pragma once

#include <cstdint>
#include <vector>

#include "hetrrr/model.hpp"

namespace hetrrr {

/// Fit of min ||Y - XB - WC||_F^2 subject to rank(B) <= r with known labels.
struct OracleFit {
    Matrix B;                       // p x q
    Matrix C;                       // K x q
    double objective = 0.0;         // final ||Y - XB - WC||_F^2
    std::vector<double> trace;      // objective after every half-step
    int iterations = 0;
    bool converged = false;
};

/// Alternating least squares from C = group means of Y, B = 0: the C-step is
/// the groupwise mean of Y - XB, the B-step a rank-r solve on Y - WC. Stops
/// once an iteration lowers the objective by at most 1e-10 (1 + objective)
/// and moves (B, C) by at most 1e-10 (1 + ||(B, C)||), or after max_iter.
/// Throws EmptyGroup, RankOutOfRange, DimensionMismatch.
OracleFit oracle_fit(const Dataset& data, const Matrix& W, int r_star, int max_iter = 500);

/// Same with 0-based labels in [0, K).
OracleFit oracle_fit(const Dataset& data, const std::vector<int>& labels, int K, int r_star,
                     int max_iter = 500);

/// K-fold cross-validated rank for the oracle fit with known labels. A group
/// absent from a training fold predicts its validation rows with the mean of
/// the fitted intercepts.
int oracle_cv_rank(const Dataset& data, const std::vector<int>& labels, int K, int r_max,
                   int folds = 5, std::uint64_t seed = 0);

}  // namespace hetrrr

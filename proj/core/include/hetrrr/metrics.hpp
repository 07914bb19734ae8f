#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "hetrrr/model.hpp"
#include "hetrrr/simulate.hpp"

namespace hetrrr {

/// What every method hands to the evaluator: coefficients, per-group
/// intercepts and the training labels they apply to.
struct Estimate {
    Matrix B_hat;                 // p x q
    Matrix C_hat;                 // K_hat x q
    std::vector<int> assignment;  // training rows -> rows of C_hat
    int rank_hat = 0;
    bool converged = true;
};
Estimate estimate_from_fit(const FitResult& fit);

/// match[k] is the estimated group paired with true group k, or -1.
struct GroupAlignment {
    std::vector<int> match;
    double cost = 0.0;  // sum of ||c_hat - c_star||_2 over matched pairs
};

/// Optimal one-to-one matching of the rows of C_star to rows of C_hat
/// (Hungarian algorithm on the K x K_hat distance matrix).
GroupAlignment align_groups(const Matrix& C_hat, const Matrix& C_star);

struct EvalRecord {
    double err_B = 0.0;
    double err_A = 0.0;
    double pre = 0.0;
    int rank_hat = 0;
    int K_hat = 0;
    std::vector<double> per_group_err;  // aligned with the true groups
    std::vector<bool> group_absent;     // true group left unmatched
    bool converged = true;
    bool partition_match = false;       // estimated labels induce the true partition
};

/// Throws DimensionMismatch.
EvalRecord evaluate_estimate(const Estimate& est, const GroundTruth& truth, const TestSet& test);
EvalRecord evaluate_fit(const FitResult& fit, const GroundTruth& truth, const TestSet& test);

struct MeasureSummary {
    double mean = 0.0;
    double sd = 0.0;  // across-replication sample standard deviation
};

struct Summary {
    int records = 0;
    MeasureSummary err_B;
    MeasureSummary err_A;
    MeasureSummary pre;
    MeasureSummary rank;
    MeasureSummary K_hat;
    std::vector<MeasureSummary> group_err;
    std::vector<double> group_absent_pct;
    double rank_pct = 0.0;
    double K_pct = 0.0;
    double converged_pct = 0.0;
    double oracle_agree_pct = 0.0;  // partition and rank both exact
};

/// Throws EmptyInput.
Summary aggregate(const std::vector<EvalRecord>& records, int truth_rank, int truth_K);

/// Column order: method, Err(B), Err(A), Pre, Rank, Rank%, Err(alpha_k)...,
/// K_hat, K%, then bookkeeping columns. Means and SDs sit side by side.
void write_summary_header(std::ostream& out, int K);
void write_summary_row(std::ostream& out, const std::string& method, const Summary& s, int failed);

}  // namespace hetrrr

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "hetrrr/error.hpp"

namespace hetrrr {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
// Pairwise quantities (delta, dual variables) are stored one pair per row and
// are only ever traversed row by row.
using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

using Index = Eigen::Index;

/// Training data for one fit: predictors X (n x p) and responses Y (n x q).
struct Dataset {
    Matrix X;
    Matrix Y;

    Index n() const noexcept { return Y.rows(); }
    Index p() const noexcept { return X.cols(); }
    Index q() const noexcept { return Y.cols(); }
};

/// Checks row agreement, n >= 2 and finiteness. Throws DimensionMismatch,
/// TooFewRows or NonFiniteEntry.
Dataset validate_dataset(Matrix X, Matrix Y);

enum class PenaltyKind { L1, MCP, SCAD };

struct PenaltySpec {
    PenaltyKind kind = PenaltyKind::MCP;
    double gamma = 3.0;  // ignored for L1

    static PenaltySpec l1() { return {PenaltyKind::L1, 0.0}; }
    static PenaltySpec mcp(double gamma = 3.0) { return {PenaltyKind::MCP, gamma}; }
    static PenaltySpec scad(double gamma = 3.7) { return {PenaltyKind::SCAD, gamma}; }

    /// MCP needs gamma > 1, SCAD gamma > 2.
    void validate() const;
    /// Additionally checks the pairing with the ADMM step size that the
    /// closed-form delta updates require: gamma > 1/theta (MCP) and
    /// gamma > 1/theta + 1 (SCAD).
    void validate_for_theta(double theta) const;
};

struct AdmmConfig {
    double theta = 1.0;
    double epsilon = 1e-4;
    int max_iter = 1000;
    double lambda = 0.0;
    int rank = 1;
    // The run stops once primal_res < epsilon and dual_res < dual_epsilon.
    // A value <= 0 drops the dual condition (primal residual alone).
    double dual_epsilon = 1e-3;

    /// Throws InvalidConfig / RankOutOfRange.
    void validate(Index p, Index q) const;
};

struct AdmmState {
    Matrix A;          // n x q
    Matrix B;          // p x q
    RowMatrix delta;   // n(n-1)/2 x q, row pair_index(i, j) holds delta_ij
    RowMatrix V;       // n(n-1)/2 x q, dual variables
    int iter = 0;
    double primal_res = 0.0;
    double dual_res = 0.0;
};

/// Labels are 0-based in memory (0 .. K_hat-1); files use 1-based labels.
struct SubgroupPartition {
    std::vector<int> assignment;
    int K_hat = 0;
    Matrix C_hat;  // K_hat x q

    /// Row i equals row assignment[i] of C_hat.
    Matrix implied_A() const;
};

struct TraceRecord {
    double primal_res = 0.0;
    double dual_res = 0.0;
    double objective = 0.0;  // 1/2 ||Y - XB - A||^2 + sum_ij p(||delta_ij||)
};

struct FitResult {
    Matrix A_hat;
    Matrix B_hat;
    SubgroupPartition partition;
    int rank_used = 0;
    double lambda_used = 0.0;
    bool converged = false;
    int iterations = 0;
    std::vector<TraceRecord> trace;
    double tol_merge = 0.0;
    AdmmState state;  // final iterate, reusable as a warm start
};

// --- canonical pair ordering -------------------------------------------------

inline Index num_pairs(Index n) noexcept { return n * (n - 1) / 2; }

/// 0-based index of pair (i, j), i < j, in lexicographic order.
/// Throws InvalidPair when i >= j or j >= n.
Index pair_index(Index i, Index j, Index n);

/// Delta * A: row pair_index(i, j) is a_i - a_j.
RowMatrix pairwise_differences(const Matrix& A);
void pairwise_differences(const Matrix& A, RowMatrix& out);

/// Delta^T * M for a pairs x q matrix M, accumulated without forming Delta.
Matrix delta_transpose_apply(const RowMatrix& M, Index n);

/// Largest ||a_i - a_j||_2 over all pairs.
double max_pairwise_row_distance(const Matrix& A);

}  // namespace hetrrr

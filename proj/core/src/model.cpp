#include "hetrrr/model.hpp"

#include <cmath>
#include <string>

namespace hetrrr {

Dataset validate_dataset(Matrix X, Matrix Y) {
    if (X.rows() != Y.rows()) {
        throw Error(ErrorCode::DimensionMismatch,
                    "X has " + std::to_string(X.rows()) + " rows but Y has " +
                        std::to_string(Y.rows()));
    }
    if (Y.rows() < 2) {
        throw Error(ErrorCode::TooFewRows, "need at least 2 observations");
    }
    if (X.cols() < 1 || Y.cols() < 1) {
        throw Error(ErrorCode::DimensionMismatch, "X and Y need at least one column");
    }
    if (!X.allFinite()) throw Error(ErrorCode::NonFiniteEntry, "X contains NaN or Inf");
    if (!Y.allFinite()) throw Error(ErrorCode::NonFiniteEntry, "Y contains NaN or Inf");
    return Dataset{std::move(X), std::move(Y)};
}

void PenaltySpec::validate() const {
    switch (kind) {
        case PenaltyKind::L1:
            return;
        case PenaltyKind::MCP:
            if (!(gamma > 1.0)) throw Error(ErrorCode::InvalidGamma, "MCP requires gamma > 1");
            return;
        case PenaltyKind::SCAD:
            if (!(gamma > 2.0)) throw Error(ErrorCode::InvalidGamma, "SCAD requires gamma > 2");
            return;
    }
}

void PenaltySpec::validate_for_theta(double theta) const {
    validate();
    if (!(theta > 0.0)) throw Error(ErrorCode::InvalidConfig, "theta must be positive");
    if (kind == PenaltyKind::MCP && !(gamma > 1.0 / theta)) {
        throw Error(ErrorCode::InvalidGamma, "MCP delta update requires gamma > 1/theta");
    }
    if (kind == PenaltyKind::SCAD && !(gamma > 1.0 / theta + 1.0)) {
        throw Error(ErrorCode::InvalidGamma, "SCAD delta update requires gamma > 1/theta + 1");
    }
}

void AdmmConfig::validate(Index p, Index q) const {
    if (!(theta > 0.0) || !std::isfinite(theta)) {
        throw Error(ErrorCode::InvalidConfig, "theta must be positive and finite");
    }
    if (!(epsilon > 0.0)) throw Error(ErrorCode::InvalidConfig, "epsilon must be positive");
    if (max_iter < 1) throw Error(ErrorCode::InvalidConfig, "max_iter must be >= 1");
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
        throw Error(ErrorCode::InvalidConfig, "lambda must be nonnegative and finite");
    }
    if (rank < 1 || rank > std::min(p, q)) {
        throw Error(ErrorCode::RankOutOfRange,
                    "rank " + std::to_string(rank) + " outside [1, " +
                        std::to_string(std::min(p, q)) + "]");
    }
}

Matrix SubgroupPartition::implied_A() const {
    Matrix A(static_cast<Index>(assignment.size()), C_hat.cols());
    for (std::size_t i = 0; i < assignment.size(); ++i) {
        A.row(static_cast<Index>(i)) = C_hat.row(assignment[i]);
    }
    return A;
}

Index pair_index(Index i, Index j, Index n) {
    if (i < 0 || j >= n || i >= j) {
        throw Error(ErrorCode::InvalidPair, "pair (" + std::to_string(i) + ", " +
                                                std::to_string(j) + ") invalid for n = " +
                                                std::to_string(n));
    }
    return i * n - i * (i + 1) / 2 + (j - i - 1);
}

void pairwise_differences(const Matrix& A, RowMatrix& out) {
    const Index n = A.rows();
    const Index q = A.cols();
    const RowMatrix a = A;
    out.resize(num_pairs(n), q);
    Index k = 0;
    for (Index i = 0; i < n; ++i) {
        for (Index j = i + 1; j < n; ++j, ++k) {
            out.row(k) = a.row(i) - a.row(j);
        }
    }
}

RowMatrix pairwise_differences(const Matrix& A) {
    RowMatrix out;
    pairwise_differences(A, out);
    return out;
}

Matrix delta_transpose_apply(const RowMatrix& M, Index n) {
    const Index q = M.cols();
    if (M.rows() != num_pairs(n)) {
        throw Error(ErrorCode::DimensionMismatch, "pair matrix has wrong number of rows");
    }
    RowMatrix acc = RowMatrix::Zero(n, q);
    Index k = 0;
    for (Index i = 0; i < n; ++i) {
        for (Index j = i + 1; j < n; ++j, ++k) {
            acc.row(i) += M.row(k);
            acc.row(j) -= M.row(k);
        }
    }
    return acc;
}

double max_pairwise_row_distance(const Matrix& A) {
    const RowMatrix a = A;
    double best = 0.0;
    for (Index i = 0; i < a.rows(); ++i) {
        for (Index j = i + 1; j < a.rows(); ++j) {
            best = std::max(best, (a.row(i) - a.row(j)).squaredNorm());
        }
    }
    return std::sqrt(best);
}

}  // namespace hetrrr

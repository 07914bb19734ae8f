#pragma once

#include "hetrrr/model.hpp"

namespace hetrrr {

/// Result of rank-constrained least squares min ||Z - XB||_F^2, rank(B) <= r.
struct RrrFit {
    Matrix B_hat;       // p x q
    int rank = 0;
    Matrix eigvecs;     // q x r, leading eigenvectors of Z' Q_X Z
    Vector eigvals;     // r leading eigenvalues, nonincreasing
    Vector spectrum;    // all q eigenvalues of Z' Q_X Z, nonincreasing
    bool tie_warning = false;  // r-th and (r+1)-th eigenvalues coincide
};

/// Factorized design X with the (X'X)^{-1} machinery shared by every B-solve.
/// Construction throws SingularDesign when X'X is singular or its condition
/// number exceeds 1e12.
class LeastSquaresDesign {
public:
    static constexpr double kMaxCondition = 1e12;

    explicit LeastSquaresDesign(Matrix X);

    const Matrix& X() const noexcept { return X_; }
    Index n() const noexcept { return X_.rows(); }
    Index p() const noexcept { return X_.cols(); }
    double condition_number() const noexcept { return condition_; }

    /// (X'X)^{-1} X' Z
    Matrix ols(const Matrix& Z) const;
    /// Q_X = X (X'X)^{-1} X'  (n x n)
    Matrix projector() const;
    /// Rank-r solve. Throws RankOutOfRange unless 1 <= r <= min(p, q).
    RrrFit rrr(const Matrix& Z, int r) const;

private:
    Matrix X_;
    Eigen::LLT<Matrix> gram_;
    double condition_ = 0.0;
};

Matrix hat_projection(const Matrix& X);

RrrFit rrr_fit(const Matrix& X, const Matrix& Z, int r);

/// Rank-r fit with a free (unpenalized, rank-exempt) intercept row:
/// min ||Z - 1 c' - XB||_F^2 subject to rank(B) <= r.
struct InterceptRrrFit {
    RrrFit rrr;
    Vector intercept;  // length q
};
InterceptRrrFit rrr_fit_with_intercept(const Matrix& X, const Matrix& Z, int r);

/// Numerical rank at tolerance rel_tol * largest singular value.
int numerical_rank(const Matrix& M, double rel_tol = 1e-8);

}  // namespace hetrrr

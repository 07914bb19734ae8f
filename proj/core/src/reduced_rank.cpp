#include "hetrrr/reduced_rank.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace hetrrr {

LeastSquaresDesign::LeastSquaresDesign(Matrix X) : X_(std::move(X)) {
    if (X_.rows() < 1 || X_.cols() < 1) {
        throw Error(ErrorCode::SingularDesign, "empty design matrix");
    }
    const Matrix gram = X_.transpose() * X_;
    Eigen::SelfAdjointEigenSolver<Matrix> eig(gram, Eigen::EigenvaluesOnly);
    const double lo = eig.eigenvalues().minCoeff();
    const double hi = eig.eigenvalues().maxCoeff();
    if (!(hi > 0.0) || !(lo > 0.0) || hi / lo > kMaxCondition) {
        throw Error(ErrorCode::SingularDesign,
                    "X'X is numerically singular (condition number " +
                        std::to_string(lo > 0.0 ? hi / lo : INFINITY) + ")");
    }
    condition_ = hi / lo;
    gram_.compute(gram);
    if (gram_.info() != Eigen::Success) {
        throw Error(ErrorCode::SingularDesign, "Cholesky factorization of X'X failed");
    }
}

Matrix LeastSquaresDesign::ols(const Matrix& Z) const {
    if (Z.rows() != X_.rows()) {
        throw Error(ErrorCode::DimensionMismatch, "response rows differ from design rows");
    }
    return gram_.solve(X_.transpose() * Z);
}

Matrix LeastSquaresDesign::projector() const {
    return X_ * gram_.solve(X_.transpose());
}

RrrFit LeastSquaresDesign::rrr(const Matrix& Z, int r) const {
    const Index q = Z.cols();
    if (r < 1 || r > std::min(p(), q)) {
        throw Error(ErrorCode::RankOutOfRange,
                    "rank " + std::to_string(r) + " outside [1, " +
                        std::to_string(std::min(p(), q)) + "]");
    }
    const Matrix XtZ = X_.transpose() * Z;
    const Matrix B_ols = gram_.solve(XtZ);
    // Z' Q_X Z = (X'Z)' (X'X)^{-1} (X'Z); only a q x q eigenproblem.
    Matrix M = XtZ.transpose() * B_ols;
    M = 0.5 * (M + M.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Matrix> eig(M);

    RrrFit fit;
    fit.rank = r;
    fit.spectrum = eig.eigenvalues().reverse();
    fit.eigvals = fit.spectrum.head(r);
    fit.eigvecs = eig.eigenvectors().rightCols(r).rowwise().reverse();
    if (r == q) {
        fit.B_hat = B_ols;
    } else {
        fit.B_hat = (B_ols * fit.eigvecs) * fit.eigvecs.transpose();
        const double scale = std::max(std::abs(fit.spectrum(0)), 1e-300);
        fit.tie_warning = std::abs(fit.spectrum(r - 1) - fit.spectrum(r)) <= 1e-10 * scale;
    }
    return fit;
}

Matrix hat_projection(const Matrix& X) { return LeastSquaresDesign(X).projector(); }

RrrFit rrr_fit(const Matrix& X, const Matrix& Z, int r) { return LeastSquaresDesign(X).rrr(Z, r); }

InterceptRrrFit rrr_fit_with_intercept(const Matrix& X, const Matrix& Z, int r) {
    if (X.rows() != Z.rows()) {
        throw Error(ErrorCode::DimensionMismatch, "response rows differ from design rows");
    }
    const Eigen::RowVectorXd x_mean = X.colwise().mean();
    const Eigen::RowVectorXd z_mean = Z.colwise().mean();
    const Matrix Xc = X.rowwise() - x_mean;
    const Matrix Zc = Z.rowwise() - z_mean;
    InterceptRrrFit out;
    out.rrr = LeastSquaresDesign(Xc).rrr(Zc, r);
    out.intercept = (z_mean - x_mean * out.rrr.B_hat).transpose();
    return out;
}

int numerical_rank(const Matrix& M, double rel_tol) {
    if (M.size() == 0) return 0;
    Eigen::JacobiSVD<Matrix> svd(M);
    const auto& s = svd.singularValues();
    if (s.size() == 0 || s(0) == 0.0) return 0;
    return static_cast<int>((s.array() > rel_tol * s(0)).count());
}

}  // namespace hetrrr

#include <gtest/gtest.h>

#include <random>

#include "hetrrr/reduced_rank.hpp"
#include "oracles.hpp"

using namespace hetrrr;

TEST(Rrr, ObjectiveMatchesEckartYoung) {
    std::mt19937_64 rng(9);
    std::uniform_int_distribution<int> dim(1, 6);
    for (int c = 0; c < 50; ++c) {
        const int p = dim(rng);
        const int q = dim(rng);
        const int n = std::uniform_int_distribution<int>(p + 2, 20)(rng);
        const Matrix X = oracles::random_matrix(n, p, rng);
        const Matrix Z = oracles::random_matrix(n, q, rng);
        for (int r = 1; r <= std::min(p, q); ++r) {
            const auto fit = rrr_fit(X, Z, r);
            const double got = (Z - X * fit.B_hat).squaredNorm();
            const double ref = oracles::eckart_young_objective(X, Z, r);
            EXPECT_LE(std::abs(got - ref), 1e-8 * ref) << "case " << c << " r=" << r;
            EXPECT_LE(numerical_rank(fit.B_hat), r);
        }
    }
}

TEST(Rrr, FullRankIsOls) {
    std::mt19937_64 rng(10);
    const Matrix X = oracles::random_matrix(30, 5, rng);
    const Matrix Z = oracles::random_matrix(30, 4, rng);
    const Matrix ols = X.colPivHouseholderQr().solve(Z);
    EXPECT_LT((rrr_fit(X, Z, 4).B_hat - ols).cwiseAbs().maxCoeff(), 1e-10);
    const LeastSquaresDesign design(X);
    EXPECT_LT((design.ols(Z) - ols).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(Rrr, SpectrumAndEigenvectors) {
    std::mt19937_64 rng(12);
    const Matrix X = oracles::random_matrix(25, 4, rng);
    const Matrix Z = oracles::random_matrix(25, 5, rng);
    const auto fit = rrr_fit(X, Z, 2);
    ASSERT_EQ(fit.spectrum.size(), 5);
    for (Index k = 1; k < 5; ++k) EXPECT_GE(fit.spectrum[k - 1], fit.spectrum[k]);
    EXPECT_LT((fit.eigvecs.transpose() * fit.eigvecs - Matrix::Identity(2, 2)).norm(), 1e-10);
    const Matrix fitted = hat_projection(X) * Z;
    EXPECT_NEAR(fit.spectrum.sum(), fitted.squaredNorm(), 1e-8 * fitted.squaredNorm());
}

TEST(Rrr, TieWarning) {
    // Z = X with an identity-like structure makes all eigenvalues equal.
    Matrix X = Matrix::Zero(6, 2);
    X(0, 0) = X(1, 1) = 1.0;
    X(2, 0) = X(3, 1) = -1.0;
    X(4, 0) = X(5, 1) = 2.0;
    const auto fit = rrr_fit(X, X, 1);
    EXPECT_TRUE(fit.tie_warning);
}

TEST(Rrr, Errors) {
    std::mt19937_64 rng(13);
    const Matrix X = oracles::random_matrix(10, 3, rng);
    const Matrix Z = oracles::random_matrix(10, 2, rng);
    try {
        rrr_fit(X, Z, 3);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::RankOutOfRange);
    }
    Matrix Xs = X;
    Xs.col(2) = Xs.col(0);
    try {
        LeastSquaresDesign bad(Xs);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::SingularDesign);
    }
}

TEST(Rrr, WithInterceptMatchesCenteredProblem) {
    std::mt19937_64 rng(14);
    const Matrix X = oracles::random_matrix(40, 5, rng);
    Matrix Z = oracles::random_matrix(40, 4, rng);
    Z.rowwise() += Eigen::RowVectorXd::LinSpaced(4, 1.0, 4.0);
    const auto fit = rrr_fit_with_intercept(X, Z, 2);
    const double got = ((Z - X * fit.rrr.B_hat).rowwise() - fit.intercept.transpose()).squaredNorm();
    // Profiling out the intercept centers both sides.
    const Matrix Xc = X.rowwise() - X.colwise().mean();
    const Matrix Zc = Z.rowwise() - Z.colwise().mean();
    EXPECT_NEAR(got, oracles::eckart_young_objective(Xc, Zc, 2), 1e-8 * got);
    // Any other intercept does worse.
    const Vector shifted = fit.intercept + Vector::Constant(4, 0.01);
    EXPECT_GT(((Z - X * fit.rrr.B_hat).rowwise() - shifted.transpose()).squaredNorm(), got);
}

TEST(NumericalRank, Basic) {
    std::mt19937_64 rng(15);
    const Matrix L = oracles::random_matrix(8, 2, rng);
    const Matrix R = oracles::random_matrix(2, 6, rng);
    EXPECT_EQ(numerical_rank(L * R), 2);
    EXPECT_EQ(numerical_rank(Matrix::Zero(3, 3)), 0);
}

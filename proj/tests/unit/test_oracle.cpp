#include <gtest/gtest.h>

#include "hetrrr/oracle.hpp"
#include "hetrrr/subgroup.hpp"
#include "oracles.hpp"

using namespace hetrrr;

namespace {

struct Problem {
    Dataset data;
    std::vector<int> labels;
    Matrix B;
    Matrix C;
};

Problem make_problem(std::uint64_t seed, double noise, Index n = 60, Index p = 5, Index q = 4, int r = 2, int K = 3) {
    std::mt19937_64 rng(seed);
    Problem pr;
    const Matrix X = oracles::random_matrix(n, p, rng);
    pr.B = oracles::random_matrix(p, r, rng) * oracles::random_matrix(r, q, rng);
    pr.C = 3.0 * oracles::random_matrix(K, q, rng);
    for (Index i = 0; i < n; ++i) pr.labels.push_back(static_cast<int>(i % K));
    const Matrix W = indicator_matrix(pr.labels, K);
    const Matrix Y = X * pr.B + W * pr.C + noise * oracles::random_matrix(n, q, rng);
    pr.data = validate_dataset(X, Y);
    return pr;
}

}  // namespace

TEST(OracleFit, NoiselessRecovery) {
    const auto pr = make_problem(1, 0.0);
    const auto fit = oracle_fit(pr.data, pr.labels, 3, 2);
    EXPECT_TRUE(fit.converged);
    EXPECT_LT((fit.B - pr.B).norm(), 1e-6 * pr.B.norm());
    EXPECT_LT((fit.C - pr.C).norm(), 1e-6 * pr.C.norm());
    EXPECT_LT(fit.objective, 1e-10);
}

TEST(OracleFit, TraceIsMonotone) {
    const auto pr = make_problem(2, 0.5);
    const auto fit = oracle_fit(pr.data, pr.labels, 3, 1);
    ASSERT_EQ(fit.trace.size(), static_cast<std::size_t>(2 * fit.iterations + 1));
    for (std::size_t k = 1; k < fit.trace.size(); ++k) {
        EXPECT_LE(fit.trace[k], fit.trace[k - 1] + 1e-12 * (1.0 + fit.trace[k - 1]));
    }
    EXPECT_DOUBLE_EQ(fit.trace.back(), fit.objective);
}

TEST(OracleFit, BlockOptimalityAtTheEnd) {
    const auto pr = make_problem(3, 0.5);
    const auto fit = oracle_fit(pr.data, pr.labels, 3, 2);
    ASSERT_TRUE(fit.converged);
    const Matrix W = indicator_matrix(pr.labels, 3);
    // C is the groupwise mean of Y - XB
    const Matrix C_opt = (W.transpose() * W).inverse() * W.transpose() * (pr.data.Y - pr.data.X * fit.B);
    EXPECT_LT((fit.C - C_opt).cwiseAbs().maxCoeff(), 1e-8);
    // B is the best rank-2 fit to Y - WC
    const double at_fit = (pr.data.Y - W * fit.C - pr.data.X * fit.B).squaredNorm();
    EXPECT_NEAR(at_fit, oracles::eckart_young_objective(pr.data.X, pr.data.Y - W * fit.C, 2), 1e-8 * at_fit);
}

TEST(OracleFit, MatchesTheProfiledProblem) {
    for (std::uint64_t seed : {4u, 5u, 6u}) {
        const auto pr = make_problem(seed, 1.0);
        const Matrix W = indicator_matrix(pr.labels, 3);
        const Matrix M = Matrix::Identity(pr.data.n(), pr.data.n()) -
                         W * (W.transpose() * W).inverse() * W.transpose();
        const double best = oracles::eckart_young_objective(M * pr.data.X, M * pr.data.Y, 2);
        const auto fit = oracle_fit(pr.data, pr.labels, 3, 2);
        EXPECT_NEAR(fit.objective, best, 1e-6 * best) << "seed " << seed;
    }
}

TEST(OracleFit, FullRankIsStackedLeastSquares) {
    const auto pr = make_problem(7, 1.0);
    const Matrix W = indicator_matrix(pr.labels, 3);
    Matrix Z(pr.data.n(), 5 + 3);
    Z << pr.data.X, W;
    const Matrix coef = Z.colPivHouseholderQr().solve(pr.data.Y);
    const auto fit = oracle_fit(pr.data, W, 4);
    EXPECT_LT((fit.B - coef.topRows(5)).cwiseAbs().maxCoeff(), 1e-8);
    EXPECT_LT((fit.C - coef.bottomRows(3)).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(OracleFit, SingleGroupIsColumnIntercept) {
    const auto pr = make_problem(8, 1.0, 40, 4, 3, 3, 1);
    const auto fit = oracle_fit(pr.data, pr.labels, 1, 3);
    const Eigen::RowVectorXd resid_mean = (pr.data.Y - pr.data.X * fit.B).colwise().mean();
    EXPECT_LT((fit.C.row(0) - resid_mean).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(OracleFit, Errors) {
    const auto pr = make_problem(9, 1.0);
    const auto code = [](const std::function<void()>& f) {
        try {
            f();
        } catch (const Error& e) {
            return e.code();
        }
        return ErrorCode::Parse;
    };
    EXPECT_EQ(code([&] { oracle_fit(pr.data, pr.labels, 4, 2); }), ErrorCode::EmptyGroup);
    EXPECT_EQ(code([&] { oracle_fit(pr.data, pr.labels, 3, 5); }), ErrorCode::RankOutOfRange);
    Matrix W = indicator_matrix(pr.labels, 3);
    W(0, 1) = 0.5;
    EXPECT_EQ(code([&] { oracle_fit(pr.data, W, 2); }), ErrorCode::DimensionMismatch);
    Matrix W_empty = Matrix::Zero(pr.data.n(), 2);
    W_empty.col(0).setOnes();
    EXPECT_EQ(code([&] { oracle_fit(pr.data, W_empty, 2); }), ErrorCode::EmptyGroup);
}

TEST(OracleCvRank, RecoversRank) {
    const auto pr = make_problem(10, 0.3, 150, 6, 5, 2, 3);
    EXPECT_EQ(oracle_cv_rank(pr.data, pr.labels, 3, 5, 5, 2), 2);
}

TEST(OracleCvRank, ToleratesGroupsMissingFromAFold) {
    auto pr = make_problem(11, 0.3, 40, 4, 3, 1, 3);
    // group 2 has a single member, so some training folds lack it
    for (auto& l : pr.labels) l = l == 2 ? 0 : l;
    pr.labels[5] = 2;
    EXPECT_NO_THROW(oracle_cv_rank(pr.data, pr.labels, 3, 3, 5, 0));
}

#include <gtest/gtest.h>

#include <limits>
#include <random>

#include "hetrrr/model.hpp"
#include "oracles.hpp"

using namespace hetrrr;

namespace {

template <class F>
ErrorCode code_of(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "expected an exception";
    return ErrorCode::Parse;
}

}  // namespace

TEST(PairIndex, LexicographicOrder) {
    const Index n = 6;
    Index expected = 0;
    for (Index i = 0; i < n; ++i) {
        for (Index j = i + 1; j < n; ++j) EXPECT_EQ(pair_index(i, j, n), expected++);
    }
    EXPECT_EQ(expected, num_pairs(n));
    EXPECT_EQ(pair_index(0, 1, 100), 0);
    EXPECT_EQ(pair_index(98, 99, 100), num_pairs(100) - 1);
}

TEST(PairIndex, RejectsBadPairs) {
    EXPECT_EQ(code_of([] { pair_index(2, 2, 5); }), ErrorCode::InvalidPair);
    EXPECT_EQ(code_of([] { pair_index(3, 1, 5); }), ErrorCode::InvalidPair);
    EXPECT_EQ(code_of([] { pair_index(1, 5, 5); }), ErrorCode::InvalidPair);
    EXPECT_EQ(code_of([] { pair_index(-1, 2, 5); }), ErrorCode::InvalidPair);
}

TEST(PairwiseDifferences, MatchesExplicitDelta) {
    std::mt19937_64 rng(3);
    for (Index n : {2, 3, 7, 20}) {
        const Matrix A = oracles::random_matrix(n, 4, rng);
        const Matrix D = oracles::explicit_delta(n);
        const Matrix expected = D * A;
        const RowMatrix got = pairwise_differences(A);
        ASSERT_EQ(got.rows(), num_pairs(n));
        EXPECT_LT((Matrix(got) - expected).cwiseAbs().maxCoeff(), 1e-14);
    }
}

TEST(DeltaTransposeApply, MatchesExplicitTranspose) {
    std::mt19937_64 rng(4);
    for (Index n : {2, 5, 13}) {
        const RowMatrix M = oracles::random_matrix(num_pairs(n), 3, rng);
        const Matrix expected = oracles::explicit_delta(n).transpose() * Matrix(M);
        EXPECT_LT((delta_transpose_apply(M, n) - expected).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(DeltaTransposeApply, RejectsWrongRowCount) {
    const RowMatrix M = RowMatrix::Zero(5, 2);
    EXPECT_EQ(code_of([&] { delta_transpose_apply(M, 4); }), ErrorCode::DimensionMismatch);
}

TEST(MaxPairwiseRowDistance, BruteForce) {
    std::mt19937_64 rng(5);
    const Matrix A = oracles::random_matrix(9, 3, rng);
    double best = 0.0;
    for (Index i = 0; i < 9; ++i) {
        for (Index j = 0; j < 9; ++j) best = std::max(best, (A.row(i) - A.row(j)).norm());
    }
    EXPECT_NEAR(max_pairwise_row_distance(A), best, 1e-14);
}

TEST(ValidateDataset, Errors) {
    EXPECT_EQ(code_of([] { validate_dataset(Matrix::Zero(3, 2), Matrix::Zero(4, 2)); }),
              ErrorCode::DimensionMismatch);
    EXPECT_EQ(code_of([] { validate_dataset(Matrix::Zero(1, 2), Matrix::Zero(1, 2)); }),
              ErrorCode::TooFewRows);
    Matrix bad = Matrix::Zero(3, 2);
    bad(1, 1) = std::numeric_limits<double>::quiet_NaN();
    EXPECT_EQ(code_of([&] { validate_dataset(Matrix::Zero(3, 2), bad); }), ErrorCode::NonFiniteEntry);
    bad(1, 1) = std::numeric_limits<double>::infinity();
    EXPECT_EQ(code_of([&] { validate_dataset(bad, Matrix::Zero(3, 2)); }), ErrorCode::NonFiniteEntry);
    const Dataset d = validate_dataset(Matrix::Ones(4, 3), Matrix::Ones(4, 2));
    EXPECT_EQ(d.n(), 4);
    EXPECT_EQ(d.p(), 3);
    EXPECT_EQ(d.q(), 2);
}

TEST(PenaltySpec, GammaChecks) {
    EXPECT_NO_THROW(PenaltySpec::l1().validate());
    EXPECT_NO_THROW(PenaltySpec::mcp(1.01).validate());
    EXPECT_EQ(code_of([] { PenaltySpec::mcp(1.0).validate(); }), ErrorCode::InvalidGamma);
    EXPECT_EQ(code_of([] { PenaltySpec::scad(2.0).validate(); }), ErrorCode::InvalidGamma);
    // MCP at theta = 0.5 needs gamma > 2, SCAD needs gamma > 3
    EXPECT_EQ(code_of([] { PenaltySpec::mcp(1.5).validate_for_theta(0.5); }), ErrorCode::InvalidGamma);
    EXPECT_NO_THROW(PenaltySpec::mcp(2.5).validate_for_theta(0.5));
    EXPECT_EQ(code_of([] { PenaltySpec::scad(2.9).validate_for_theta(0.5); }), ErrorCode::InvalidGamma);
    EXPECT_NO_THROW(PenaltySpec::scad(3.7).validate_for_theta(1.0));
}

TEST(AdmmConfig, Validation) {
    AdmmConfig c;
    c.rank = 2;
    EXPECT_NO_THROW(c.validate(5, 3));
    c.rank = 4;
    EXPECT_EQ(code_of([&] { c.validate(5, 3); }), ErrorCode::RankOutOfRange);
    c.rank = 0;
    EXPECT_EQ(code_of([&] { c.validate(5, 3); }), ErrorCode::RankOutOfRange);
    c.rank = 1;
    c.theta = 0.0;
    EXPECT_EQ(code_of([&] { c.validate(5, 3); }), ErrorCode::InvalidConfig);
    c.theta = 1.0;
    c.epsilon = -1.0;
    EXPECT_EQ(code_of([&] { c.validate(5, 3); }), ErrorCode::InvalidConfig);
    c.epsilon = 1e-4;
    c.lambda = -0.1;
    EXPECT_EQ(code_of([&] { c.validate(5, 3); }), ErrorCode::InvalidConfig);
    c.lambda = 0.0;
    c.max_iter = 0;
    EXPECT_EQ(code_of([&] { c.validate(5, 3); }), ErrorCode::InvalidConfig);
}

TEST(SubgroupPartition, ImpliedA) {
    SubgroupPartition part;
    part.assignment = {0, 1, 0, 2};
    part.K_hat = 3;
    part.C_hat = Matrix{{1.0, 2.0}, {3.0, 4.0}, {5.0, 6.0}};
    const Matrix A = part.implied_A();
    EXPECT_EQ(A.row(0), part.C_hat.row(0));
    EXPECT_EQ(A.row(2), part.C_hat.row(0));
    EXPECT_EQ(A.row(3), part.C_hat.row(2));
}

TEST(ErrorType, CarriesCodeAndName) {
    const Error e(ErrorCode::SingularDesign, "boom");
    EXPECT_EQ(e.code(), ErrorCode::SingularDesign);
    EXPECT_NE(std::string(e.what()).find("boom"), std::string::npos);
    EXPECT_EQ(to_string(ErrorCode::AllFitsDiverged), "AllFitsDiverged");
}

#include <gtest/gtest.h>

#include <cmath>

#include "hetrrr/simulate.hpp"

using namespace hetrrr;

TEST(CompoundSymmetry, EntriesAndSpectrum) {
    const Matrix S = compound_symmetry(8, 0.5);
    EXPECT_DOUBLE_EQ(S(0, 0), 1.0);
    EXPECT_DOUBLE_EQ(S(3, 5), 0.5);
    Eigen::SelfAdjointEigenSolver<Matrix> eig(S);
    const Vector ev = eig.eigenvalues();  // ascending
    for (Index k = 0; k < 7; ++k) EXPECT_NEAR(ev(k), 0.5, 1e-12);
    EXPECT_NEAR(ev(7), 4.5, 1e-12);
}

TEST(CompoundSymmetry, RejectsIndefinite) {
    try {
        compound_symmetry(4, -0.4);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NotPositiveDefinite);
    }
    EXPECT_THROW(compound_symmetry(4, 1.0), Error);
    EXPECT_NO_THROW(compound_symmetry(1, 5.0));
}

TEST(CalibrateNoise, HitsTheRequestedRatio) {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> g;
    Matrix XB(30, 6);
    Matrix E(30, 6);
    for (Index i = 0; i < XB.size(); ++i) {
        XB(i) = g(rng);
        E(i) = g(rng);
    }
    const double sigma = calibrate_noise(XB, E, 2, 1.5);
    const Eigen::JacobiSVD<Matrix> svd(XB);
    EXPECT_NEAR(svd.singularValues()(1) / (sigma * E.norm()), 1.5, 1e-12);
}

TEST(CalibrateNoise, RankDeficientSignal) {
    Matrix XB = Matrix::Zero(10, 4);
    XB(0, 0) = 1.0;
    try {
        calibrate_noise(XB, Matrix::Ones(10, 4), 2, 1.0);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::RankDeficientSignal);
    }
}

TEST(Example1, ShapesTruthAndRealizedSnr) {
    const auto spec = example1_spec(SimSetting::I, 1.5, 2.0, 7);
    const auto sim = simulate(spec);
    EXPECT_EQ(sim.train.X.rows(), 100);
    EXPECT_EQ(sim.train.X.cols(), 12);
    EXPECT_EQ(sim.train.Y.cols(), 8);
    EXPECT_EQ(sim.test.X.rows(), 90);
    EXPECT_EQ(sim.truth.K, 3);
    EXPECT_EQ(sim.truth.W.cols(), 3);
    EXPECT_EQ(Eigen::FullPivLU<Matrix>(sim.truth.B_star).rank(), 3);
    ASSERT_TRUE(sim.truth.b_n.has_value());
    EXPECT_NEAR(*sim.truth.b_n, 2.0 * std::sqrt(8.0), 1e-12);
    EXPECT_DOUBLE_EQ(sim.truth.C_star(0, 3), 2.0);
    EXPECT_DOUBLE_EQ(sim.truth.C_star(1, 3), -2.0);
    EXPECT_DOUBLE_EQ(sim.truth.C_star(2, 3), 0.0);
    EXPECT_EQ(sim.truth.A_star, sim.truth.W * sim.truth.C_star);

    const Matrix XB = sim.train.X * sim.truth.B_star;
    const Matrix E = sim.train.Y - XB - sim.truth.A_star;
    const Eigen::JacobiSVD<Matrix> svd(XB);
    EXPECT_NEAR(svd.singularValues()(2) / E.norm(), 1.5, 1e-9);
}

TEST(Example1, DeterministicPerSeed) {
    const auto a = simulate(example1_spec(SimSetting::I, 1.5, std::nullopt, 11));
    const auto b = simulate(example1_spec(SimSetting::I, 1.5, std::nullopt, 11));
    const auto c = simulate(example1_spec(SimSetting::I, 1.5, std::nullopt, 12));
    EXPECT_EQ(a.train.Y, b.train.Y);
    EXPECT_EQ(a.test.Y, b.test.Y);
    EXPECT_EQ(a.truth.mu, b.truth.mu);
    EXPECT_NE(a.train.Y, c.train.Y);
    EXPECT_NE(a.truth.mu, c.truth.mu);
}

TEST(Example1, TestSizeDoesNotDisturbTraining) {
    auto spec = example1_spec(SimSetting::I, 1.5, 1.0, 5);
    const auto a = simulate(spec);
    spec.n_test = 10;
    const auto b = simulate(spec);
    EXPECT_EQ(a.train.X, b.train.X);
    EXPECT_EQ(a.train.Y, b.train.Y);
    // same draws; the matrix product may round differently for another row count
    EXPECT_LT((a.test.X.topRows(10) - b.test.X).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Example1, GroupProportionsAreUniform) {
    auto spec = example1_spec(SimSetting::I, 1.5, 1.0, 21);
    spec.n = 10000;
    spec.n_test = 0;
    const auto sim = simulate(spec);
    const Vector share = sim.truth.W.colwise().sum().transpose() / 10000.0;
    for (Index k = 0; k < 3; ++k) EXPECT_NEAR(share(k), 1.0 / 3.0, 0.02);
}

TEST(Example1, CovariateCorrelation) {
    auto spec = example1_spec(SimSetting::I, 1.5, 1.0, 22);
    spec.n = 100000;
    spec.n_test = 0;
    const auto sim = simulate(spec);
    const Matrix& X = sim.train.X;
    const Matrix centered = X.rowwise() - X.colwise().mean();
    const Matrix cov = centered.transpose() * centered / static_cast<double>(X.rows() - 1);
    EXPECT_LT((cov - compound_symmetry(12, 0.5)).cwiseAbs().maxCoeff(), 0.02);
}

TEST(Example1, SettingTwoNeedsMu) {
    auto spec = example1_spec(SimSetting::II, 1.25, std::nullopt, 1);
    EXPECT_THROW(simulate(spec), Error);
    spec.mu = 0.5;
    EXPECT_NO_THROW(simulate(spec));
}

TEST(Example2, SingleGroup) {
    const auto sim = simulate(example2_spec(1.5, 3));
    EXPECT_EQ(sim.truth.K, 1);
    EXPECT_FALSE(sim.truth.b_n.has_value());
    EXPECT_EQ(sim.truth.W, Matrix::Ones(100, 1));
    for (int label : sim.truth.assignment) EXPECT_EQ(label, 0);
}

TEST(SimulationSpec, Validation) {
    auto spec = example1_spec(SimSetting::I, 1.5, 1.0, 1);
    spec.K = 2;
    EXPECT_THROW(spec.validate(), Error);
    spec = example1_spec(SimSetting::I, -1.0, 1.0, 1);
    EXPECT_THROW(spec.validate(), Error);
    spec = example1_spec(SimSetting::I, 1.0, 1.0, 1);
    spec.r_star = 9;
    EXPECT_THROW(spec.validate(), Error);
}

TEST(Streams, IndependentAndReproducible) {
    auto a = make_stream(1, RandomStream::Noise);
    auto b = make_stream(1, RandomStream::Noise);
    auto c = make_stream(1, RandomStream::Groups);
    const auto va = a();
    EXPECT_EQ(va, b());
    EXPECT_NE(va, c());
    EXPECT_EQ(replication_seed(10, 0), 10u);
    EXPECT_NE(replication_seed(10, 1), replication_seed(10, 2));
}

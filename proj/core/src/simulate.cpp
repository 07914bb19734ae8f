#include "hetrrr/simulate.hpp"

#include <cmath>
#include <limits>

namespace hetrrr {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

Matrix standard_normal(Index rows, Index cols, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix Z(rows, cols);
    // Row by row so that a prefix of rows never depends on the row count.
    for (Index i = 0; i < rows; ++i) {
        for (Index j = 0; j < cols; ++j) Z(i, j) = gauss(rng);
    }
    return Z;
}

Matrix symmetric_sqrt(const Matrix& S) {
    Eigen::SelfAdjointEigenSolver<Matrix> eig(S);
    return eig.eigenvectors() * eig.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal() *
           eig.eigenvectors().transpose();
}

std::vector<int> draw_groups(Index n, int K, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> pick(0, K - 1);
    std::vector<int> labels(static_cast<std::size_t>(n));
    for (auto& l : labels) l = pick(rng);
    return labels;
}

Matrix stack_intercepts(const std::vector<int>& labels, const Matrix& C) {
    Matrix A(static_cast<Index>(labels.size()), C.cols());
    for (std::size_t i = 0; i < labels.size(); ++i) A.row(static_cast<Index>(i)) = C.row(labels[i]);
    return A;
}

Matrix indicators(const std::vector<int>& labels, int K) {
    Matrix W = Matrix::Zero(static_cast<Index>(labels.size()), K);
    for (std::size_t i = 0; i < labels.size(); ++i) W(static_cast<Index>(i), labels[i]) = 1.0;
    return W;
}

SimulatedData generate(const SimulationSpec& spec, const Matrix& C_star, double mu) {
    const Index n = spec.n;
    const Index p = spec.p;
    const Index q = spec.q;
    const int K = static_cast<int>(C_star.rows());
    const Matrix sx = symmetric_sqrt(compound_symmetry(p, spec.rho_x));
    const Matrix se = symmetric_sqrt(compound_symmetry(q, spec.rho_e));

    auto rng_x = make_stream(spec.seed, RandomStream::Covariates);
    auto rng_b = make_stream(spec.seed, RandomStream::Coefficients);
    auto rng_g = make_stream(spec.seed, RandomStream::Groups);
    auto rng_e = make_stream(spec.seed, RandomStream::Noise);

    SimulatedData out;
    const Matrix X = standard_normal(n, p, rng_x) * sx;
    const Matrix B1 = standard_normal(p, spec.r_star, rng_b);
    const Matrix B2 = standard_normal(q, spec.r_star, rng_b);
    GroundTruth& truth = out.truth;
    truth.B_star = B1 * B2.transpose();
    truth.C_star = C_star;
    truth.assignment = K > 1 ? draw_groups(n, K, rng_g) : std::vector<int>(static_cast<std::size_t>(n), 0);
    truth.W = indicators(truth.assignment, K);
    truth.A_star = stack_intercepts(truth.assignment, C_star);
    truth.mu = mu;
    truth.r_star = spec.r_star;
    truth.K = K;
    truth.b_n = min_intercept_gap(C_star);

    const Matrix XB = X * truth.B_star;
    const Matrix E0 = standard_normal(n, q, rng_e) * se;
    truth.sigma = calibrate_noise(XB, E0, spec.r_star, spec.snr);
    out.train = Dataset{X, truth.A_star + XB + truth.sigma * E0};

    auto rng_tx = make_stream(spec.seed, RandomStream::TestCovariates);
    auto rng_tg = make_stream(spec.seed, RandomStream::TestGroups);
    auto rng_te = make_stream(spec.seed, RandomStream::TestNoise);
    TestSet& test = out.test;
    test.X = standard_normal(spec.n_test, p, rng_tx) * sx;
    test.assignment = K > 1 ? draw_groups(spec.n_test, K, rng_tg)
                            : std::vector<int>(static_cast<std::size_t>(spec.n_test), 0);
    test.W = indicators(test.assignment, K);
    const Matrix E0_test = standard_normal(spec.n_test, q, rng_te) * se;
    test.Y = stack_intercepts(test.assignment, C_star) + test.X * truth.B_star +
             truth.sigma * E0_test;
    return out;
}

double draw_mu(const SimulationSpec& spec) {
    if (spec.mu) return *spec.mu;
    auto rng = make_stream(spec.seed, RandomStream::Mu);
    std::normal_distribution<double> gauss(0.0, 1.0);
    return gauss(rng);
}

}  // namespace

std::mt19937_64 make_stream(std::uint64_t seed, RandomStream stream) {
    const auto id = static_cast<std::uint64_t>(stream);
    std::seed_seq seq{splitmix64(seed), splitmix64(seed ^ (id * 0xD1B54A32D192ED03ULL)), id};
    return std::mt19937_64(seq);
}

void SimulationSpec::validate() const {
    if (n < 2 || p < 1 || q < 1 || n_test < 0) {
        throw Error(ErrorCode::InvalidConfig, "simulation dimensions must be positive");
    }
    if (r_star < 1 || r_star > std::min(p, q)) {
        throw Error(ErrorCode::RankOutOfRange, "r* outside [1, min(p, q)]");
    }
    if (!(snr > 0.0) || !std::isfinite(snr)) {
        throw Error(ErrorCode::InvalidConfig, "snr must be positive");
    }
    if (example == SimExample::Ex1 && K != 3) {
        throw Error(ErrorCode::InvalidConfig, "Example 1 has K = 3 subgroups");
    }
    if (example == SimExample::Ex2 && K != 1) {
        throw Error(ErrorCode::InvalidConfig, "Example 2 has K = 1");
    }
    if (example == SimExample::Ex1 && setting == SimSetting::II && !mu) {
        throw Error(ErrorCode::InvalidConfig, "setting ii needs a fixed mu");
    }
    if (mu && !std::isfinite(*mu)) throw Error(ErrorCode::InvalidConfig, "mu must be finite");
}

SimulationSpec example1_spec(SimSetting setting, double snr, std::optional<double> mu,
                             std::uint64_t seed) {
    SimulationSpec s;
    s.example = SimExample::Ex1;
    s.setting = setting;
    s.K = 3;
    s.snr = snr;
    s.mu = mu;
    s.seed = seed;
    return s;
}

SimulationSpec example2_spec(double snr, std::uint64_t seed) {
    SimulationSpec s;
    s.example = SimExample::Ex2;
    s.K = 1;
    s.snr = snr;
    s.seed = seed;
    return s;
}

Matrix compound_symmetry(Index d, double rho) {
    if (d < 1) throw Error(ErrorCode::InvalidConfig, "dimension must be positive");
    if (d > 1 && !(rho < 1.0 && rho > -1.0 / static_cast<double>(d - 1))) {
        throw Error(ErrorCode::NotPositiveDefinite,
                    "compound symmetry needs -1/(d-1) < rho < 1");
    }
    Matrix S = Matrix::Constant(d, d, rho);
    S.diagonal().setOnes();
    return S;
}

double calibrate_noise(const Matrix& XB_star, const Matrix& E0, int r_star, double snr) {
    if (!(snr > 0.0)) throw Error(ErrorCode::InvalidConfig, "snr must be positive");
    if (r_star < 1 || r_star > std::min(XB_star.rows(), XB_star.cols())) {
        throw Error(ErrorCode::RankDeficientSignal, "r* exceeds the signal dimensions");
    }
    const Eigen::JacobiSVD<Matrix> svd(XB_star);
    const Vector& s = svd.singularValues();
    const double sr = s(r_star - 1);
    if (!(sr > 1e-12 * s(0))) {
        throw Error(ErrorCode::RankDeficientSignal, "XB* has fewer than r* nonzero singular values");
    }
    const double enorm = E0.norm();
    if (!(enorm > 0.0)) throw Error(ErrorCode::InvalidConfig, "noise matrix is zero");
    return sr / (snr * enorm);
}

std::optional<double> min_intercept_gap(const Matrix& C) {
    if (C.rows() < 2) return std::nullopt;
    double best = std::numeric_limits<double>::infinity();
    for (Index k = 0; k < C.rows(); ++k) {
        for (Index l = k + 1; l < C.rows(); ++l) best = std::min(best, (C.row(k) - C.row(l)).norm());
    }
    return best;
}

SimulatedData gen_example1(const SimulationSpec& spec) {
    if (spec.example != SimExample::Ex1) {
        throw Error(ErrorCode::InvalidConfig, "gen_example1 needs an Example 1 spec");
    }
    spec.validate();
    const double mu = draw_mu(spec);
    Matrix C(3, spec.q);
    C.row(0).setConstant(mu);
    C.row(1).setConstant(-mu);
    C.row(2).setZero();
    return generate(spec, C, mu);
}

SimulatedData gen_example2(const SimulationSpec& spec) {
    if (spec.example != SimExample::Ex2) {
        throw Error(ErrorCode::InvalidConfig, "gen_example2 needs an Example 2 spec");
    }
    spec.validate();
    const double mu = draw_mu(spec);
    return generate(spec, Matrix::Constant(1, spec.q, mu), mu);
}

SimulatedData simulate(const SimulationSpec& spec) {
    return spec.example == SimExample::Ex1 ? gen_example1(spec) : gen_example2(spec);
}

}  // namespace hetrrr

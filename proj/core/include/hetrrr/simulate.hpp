#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "hetrrr/model.hpp"

namespace hetrrr {

enum class SimExample { Ex1, Ex2 };
enum class SimSetting { I, II };

struct SimulationSpec {
    SimExample example = SimExample::Ex1;
    SimSetting setting = SimSetting::I;  // Ex1 only
    int n = 100;
    int p = 12;
    int q = 8;
    int r_star = 3;
    int K = 3;
    double snr = 1.5;
    // Intercept magnitude; absent means mu ~ N(0, 1) drawn per replication.
    std::optional<double> mu;
    int n_test = 90;
    std::uint64_t seed = 0;
    double rho_x = 0.5;
    double rho_e = 0.5;

    /// Ex1 forces K = 3, Ex2 forces K = 1; setting II requires mu.
    void validate() const;
};

SimulationSpec example1_spec(SimSetting setting, double snr, std::optional<double> mu,
                             std::uint64_t seed);
SimulationSpec example2_spec(double snr, std::uint64_t seed);

struct GroundTruth {
    Matrix B_star;               // p x q
    Matrix C_star;               // K x q
    Matrix W;                    // n x K
    Matrix A_star;               // n x q, = W C_star
    std::vector<int> assignment; // 0-based true labels
    double mu = 0.0;
    double sigma = 0.0;          // calibrated noise scale
    std::optional<double> b_n;   // absent when K = 1
    int r_star = 0;
    int K = 0;
};

struct TestSet {
    Matrix X;
    Matrix Y;
    Matrix W;                    // true test indicators
    std::vector<int> assignment;
};

struct SimulatedData {
    Dataset train;
    GroundTruth truth;
    TestSet test;
};

/// d x d matrix with unit diagonal and rho elsewhere. Throws
/// NotPositiveDefinite unless -1/(d-1) < rho < 1.
Matrix compound_symmetry(Index d, double rho);

/// sigma such that sigma_{r*}(XB*) / ||sigma E0||_F equals snr.
double calibrate_noise(const Matrix& XB_star, const Matrix& E0, int r_star, double snr);

/// Minimum pairwise distance between the rows of C (absent for one row).
std::optional<double> min_intercept_gap(const Matrix& C);

SimulatedData gen_example1(const SimulationSpec& spec);
SimulatedData gen_example2(const SimulationSpec& spec);
SimulatedData simulate(const SimulationSpec& spec);

/// Seed of replication `rep` under a base seed.
inline std::uint64_t replication_seed(std::uint64_t seed, std::uint64_t rep) noexcept {
    return seed ^ rep;
}

/// Independent generator for a named sub-stream of a seed.
enum class RandomStream : std::uint64_t {
    Covariates = 1,
    Coefficients = 2,
    Mu = 3,
    Groups = 4,
    Noise = 5,
    TestCovariates = 6,
    TestGroups = 7,
    TestNoise = 8,
    CrossValidation = 9,
};
std::mt19937_64 make_stream(std::uint64_t seed, RandomStream stream);

}  // namespace hetrrr

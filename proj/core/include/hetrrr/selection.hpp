#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "hetrrr/admm.hpp"
#include "hetrrr/model.hpp"

namespace hetrrr {

inline constexpr int kDefaultLambdaCount = 20;
inline constexpr double kLambdaRatio = 1e-3;  // lambda_0 / lambda_J

/// n_lambda values geometrically spaced from 1e-3 lambda_J up to lambda_J,
/// where lambda_J is the largest pairwise distance between rows of the
/// rank-r RRR residual Y - X B^R. Throws DegenerateGrid when lambda_J = 0.
std::vector<double> lambda_grid(const Dataset& data, const LeastSquaresDesign& design, int r,
                                int n_lambda = kDefaultLambdaCount);
std::vector<double> lambda_grid(const Dataset& data, int r, int n_lambda = kDefaultLambdaCount);

/// Largest lambda of the grid for rank r.
double lambda_max(const Dataset& data, const LeastSquaresDesign& design, int r);

struct PicConstants {
    double A1 = 7.0;
    double A2 = 2.0;
};

/// ln(rss) + {A1[(p+q-r)(r+K) + Kq] + A2 ln n}/(nq). Throws NonPositiveRSS.
double pic_score(double rss, Index n, Index p, Index q, int r, int K_hat,
                 const PicConstants& constants = {});

/// ln(rss_mean) + C_n (K + pq) ln(n) / n. Throws NonPositiveRSS.
double modified_bic(double rss_mean, Index n, Index p, Index q, int K_hat, double C_n);

/// ln(ln(n + pq)), the default C_n of the modified BIC.
double default_bic_constant(Index n, Index p, Index q);

/// Fold label in [0, folds) for each of n rows, from a seeded uniform shuffle.
std::vector<int> cv_fold_assignment(Index n, int folds, std::uint64_t seed);

/// Validation sum of squares for rank r given training and validation rows.
using CvEvaluator =
    std::function<double(const std::vector<Index>& train, const std::vector<Index>& validate, int r)>;

/// Mean validation error per rank 1..r_max for an arbitrary fit/predict
/// routine, and the selected rank (ties, up to tie_tol, go to the smaller r).
struct CvResult {
    std::vector<double> mean_error;  // index r-1
    int rank = 1;
};
CvResult cross_validate_rank(Index n, int r_max, int folds, std::uint64_t seed,
                             const CvEvaluator& evaluate, double tie_tol);

/// K-fold CV of the RRR prediction error over ranks 1..r_max. With
/// `with_intercept` the fits carry a free common intercept row.
int cv_rank(const Dataset& data, int r_max, int folds = 5, std::uint64_t seed = 0,
            bool with_intercept = false);

enum class Criterion { PIC, BIC };

struct SelectionOptions {
    AdmmConfig admm;                 // theta, epsilon, max_iter; lambda/rank are set per point
    std::vector<int> ranks;          // empty means 1 .. min(p, q)
    std::vector<double> lambdas;     // empty means the per-rank grid
    int n_lambda = kDefaultLambdaCount;
    double lambda_star = kDefaultRidgeLambda;
    bool cold_start = false;         // every grid point starts from the ridge-fusion fit
    Criterion criterion = Criterion::PIC;
    PicConstants pic;
    std::optional<double> bic_constant;  // C_n; default ln(ln(n + pq))
    int threads = 1;                 // ranks evaluated concurrently
};

struct GridEntry {
    int rank = 0;
    double lambda = 0.0;
    double score = 0.0;
    double rss = 0.0;
    int K_hat = 0;
    bool converged = false;
    int iterations = 0;
    double primal_res = 0.0;
    double dual_res = 0.0;
    bool saturated = false;  // parameter count >= nq; never selected
};

/// Number of free parameters the criterion charges for: the PIC count
/// (p+q-r)(r+K) + Kq, or Kq + pq for the rank-free BIC fits.
double model_dof(Criterion criterion, Index p, Index q, int r, int K_hat);

struct SelectionReport {
    std::vector<GridEntry> grid;  // rank-major, lambda ascending
    std::size_t best_index = 0;
    int best_rank = 0;
    double best_lambda = 0.0;
    FitResult best_fit;
    Criterion criterion = Criterion::PIC;
};

/// ||Y - X B - W C||_F^2 using the partition intercepts of a fit.
double partition_rss(const Dataset& data, const FitResult& fit);

/// Grid search over (rank, lambda): each rank gets its own lambda grid, fits
/// along it warm-started in ascending lambda, and the converged, unsaturated
/// point with the smallest criterion wins (ties: smaller rank, then larger
/// lambda). Throws AllFitsDiverged when no such point exists.
SelectionReport select_model(const Dataset& data, const PenaltySpec& spec,
                             const SelectionOptions& options = {});

}  // namespace hetrrr

#include "hetrrr/selection.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <mutex>
#include <numeric>

#include "hetrrr/simulate.hpp"
#include "hetrrr/subgroup.hpp"

namespace hetrrr {

double lambda_max(const Dataset& data, const LeastSquaresDesign& design, int r) {
    const Matrix B = design.rrr(data.Y, r).B_hat;
    const Matrix resid = data.Y - data.X * B;
    const double lam = max_pairwise_row_distance(resid);
    const double scale = std::max(1.0, data.Y.rowwise().norm().maxCoeff());
    if (!(lam > 1e-10 * scale)) {
        throw Error(ErrorCode::DegenerateGrid,
                    "all reduced-rank residual rows coincide; no fusion path to search");
    }
    return lam;
}

std::vector<double> lambda_grid(const Dataset& data, const LeastSquaresDesign& design, int r,
                                int n_lambda) {
    if (n_lambda < 2) throw Error(ErrorCode::InvalidConfig, "n_lambda must be >= 2");
    const double hi = lambda_max(data, design, r);
    const double lo = kLambdaRatio * hi;
    const double log_lo = std::log(lo);
    const double step = (std::log(hi) - log_lo) / (n_lambda - 1);
    std::vector<double> grid(static_cast<std::size_t>(n_lambda));
    for (int k = 0; k < n_lambda; ++k) grid[static_cast<std::size_t>(k)] = std::exp(log_lo + k * step);
    grid.front() = lo;
    grid.back() = hi;
    return grid;
}

std::vector<double> lambda_grid(const Dataset& data, int r, int n_lambda) {
    return lambda_grid(data, LeastSquaresDesign(data.X), r, n_lambda);
}

double pic_score(double rss, Index n, Index p, Index q, int r, int K_hat,
                 const PicConstants& constants) {
    if (!(rss > 0.0)) throw Error(ErrorCode::NonPositiveRSS, "PIC needs rss > 0");
    const double nq = static_cast<double>(n * q);
    const double dof = static_cast<double>((p + q - r) * (r + K_hat) + K_hat * q);
    return std::log(rss) + (constants.A1 * dof + constants.A2 * std::log(static_cast<double>(n))) / nq;
}

double modified_bic(double rss_mean, Index n, Index p, Index q, int K_hat, double C_n) {
    if (!(rss_mean > 0.0)) throw Error(ErrorCode::NonPositiveRSS, "BIC needs rss > 0");
    const double nd = static_cast<double>(n);
    return std::log(rss_mean) + C_n * static_cast<double>(K_hat + p * q) * std::log(nd) / nd;
}

double default_bic_constant(Index n, Index p, Index q) {
    return std::log(std::log(static_cast<double>(n + p * q)));
}

std::vector<int> cv_fold_assignment(Index n, int folds, std::uint64_t seed) {
    if (folds < 2) throw Error(ErrorCode::InvalidConfig, "need at least 2 folds");
    if (n < folds) throw Error(ErrorCode::TooFewRows, "fewer rows than folds");
    std::vector<Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Index{0});
    auto rng = make_stream(seed, RandomStream::CrossValidation);
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<int> fold(static_cast<std::size_t>(n));
    for (std::size_t pos = 0; pos < order.size(); ++pos) {
        fold[static_cast<std::size_t>(order[pos])] = static_cast<int>(pos % static_cast<std::size_t>(folds));
    }
    return fold;
}

CvResult cross_validate_rank(Index n, int r_max, int folds, std::uint64_t seed,
                             const CvEvaluator& evaluate, double tie_tol) {
    if (r_max < 1) throw Error(ErrorCode::RankOutOfRange, "r_max must be >= 1");
    const auto fold = cv_fold_assignment(n, folds, seed);
    CvResult out;
    out.mean_error.assign(static_cast<std::size_t>(r_max), 0.0);
    for (int f = 0; f < folds; ++f) {
        std::vector<Index> train;
        std::vector<Index> val;
        for (Index i = 0; i < n; ++i) (fold[static_cast<std::size_t>(i)] == f ? val : train).push_back(i);
        for (int r = 1; r <= r_max; ++r) {
            out.mean_error[static_cast<std::size_t>(r - 1)] += evaluate(train, val, r) / folds;
        }
    }
    const double best = *std::min_element(out.mean_error.begin(), out.mean_error.end());
    for (int r = 1; r <= r_max; ++r) {
        if (out.mean_error[static_cast<std::size_t>(r - 1)] <= best + tie_tol) {
            out.rank = r;
            break;
        }
    }
    return out;
}

int cv_rank(const Dataset& data, int r_max, int folds, std::uint64_t seed, bool with_intercept) {
    if (r_max < 1 || r_max > std::min(data.p(), data.q())) {
        throw Error(ErrorCode::RankOutOfRange, "r_max outside [1, min(p, q)]");
    }
    if (data.n() < folds) throw Error(ErrorCode::TooFewRows, "fewer rows than folds");
    const auto rows = [](const Matrix& M, const std::vector<Index>& idx) {
        return Matrix(M(idx, Eigen::all));
    };
    const CvEvaluator evaluate = [&](const std::vector<Index>& train,
                                     const std::vector<Index>& val, int r) {
        const Matrix Xt = rows(data.X, train);
        const Matrix Yt = rows(data.Y, train);
        const Matrix Xv = rows(data.X, val);
        const Matrix Yv = rows(data.Y, val);
        if (with_intercept) {
            const auto fit = rrr_fit_with_intercept(Xt, Yt, r);
            return ((Yv - Xv * fit.rrr.B_hat).rowwise() - fit.intercept.transpose()).squaredNorm();
        }
        return (Yv - Xv * rrr_fit(Xt, Yt, r).B_hat).squaredNorm();
    };
    const double tie_tol = 1e-12 * data.Y.squaredNorm();
    return cross_validate_rank(data.n(), r_max, folds, seed, evaluate, tie_tol).rank;
}

double partition_rss(const Dataset& data, const FitResult& fit) {
    return (data.Y - data.X * fit.B_hat - fit.partition.implied_A()).squaredNorm();
}

double model_dof(Criterion criterion, Index p, Index q, int r, int K_hat) {
    if (criterion == Criterion::PIC) {
        return static_cast<double>((p + q - r) * (r + K_hat) + K_hat * q);
    }
    return static_cast<double>(K_hat * q + p * q);
}

namespace {

struct RankPath {
    std::vector<GridEntry> entries;
    std::optional<std::size_t> best;  // index into entries
    FitResult best_fit;
};

bool eligible(const GridEntry& e) { return e.converged && !e.saturated; }

// true when a is strictly preferred to b
bool preferred(const GridEntry& a, const GridEntry& b) {
    if (eligible(a) != eligible(b)) return eligible(a);
    if (a.score != b.score) return a.score < b.score;
    if (a.rank != b.rank) return a.rank < b.rank;
    return a.lambda > b.lambda;
}

RankPath run_rank_path(const Dataset& data, const LeastSquaresDesign& design,
                       const AdmmState& ridge_start, const PenaltySpec& spec,
                       const SelectionOptions& opt, int r, double C_n) {
    RankPath path;
    std::vector<double> grid = opt.lambdas;
    if (grid.empty()) {
        grid = lambda_grid(data, design, r, opt.n_lambda);
    } else {
        std::sort(grid.begin(), grid.end());
    }
    const AdmmState* start = &ridge_start;
    AdmmState warm;
    for (double lambda : grid) {
        AdmmConfig cfg = opt.admm;
        cfg.rank = r;
        cfg.lambda = lambda;
        FitResult fit = admm_fit(data, design, cfg, spec, start);

        GridEntry e;
        e.rank = r;
        e.lambda = lambda;
        e.K_hat = fit.partition.K_hat;
        e.converged = fit.converged;
        e.iterations = fit.iterations;
        e.primal_res = fit.state.primal_res;
        e.dual_res = fit.state.dual_res;
        e.rss = partition_rss(data, fit);
        // With as many parameters as observations the fit interpolates Y and
        // ln(rss) runs off to -infinity, so these points are never chosen.
        e.saturated = model_dof(opt.criterion, data.p(), data.q(), r, e.K_hat) >=
                      static_cast<double>(data.n() * data.q());
        const double rss = std::max(e.rss, std::numeric_limits<double>::min());
        e.score = opt.criterion == Criterion::PIC
                      ? pic_score(rss, data.n(), data.p(), data.q(), r, e.K_hat, opt.pic)
                      : modified_bic(rss / static_cast<double>(data.n() * data.q()), data.n(),
                                     data.p(), data.q(), e.K_hat, C_n);

        if (!opt.cold_start) {
            warm = fit.state;
            start = &warm;
        }
        if (!path.best || preferred(e, path.entries[*path.best])) {
            path.best = path.entries.size();
            path.best_fit = std::move(fit);
        }
        path.entries.push_back(e);
    }
    return path;
}

}  // namespace

SelectionReport select_model(const Dataset& data, const PenaltySpec& spec,
                             const SelectionOptions& options) {
    spec.validate_for_theta(options.admm.theta);
    std::vector<int> ranks = options.ranks;
    const int r_cap = static_cast<int>(std::min(data.p(), data.q()));
    if (ranks.empty()) {
        ranks.resize(static_cast<std::size_t>(r_cap));
        std::iota(ranks.begin(), ranks.end(), 1);
    }
    for (int r : ranks) {
        if (r < 1 || r > r_cap) throw Error(ErrorCode::RankOutOfRange, "grid rank out of range");
    }
    for (double l : options.lambdas) {
        if (!(l >= 0.0) || !std::isfinite(l)) throw Error(ErrorCode::InvalidConfig, "lambda must be >= 0");
    }
    const LeastSquaresDesign design(data.X);
    const AdmmState ridge_start = init_ridge_fusion(data, design, options.lambda_star);
    const double C_n = options.bic_constant.value_or(default_bic_constant(data.n(), data.p(), data.q()));

    std::vector<RankPath> paths(ranks.size());
    const auto run = [&](std::size_t idx) {
        paths[idx] = run_rank_path(data, design, ridge_start, spec, options, ranks[idx], C_n);
    };
    if (options.threads > 1 && ranks.size() > 1) {
        std::vector<std::future<void>> pending;
        std::size_t next = 0;
        const auto workers = std::min<std::size_t>(static_cast<std::size_t>(options.threads), ranks.size());
        std::mutex mtx;
        for (std::size_t w = 0; w < workers; ++w) {
            pending.push_back(std::async(std::launch::async, [&] {
                for (;;) {
                    std::size_t idx;
                    {
                        std::lock_guard lock(mtx);
                        if (next >= ranks.size()) return;
                        idx = next++;
                    }
                    run(idx);
                }
            }));
        }
        for (auto& f : pending) f.get();
    } else {
        for (std::size_t idx = 0; idx < ranks.size(); ++idx) run(idx);
    }

    SelectionReport report;
    report.criterion = options.criterion;
    std::optional<std::size_t> best_path;
    for (std::size_t idx = 0; idx < paths.size(); ++idx) {
        auto& path = paths[idx];
        if (path.best && (!best_path || preferred(path.entries[*path.best],
                                                  paths[*best_path].entries[*paths[*best_path].best]))) {
            best_path = idx;
        }
    }
    std::size_t offset = 0;
    for (std::size_t idx = 0; idx < paths.size(); ++idx) {
        if (best_path && idx == *best_path) report.best_index = offset + *paths[idx].best;
        offset += paths[idx].entries.size();
        report.grid.insert(report.grid.end(), paths[idx].entries.begin(), paths[idx].entries.end());
    }
    if (!best_path || !eligible(report.grid[report.best_index])) {
        throw Error(ErrorCode::AllFitsDiverged,
                    "no unsaturated grid point reached the stopping tolerance");
    }
    report.best_rank = report.grid[report.best_index].rank;
    report.best_lambda = report.grid[report.best_index].lambda;
    report.best_fit = std::move(paths[*best_path].best_fit);
    return report;
}

}  // namespace hetrrr

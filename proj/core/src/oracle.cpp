#include "hetrrr/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "hetrrr/reduced_rank.hpp"
#include "hetrrr/selection.hpp"
#include "hetrrr/subgroup.hpp"

namespace hetrrr {
namespace {

std::vector<int> labels_from_indicator(const Matrix& W) {
    std::vector<int> labels(static_cast<std::size_t>(W.rows()));
    for (Index i = 0; i < W.rows(); ++i) {
        int hit = -1;
        for (Index k = 0; k < W.cols(); ++k) {
            const double w = W(i, k);
            if (w == 1.0) {
                if (hit >= 0) throw Error(ErrorCode::DimensionMismatch, "indicator row with two ones");
                hit = static_cast<int>(k);
            } else if (w != 0.0) {
                throw Error(ErrorCode::DimensionMismatch, "indicator entries must be 0 or 1");
            }
        }
        if (hit < 0) throw Error(ErrorCode::DimensionMismatch, "indicator row without a one");
        labels[static_cast<std::size_t>(i)] = hit;
    }
    return labels;
}

Matrix group_means(const Matrix& Z, const std::vector<int>& labels, const std::vector<double>& inv_size) {
    Matrix C = Matrix::Zero(static_cast<Index>(inv_size.size()), Z.cols());
    for (Index i = 0; i < Z.rows(); ++i) C.row(labels[static_cast<std::size_t>(i)]) += Z.row(i);
    for (std::size_t k = 0; k < inv_size.size(); ++k) C.row(static_cast<Index>(k)) *= inv_size[k];
    return C;
}

Matrix expand(const Matrix& C, const std::vector<int>& labels) {
    Matrix A(static_cast<Index>(labels.size()), C.cols());
    for (std::size_t i = 0; i < labels.size(); ++i) A.row(static_cast<Index>(i)) = C.row(labels[i]);
    return A;
}

}  // namespace

OracleFit oracle_fit(const Dataset& data, const std::vector<int>& labels, int K, int r_star,
                     int max_iter) {
    const Index n = data.n();
    if (static_cast<Index>(labels.size()) != n || data.X.rows() != n) {
        throw Error(ErrorCode::DimensionMismatch, "labels, X and Y must share n");
    }
    if (K < 1) throw Error(ErrorCode::EmptyGroup, "need at least one group");
    if (r_star < 1 || r_star > std::min(data.p(), data.q())) {
        throw Error(ErrorCode::RankOutOfRange, "oracle rank outside [1, min(p, q)]");
    }
    std::vector<double> inv_size(static_cast<std::size_t>(K), 0.0);
    for (int g : labels) {
        if (g < 0 || g >= K) throw Error(ErrorCode::DimensionMismatch, "label outside [0, K)");
        inv_size[static_cast<std::size_t>(g)] += 1.0;
    }
    for (auto& s : inv_size) {
        if (s == 0.0) throw Error(ErrorCode::EmptyGroup, "a group has no members");
        s = 1.0 / s;
    }

    const LeastSquaresDesign design(data.X);
    OracleFit fit;
    fit.C = group_means(data.Y, labels, inv_size);
    fit.B = Matrix::Zero(data.p(), data.q());
    double obj = (data.Y - expand(fit.C, labels)).squaredNorm();
    fit.trace.push_back(obj);

    for (int it = 1; it <= max_iter; ++it) {
        const double before = obj;
        const Matrix B_old = fit.B;
        const Matrix C_old = fit.C;

        fit.B = design.rrr(data.Y - expand(fit.C, labels), r_star).B_hat;
        const Matrix XB = data.X * fit.B;
        fit.trace.push_back((data.Y - XB - expand(fit.C, labels)).squaredNorm());

        fit.C = group_means(data.Y - XB, labels, inv_size);
        obj = (data.Y - XB - expand(fit.C, labels)).squaredNorm();
        fit.trace.push_back(obj);
        fit.iterations = it;

        const double move = std::sqrt((fit.B - B_old).squaredNorm() + (fit.C - C_old).squaredNorm());
        const double size = std::sqrt(fit.B.squaredNorm() + fit.C.squaredNorm());
        if (before - obj <= 1e-10 * (1.0 + obj) && move <= 1e-10 * (1.0 + size)) {
            fit.converged = true;
            break;
        }
    }
    fit.objective = obj;
    return fit;
}

OracleFit oracle_fit(const Dataset& data, const Matrix& W, int r_star, int max_iter) {
    if (W.rows() != data.n()) throw Error(ErrorCode::DimensionMismatch, "W must have n rows");
    for (Index k = 0; k < W.cols(); ++k) {
        if (W.col(k).sum() == 0.0) throw Error(ErrorCode::EmptyGroup, "indicator column sums to zero");
    }
    return oracle_fit(data, labels_from_indicator(W), static_cast<int>(W.cols()), r_star, max_iter);
}

int oracle_cv_rank(const Dataset& data, const std::vector<int>& labels, int K, int r_max,
                   int folds, std::uint64_t seed) {
    if (r_max < 1 || r_max > std::min(data.p(), data.q())) {
        throw Error(ErrorCode::RankOutOfRange, "r_max outside [1, min(p, q)]");
    }
    if (static_cast<Index>(labels.size()) != data.n()) {
        throw Error(ErrorCode::DimensionMismatch, "labels must have n entries");
    }
    const CvEvaluator evaluate = [&](const std::vector<Index>& train,
                                     const std::vector<Index>& val, int r) {
        // relabel the groups present in the training rows
        std::vector<int> remap(static_cast<std::size_t>(K), -1);
        std::vector<int> train_labels;
        train_labels.reserve(train.size());
        int present = 0;
        for (Index i : train) {
            int& m = remap[static_cast<std::size_t>(labels[static_cast<std::size_t>(i)])];
            if (m < 0) m = present++;
            train_labels.push_back(m);
        }
        const Dataset part{data.X(train, Eigen::all), data.Y(train, Eigen::all)};
        const OracleFit fit = oracle_fit(part, train_labels, present, r);
        const Eigen::RowVectorXd fallback = fit.C.colwise().mean();
        double sse = 0.0;
        for (Index i : val) {
            const int m = remap[static_cast<std::size_t>(labels[static_cast<std::size_t>(i)])];
            const Eigen::RowVectorXd c = m >= 0 ? Eigen::RowVectorXd(fit.C.row(m)) : fallback;
            sse += (data.Y.row(i) - data.X.row(i) * fit.B - c).squaredNorm();
        }
        return sse;
    };
    const double tie_tol = 1e-12 * data.Y.squaredNorm();
    return cross_validate_rank(data.n(), r_max, folds, seed, evaluate, tie_tol).rank;
}

}  // namespace hetrrr

#include "hetrrr/subgroup.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace hetrrr {
namespace {

class DisjointSets {
public:
    explicit DisjointSets(Index n) : parent_(static_cast<std::size_t>(n)) {
        std::iota(parent_.begin(), parent_.end(), Index{0});
    }
    Index find(Index x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }
    void unite(Index a, Index b) {
        a = find(a);
        b = find(b);
        if (a != b) parent_[std::max(a, b)] = std::min(a, b);
    }

private:
    std::vector<Index> parent_;
};

}  // namespace

double default_merge_tolerance(double max_zeta_norm) noexcept {
    return std::max(1e-8, 1e-6 * (1.0 + max_zeta_norm));
}

SubgroupPartition partition_from_labels(const std::vector<int>& labels, const Matrix& A) {
    if (static_cast<Index>(labels.size()) != A.rows()) {
        throw Error(ErrorCode::DimensionMismatch, "label count differs from rows of A");
    }
    std::map<int, int> relabel;
    SubgroupPartition part;
    part.assignment.resize(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) {
        auto [it, inserted] = relabel.try_emplace(labels[i], static_cast<int>(relabel.size()));
        part.assignment[i] = it->second;
    }
    part.K_hat = static_cast<int>(relabel.size());
    part.C_hat = Matrix::Zero(part.K_hat, A.cols());
    std::vector<int> counts(static_cast<std::size_t>(part.K_hat), 0);
    for (std::size_t i = 0; i < labels.size(); ++i) {
        part.C_hat.row(part.assignment[i]) += A.row(static_cast<Index>(i));
        ++counts[static_cast<std::size_t>(part.assignment[i])];
    }
    for (int k = 0; k < part.K_hat; ++k) part.C_hat.row(k) /= counts[static_cast<std::size_t>(k)];
    return part;
}

SubgroupPartition extract_partition(const Matrix& A_hat, const RowMatrix& delta_hat,
                                    double tol_merge) {
    const Index n = A_hat.rows();
    if (delta_hat.rows() != num_pairs(n) || delta_hat.cols() != A_hat.cols()) {
        throw Error(ErrorCode::DimensionMismatch, "delta does not match the pairs of A");
    }
    DisjointSets sets(n);
    const double tol2 = tol_merge * tol_merge;
    Index k = 0;
    for (Index i = 0; i < n; ++i) {
        for (Index j = i + 1; j < n; ++j, ++k) {
            if (delta_hat.row(k).squaredNorm() <= tol2) sets.unite(i, j);
        }
    }
    std::vector<int> roots(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) roots[static_cast<std::size_t>(i)] = static_cast<int>(sets.find(i));
    return partition_from_labels(roots, A_hat);
}

Matrix indicator_matrix(const std::vector<int>& labels, int K) {
    Matrix W = Matrix::Zero(static_cast<Index>(labels.size()), K);
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] < 0 || labels[i] >= K) {
            throw Error(ErrorCode::DimensionMismatch, "group label out of range");
        }
        W(static_cast<Index>(i), labels[i]) = 1.0;
    }
    return W;
}

Matrix indicator_matrix(const SubgroupPartition& partition, Index n) {
    if (static_cast<Index>(partition.assignment.size()) != n) {
        throw Error(ErrorCode::DimensionMismatch, "partition size differs from n");
    }
    return indicator_matrix(partition.assignment, partition.K_hat);
}

bool same_partition(const std::vector<int>& a, const std::vector<int>& b) {
    if (a.size() != b.size()) return false;
    std::map<int, int> ab;
    std::map<int, int> ba;
    for (std::size_t i = 0; i < a.size(); ++i) {
        auto [it1, new1] = ab.try_emplace(a[i], b[i]);
        auto [it2, new2] = ba.try_emplace(b[i], a[i]);
        if (it1->second != b[i] || it2->second != a[i]) return false;
    }
    return true;
}

}  // namespace hetrrr

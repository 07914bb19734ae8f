#pragma once

#include <vector>

#include "hetrrr/model.hpp"

namespace hetrrr {

/// Merge threshold max(1e-8, 1e-6 (1 + max_ij ||zeta_ij||)).
double default_merge_tolerance(double max_zeta_norm) noexcept;

/// Groups are the connected components of the graph with an edge (i, j)
/// whenever ||delta_ij|| <= tol_merge. Labels follow the smallest member
/// index; each intercept is the mean of the member rows of A_hat.
SubgroupPartition extract_partition(const Matrix& A_hat, const RowMatrix& delta_hat,
                                    double tol_merge);

/// Builds a partition from explicit labels (any integers); labels are
/// renumbered by first appearance and intercepts are the group means of A.
SubgroupPartition partition_from_labels(const std::vector<int>& labels, const Matrix& A);

/// n x K_hat 0/1 matrix with a single 1 per row.
Matrix indicator_matrix(const SubgroupPartition& partition, Index n);
Matrix indicator_matrix(const std::vector<int>& labels, int K);

/// True when two label vectors induce the same partition of the rows.
bool same_partition(const std::vector<int>& a, const std::vector<int>& b);

}  // namespace hetrrr

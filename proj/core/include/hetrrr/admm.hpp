#pragma once

#include <functional>
#include <optional>

#include "hetrrr/model.hpp"
#include "hetrrr/reduced_rank.hpp"

namespace hetrrr {

inline constexpr double kDefaultRidgeLambda = 0.001;

/// A0 = [R + lambda* Delta'Delta]^{-1} R Y where R = I - Q_X is the residual
/// projector of the design. Exposed separately so the intercept solve can be
/// checked without a design (R = I).
Matrix ridge_fusion_intercepts(const Matrix& residual_projector, const Matrix& Y,
                               double lambda_star);

/// Minimizer of the ridge-fusion criterion, used as the ADMM starting point:
/// A0 as above, B0 = (X'X)^{-1} X'(Y - A0), delta0 = Delta A0, V0 = 0.
AdmmState init_ridge_fusion(const Dataset& data, const LeastSquaresDesign& design,
                            double lambda_star = kDefaultRidgeLambda);
AdmmState init_ridge_fusion(const Dataset& data, double lambda_star = kDefaultRidgeLambda);

/// (I_n + theta Delta'Delta)^{-1} = (I_n + theta 1 1') / (1 + n theta).
Matrix fusion_system_inverse(Index n, double theta);

/// Exact minimizer in A of the step-1 objective at fixed B, delta, V.
Matrix update_A(const AdmmState& state, const Dataset& data, const AdmmConfig& config);

/// Reduced-rank regression of Y - A on X at config.rank.
Matrix update_B(const Matrix& A, const Dataset& data, const LeastSquaresDesign& design,
                const AdmmConfig& config);
Matrix update_B(const Matrix& A, const Dataset& data, const AdmmConfig& config);

/// L(A, B, delta, V): the augmented Lagrangian of the split problem.
double augmented_lagrangian(const Dataset& data, const Matrix& A, const Matrix& B,
                            const RowMatrix& delta, const RowMatrix& V, double lambda,
                            double theta, const PenaltySpec& spec);

/// Per-iteration view handed to an observer: the iterate before the update,
/// the step-1 output (A, B), and the state after the full iteration.
struct IterationSnapshot {
    const AdmmState& previous;
    const Matrix& A_next;
    const Matrix& B_next;
    const AdmmState& current;
};
using AdmmObserver = std::function<void(const IterationSnapshot&)>;

/// Runs the rank-constrained fusion ADMM from `init` (ridge-fusion start when
/// absent). Hitting max_iter is reported through converged = false, not an
/// exception. The partition is extracted from the final delta.
FitResult admm_fit(const Dataset& data, const LeastSquaresDesign& design,
                   const AdmmConfig& config, const PenaltySpec& spec,
                   const AdmmState* init = nullptr, const AdmmObserver& observer = {});
FitResult admm_fit(const Dataset& data, const AdmmConfig& config, const PenaltySpec& spec,
                   const std::optional<AdmmState>& init = std::nullopt);

}  // namespace hetrrr

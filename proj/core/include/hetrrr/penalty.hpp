#pragma once

#include "hetrrr/model.hpp"

namespace hetrrr {

/// p_gamma(t, lambda) for t >= 0. Throws InvalidGamma for an invalid spec and
/// InvalidConfig for negative t or lambda.
double penalty_value(double t, double lambda, const PenaltySpec& spec);

/// penalty_value without argument checks, for inner loops.
double penalty_value_unchecked(double t, double lambda, const PenaltySpec& spec) noexcept;

/// S(z, t) = (1 - t / ||z||)_+ z. Returns zero when ||z|| <= t.
Vector group_soft_threshold(const Eigen::Ref<const Vector>& z, double t);

/// Minimizer of (theta/2)||zeta - delta||^2 + p_gamma(||delta||, lambda).
/// The result is parallel to zeta; zeta = 0 maps to 0.
Vector delta_prox(const Eigen::Ref<const Vector>& zeta, double lambda, double theta,
                  const PenaltySpec& spec);

/// Factor s in [0, 1] such that delta_prox(zeta) = s * zeta, given only
/// ||zeta||. Skips spec validation; callers validate once up front.
double delta_prox_scale(double zeta_norm, double lambda, double theta,
                        const PenaltySpec& spec) noexcept;

}  // namespace hetrrr

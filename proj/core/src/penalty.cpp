#include "hetrrr/penalty.hpp"

#include <cmath>

namespace hetrrr {

double penalty_value(double t, double lambda, const PenaltySpec& spec) {
    spec.validate();
    if (!(t >= 0.0) || !(lambda >= 0.0)) {
        throw Error(ErrorCode::InvalidConfig, "penalty_value needs t >= 0 and lambda >= 0");
    }
    return penalty_value_unchecked(t, lambda, spec);
}

double penalty_value_unchecked(double t, double lambda, const PenaltySpec& spec) noexcept {
    const double g = spec.gamma;
    switch (spec.kind) {
        case PenaltyKind::L1:
            return lambda * t;
        case PenaltyKind::MCP:
            if (t <= g * lambda) return lambda * t - t * t / (2.0 * g);
            return 0.5 * g * lambda * lambda;
        case PenaltyKind::SCAD:
            if (t <= lambda) return lambda * t;
            if (t <= g * lambda) return (2.0 * g * lambda * t - t * t - lambda * lambda) / (2.0 * (g - 1.0));
            return 0.5 * lambda * lambda * (g + 1.0);
    }
    return 0.0;
}

Vector group_soft_threshold(const Eigen::Ref<const Vector>& z, double t) {
    const double norm = z.norm();
    if (norm <= t) return Vector::Zero(z.size());
    return (1.0 - t / norm) * z;
}

double delta_prox_scale(double zeta_norm, double lambda, double theta,
                        const PenaltySpec& spec) noexcept {
    if (zeta_norm <= 0.0) return 0.0;
    // (1 - t/||zeta||)_+ : the soft-threshold factor
    const auto soft = [zeta_norm](double t) { return zeta_norm <= t ? 0.0 : 1.0 - t / zeta_norm; };
    const double g = spec.gamma;
    switch (spec.kind) {
        case PenaltyKind::L1:
            return soft(lambda / theta);
        case PenaltyKind::MCP:
            if (zeta_norm > g * lambda) return 1.0;
            return soft(lambda / theta) / (1.0 - 1.0 / (g * theta));
        case PenaltyKind::SCAD:
            if (zeta_norm > g * lambda) return 1.0;
            if (zeta_norm <= lambda + lambda / theta) return soft(lambda / theta);
            return soft(g * lambda / ((g - 1.0) * theta)) / (1.0 - 1.0 / ((g - 1.0) * theta));
    }
    return 1.0;
}

Vector delta_prox(const Eigen::Ref<const Vector>& zeta, double lambda, double theta,
                  const PenaltySpec& spec) {
    spec.validate_for_theta(theta);
    if (!(lambda >= 0.0)) throw Error(ErrorCode::InvalidConfig, "lambda must be nonnegative");
    return delta_prox_scale(zeta.norm(), lambda, theta, spec) * zeta;
}

}  // namespace hetrrr

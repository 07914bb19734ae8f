#include "hetrrr/admm.hpp"

#include <cmath>

#include "hetrrr/penalty.hpp"
#include "hetrrr/subgroup.hpp"

namespace hetrrr {
namespace {

void check_state_shape(const AdmmState& st, Index n, Index p, Index q) {
    const Index P = num_pairs(n);
    if (st.A.rows() != n || st.A.cols() != q || st.B.rows() != p || st.B.cols() != q ||
        st.delta.rows() != P || st.delta.cols() != q || st.V.rows() != P || st.V.cols() != q) {
        throw Error(ErrorCode::DimensionMismatch, "initial ADMM state has wrong dimensions");
    }
}

// Delta' (theta * delta - V), the pair-space term of the A-update.
Matrix fusion_rhs(const RowMatrix& delta, const RowMatrix& V, double theta, Index n) {
    return delta_transpose_apply(theta * delta - V, n);
}

Matrix solve_A(const Matrix& Y, const Matrix& XB, const Matrix& pair_term, double theta) {
    const Index n = Y.rows();
    Matrix R = Y - XB + pair_term;
    const Eigen::RowVectorXd colsum = R.colwise().sum();
    R.rowwise() += theta * colsum;
    R /= (1.0 + static_cast<double>(n) * theta);
    return R;
}

Matrix solve_B(const Matrix& Z, const LeastSquaresDesign& design, int rank) {
    if (rank >= std::min(design.p(), Z.cols())) return design.ols(Z);
    return design.rrr(Z, rank).B_hat;
}

}  // namespace

Matrix ridge_fusion_intercepts(const Matrix& residual_projector, const Matrix& Y,
                               double lambda_star) {
    const Index n = Y.rows();
    if (residual_projector.rows() != n || residual_projector.cols() != n) {
        throw Error(ErrorCode::DimensionMismatch, "projector must be n x n");
    }
    if (!(lambda_star > 0.0)) {
        throw Error(ErrorCode::InvalidConfig, "ridge fusion lambda* must be positive");
    }
    Matrix M = residual_projector;
    M.diagonal().array() += lambda_star * static_cast<double>(n);
    M.array() -= lambda_star;
    const Eigen::LLT<Matrix> llt(M);
    if (llt.info() != Eigen::Success) {
        throw Error(ErrorCode::SingularDesign,
                    "ridge fusion system is singular (is the constant vector in span(X)?)");
    }
    return llt.solve(residual_projector * Y);
}

AdmmState init_ridge_fusion(const Dataset& data, const LeastSquaresDesign& design,
                            double lambda_star) {
    const Index n = data.n();
    Matrix R = -design.projector();
    R.diagonal().array() += 1.0;
    AdmmState st;
    st.A = ridge_fusion_intercepts(R, data.Y, lambda_star);
    st.B = design.ols(data.Y - st.A);
    st.delta = pairwise_differences(st.A);
    st.V = RowMatrix::Zero(num_pairs(n), data.q());
    return st;
}

AdmmState init_ridge_fusion(const Dataset& data, double lambda_star) {
    return init_ridge_fusion(data, LeastSquaresDesign(data.X), lambda_star);
}

Matrix fusion_system_inverse(Index n, double theta) {
    Matrix inv = Matrix::Constant(n, n, theta);
    inv.diagonal().array() += 1.0;
    return inv / (1.0 + static_cast<double>(n) * theta);
}

Matrix update_A(const AdmmState& state, const Dataset& data, const AdmmConfig& config) {
    return solve_A(data.Y, data.X * state.B,
                   fusion_rhs(state.delta, state.V, config.theta, data.n()), config.theta);
}

Matrix update_B(const Matrix& A, const Dataset& data, const LeastSquaresDesign& design,
                const AdmmConfig& config) {
    return solve_B(data.Y - A, design, config.rank);
}

Matrix update_B(const Matrix& A, const Dataset& data, const AdmmConfig& config) {
    return update_B(A, data, LeastSquaresDesign(data.X), config);
}

double augmented_lagrangian(const Dataset& data, const Matrix& A, const Matrix& B,
                            const RowMatrix& delta, const RowMatrix& V, double lambda,
                            double theta, const PenaltySpec& spec) {
    const RowMatrix r = pairwise_differences(A) - delta;
    double value = 0.5 * (data.Y - data.X * B - A).squaredNorm();
    for (Index k = 0; k < delta.rows(); ++k) {
        value += penalty_value_unchecked(delta.row(k).norm(), lambda, spec);
    }
    value += (V.array() * r.array()).sum() + 0.5 * theta * r.squaredNorm();
    return value;
}

FitResult admm_fit(const Dataset& data, const LeastSquaresDesign& design,
                   const AdmmConfig& config, const PenaltySpec& spec, const AdmmState* init,
                   const AdmmObserver& observer) {
    const Index n = data.n();
    const Index p = data.p();
    const Index q = data.q();
    config.validate(p, q);
    spec.validate_for_theta(config.theta);
    if (design.n() != n || design.p() != p) {
        throw Error(ErrorCode::DimensionMismatch, "design does not match dataset");
    }

    AdmmState st = init ? *init : init_ridge_fusion(data, design);
    check_state_shape(st, n, p, q);
    st.iter = 0;

    const double theta = config.theta;
    const double lambda = config.lambda;
    Matrix pair_term = fusion_rhs(st.delta, st.V, theta, n);

    FitResult out;
    out.trace.reserve(static_cast<std::size_t>(std::min(config.max_iter, 4096)));

    RowMatrix a_row(n, q);
    RowMatrix acc_w(n, q);
    RowMatrix acc_dual(n, q);
    Vector diff(q);
    Vector zeta(q);
    double max_zeta = 0.0;
    AdmmState previous;

    for (int it = 1; it <= config.max_iter; ++it) {
        if (observer) previous = st;

        // Step 1: block coordinate minimization over (A, B).
        st.A = solve_A(data.Y, data.X * st.B, pair_term, theta);
        st.B = solve_B(data.Y - st.A, design, config.rank);
        Matrix A_step1;
        Matrix B_step1;
        if (observer) {
            A_step1 = st.A;
            B_step1 = st.B;
        }

        // Steps 2 and 3 fused over the pairs; Delta'(.) accumulations for the
        // dual residual and the next A-update ride along.
        a_row = st.A;
        acc_w.setZero();
        acc_dual.setZero();
        double primal2 = 0.0;
        double penalty_sum = 0.0;
        max_zeta = 0.0;
        Index k = 0;
        for (Index i = 0; i < n; ++i) {
            const double* ai = a_row.row(i).data();
            double* wi = acc_w.row(i).data();
            double* si = acc_dual.row(i).data();
            for (Index j = i + 1; j < n; ++j, ++k) {
                const double* aj = a_row.row(j).data();
                double* wj = acc_w.row(j).data();
                double* sj = acc_dual.row(j).data();
                double* dk = st.delta.row(k).data();
                double* vk = st.V.row(k).data();
                double znorm2 = 0.0;
                for (Index c = 0; c < q; ++c) {
                    diff[c] = ai[c] - aj[c];
                    zeta[c] = diff[c] + vk[c] / theta;
                    znorm2 += zeta[c] * zeta[c];
                }
                const double znorm = std::sqrt(znorm2);
                max_zeta = std::max(max_zeta, znorm);
                const double s = delta_prox_scale(znorm, lambda, theta, spec);
                penalty_sum += penalty_value_unchecked(s * znorm, lambda, spec);
                for (Index c = 0; c < q; ++c) {
                    const double d_new = s * zeta[c];
                    const double r = diff[c] - d_new;
                    primal2 += r * r;
                    vk[c] += theta * r;
                    const double change = dk[c] - d_new;
                    si[c] += change;
                    sj[c] -= change;
                    dk[c] = d_new;
                    const double w = theta * d_new - vk[c];
                    wi[c] += w;
                    wj[c] -= w;
                }
            }
        }
        pair_term = acc_w;
        st.iter = it;
        st.primal_res = std::sqrt(primal2);
        st.dual_res = theta * acc_dual.norm();
        const double loss = 0.5 * (data.Y - data.X * st.B - st.A).squaredNorm();
        out.trace.push_back({st.primal_res, st.dual_res, loss + penalty_sum});

        if (observer) observer(IterationSnapshot{previous, A_step1, B_step1, st});

        const bool primal_ok = st.primal_res < config.epsilon;
        const bool dual_ok = config.dual_epsilon <= 0.0 || st.dual_res < config.dual_epsilon;
        if (primal_ok && dual_ok) {
            out.converged = true;
            break;
        }
    }

    out.iterations = st.iter;
    out.rank_used = config.rank;
    out.lambda_used = lambda;
    out.tol_merge = default_merge_tolerance(max_zeta);
    out.partition = extract_partition(st.A, st.delta, out.tol_merge);
    out.A_hat = st.A;
    out.B_hat = st.B;
    out.state = std::move(st);
    return out;
}

FitResult admm_fit(const Dataset& data, const AdmmConfig& config, const PenaltySpec& spec,
                   const std::optional<AdmmState>& init) {
    const LeastSquaresDesign design(data.X);
    return admm_fit(data, design, config, spec, init ? &*init : nullptr);
}

}  // namespace hetrrr

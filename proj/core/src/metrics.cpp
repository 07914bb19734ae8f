#include "hetrrr/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "hetrrr/csv.hpp"
#include "hetrrr/subgroup.hpp"

namespace hetrrr {
namespace {

// Min-cost assignment of every row to a distinct column, rows <= cols.
std::vector<int> hungarian(const Matrix& cost) {
    const Index n = cost.rows();
    const Index m = cost.cols();
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> u(static_cast<std::size_t>(n + 1), 0.0);
    std::vector<double> v(static_cast<std::size_t>(m + 1), 0.0);
    std::vector<Index> owner(static_cast<std::size_t>(m + 1), 0);  // column -> row (1-based)
    std::vector<Index> way(static_cast<std::size_t>(m + 1), 0);
    for (Index i = 1; i <= n; ++i) {
        owner[0] = i;
        Index j0 = 0;
        std::vector<double> minv(static_cast<std::size_t>(m + 1), inf);
        std::vector<char> used(static_cast<std::size_t>(m + 1), 0);
        do {
            used[static_cast<std::size_t>(j0)] = 1;
            const Index i0 = owner[static_cast<std::size_t>(j0)];
            double delta = inf;
            Index j1 = 0;
            for (Index j = 1; j <= m; ++j) {
                const auto sj = static_cast<std::size_t>(j);
                if (used[sj]) continue;
                const double cur = cost(i0 - 1, j - 1) - u[static_cast<std::size_t>(i0)] - v[sj];
                if (cur < minv[sj]) {
                    minv[sj] = cur;
                    way[sj] = j0;
                }
                if (minv[sj] < delta) {
                    delta = minv[sj];
                    j1 = j;
                }
            }
            for (Index j = 0; j <= m; ++j) {
                const auto sj = static_cast<std::size_t>(j);
                if (used[sj]) {
                    u[static_cast<std::size_t>(owner[sj])] += delta;
                    v[sj] -= delta;
                } else {
                    minv[sj] -= delta;
                }
            }
            j0 = j1;
        } while (owner[static_cast<std::size_t>(j0)] != 0);
        do {
            const Index j1 = way[static_cast<std::size_t>(j0)];
            owner[static_cast<std::size_t>(j0)] = owner[static_cast<std::size_t>(j1)];
            j0 = j1;
        } while (j0 != 0);
    }
    std::vector<int> row_to_col(static_cast<std::size_t>(n), -1);
    for (Index j = 1; j <= m; ++j) {
        const Index i = owner[static_cast<std::size_t>(j)];
        if (i > 0) row_to_col[static_cast<std::size_t>(i - 1)] = static_cast<int>(j - 1);
    }
    return row_to_col;
}

MeasureSummary summarize(const std::vector<double>& xs) {
    MeasureSummary s;
    if (xs.empty()) return s;
    double sum = 0.0;
    for (double x : xs) sum += x;
    s.mean = sum / static_cast<double>(xs.size());
    if (xs.size() > 1) {
        double ss = 0.0;
        for (double x : xs) ss += (x - s.mean) * (x - s.mean);
        s.sd = std::sqrt(ss / static_cast<double>(xs.size() - 1));
    }
    return s;
}

double pct(std::size_t hits, std::size_t total) {
    return 100.0 * static_cast<double>(hits) / static_cast<double>(total);
}

}  // namespace

Estimate estimate_from_fit(const FitResult& fit) {
    return {fit.B_hat, fit.partition.C_hat, fit.partition.assignment, fit.rank_used, fit.converged};
}

GroupAlignment align_groups(const Matrix& C_hat, const Matrix& C_star) {
    if (C_hat.cols() != C_star.cols()) {
        throw Error(ErrorCode::DimensionMismatch, "intercept matrices differ in q");
    }
    const Index K = C_star.rows();
    const Index Kh = C_hat.rows();
    Matrix cost(K, Kh);
    for (Index k = 0; k < K; ++k) {
        for (Index l = 0; l < Kh; ++l) cost(k, l) = (C_star.row(k) - C_hat.row(l)).norm();
    }
    GroupAlignment out;
    out.match.assign(static_cast<std::size_t>(K), -1);
    if (K == 0 || Kh == 0) return out;
    if (K <= Kh) {
        out.match = hungarian(cost);
    } else {
        const auto est_to_true = hungarian(cost.transpose());
        for (Index l = 0; l < Kh; ++l) out.match[static_cast<std::size_t>(est_to_true[static_cast<std::size_t>(l)])] = static_cast<int>(l);
    }
    for (Index k = 0; k < K; ++k) {
        const int l = out.match[static_cast<std::size_t>(k)];
        if (l >= 0) out.cost += cost(k, l);
    }
    return out;
}

EvalRecord evaluate_estimate(const Estimate& est, const GroundTruth& truth, const TestSet& test) {
    const Index q = truth.B_star.cols();
    const Index n = truth.A_star.rows();
    if (est.B_hat.rows() != truth.B_star.rows() || est.B_hat.cols() != q || est.C_hat.cols() != q ||
        static_cast<Index>(est.assignment.size()) != n || test.Y.cols() != q ||
        test.X.cols() != truth.B_star.rows() || test.W.cols() != truth.C_star.rows() ||
        test.X.rows() != test.Y.rows() || test.W.rows() != test.Y.rows() || est.C_hat.rows() < 1) {
        throw Error(ErrorCode::DimensionMismatch, "estimate, truth and test set disagree in shape");
    }
    EvalRecord rec;
    rec.rank_hat = est.rank_hat;
    rec.K_hat = static_cast<int>(est.C_hat.rows());
    rec.converged = est.converged;
    rec.err_B = (truth.B_star - est.B_hat).squaredNorm() / truth.B_star.squaredNorm();

    Matrix A_hat(n, q);
    for (Index i = 0; i < n; ++i) {
        const int g = est.assignment[static_cast<std::size_t>(i)];
        if (g < 0 || g >= est.C_hat.rows()) throw Error(ErrorCode::DimensionMismatch, "label outside C_hat");
        A_hat.row(i) = est.C_hat.row(g);
    }
    const double a_norm = truth.A_star.squaredNorm();
    // A* = 0 only in degenerate draws; report the absolute error then.
    rec.err_A = (truth.A_star - A_hat).squaredNorm() / (a_norm > 0.0 ? a_norm : 1.0);

    const auto align = align_groups(est.C_hat, truth.C_star);
    const Index K = truth.C_star.rows();
    Matrix chosen(K, q);
    rec.per_group_err.resize(static_cast<std::size_t>(K));
    rec.group_absent.resize(static_cast<std::size_t>(K));
    for (Index k = 0; k < K; ++k) {
        int l = align.match[static_cast<std::size_t>(k)];
        rec.group_absent[static_cast<std::size_t>(k)] = l < 0;
        if (l < 0) {
            Index nearest = 0;
            (est.C_hat.rowwise() - truth.C_star.row(k)).rowwise().squaredNorm().minCoeff(&nearest);
            l = static_cast<int>(nearest);
        }
        chosen.row(k) = est.C_hat.row(l);
        rec.per_group_err[static_cast<std::size_t>(k)] =
            (truth.C_star.row(k) - chosen.row(k)).squaredNorm() / static_cast<double>(q);
    }
    const Matrix resid = test.Y - test.X * est.B_hat - test.W * chosen;
    rec.pre = resid.squaredNorm() / static_cast<double>(test.Y.rows() * q);
    rec.partition_match = same_partition(est.assignment, truth.assignment);
    return rec;
}

EvalRecord evaluate_fit(const FitResult& fit, const GroundTruth& truth, const TestSet& test) {
    return evaluate_estimate(estimate_from_fit(fit), truth, test);
}

Summary aggregate(const std::vector<EvalRecord>& records, int truth_rank, int truth_K) {
    if (records.empty()) throw Error(ErrorCode::EmptyInput, "no records to aggregate");
    const std::size_t m = records.size();
    const std::size_t K = records.front().per_group_err.size();
    std::vector<double> eb, ea, pr, rk, kh;
    std::vector<std::vector<double>> ge(K);
    std::vector<std::size_t> absent(K, 0);
    std::size_t rank_hits = 0, k_hits = 0, conv = 0, agree = 0;
    for (const auto& r : records) {
        if (r.per_group_err.size() != K) throw Error(ErrorCode::DimensionMismatch, "records disagree in K");
        eb.push_back(r.err_B);
        ea.push_back(r.err_A);
        pr.push_back(r.pre);
        rk.push_back(r.rank_hat);
        kh.push_back(r.K_hat);
        for (std::size_t k = 0; k < K; ++k) {
            ge[k].push_back(r.per_group_err[k]);
            if (r.group_absent[k]) ++absent[k];
        }
        rank_hits += r.rank_hat == truth_rank;
        k_hits += r.K_hat == truth_K;
        conv += r.converged;
        agree += r.partition_match && r.rank_hat == truth_rank;
    }
    Summary s;
    s.records = static_cast<int>(m);
    s.err_B = summarize(eb);
    s.err_A = summarize(ea);
    s.pre = summarize(pr);
    s.rank = summarize(rk);
    s.K_hat = summarize(kh);
    for (std::size_t k = 0; k < K; ++k) {
        s.group_err.push_back(summarize(ge[k]));
        s.group_absent_pct.push_back(pct(absent[k], m));
    }
    s.rank_pct = pct(rank_hits, m);
    s.K_pct = pct(k_hits, m);
    s.converged_pct = pct(conv, m);
    s.oracle_agree_pct = pct(agree, m);
    return s;
}

void write_summary_header(std::ostream& out, int K) {
    out << "method,err_B,err_B_sd,err_A,err_A_sd,pre,pre_sd,rank,rank_sd,rank_pct";
    for (int k = 1; k <= K; ++k) out << ",err_alpha" << k << ",err_alpha" << k << "_sd";
    out << ",K_hat,K_hat_sd,K_pct";
    for (int k = 1; k <= K; ++k) out << ",absent" << k << "_pct";
    out << ",converged_pct,oracle_agree_pct,replications,failed\n";
}

void write_summary_row(std::ostream& out, const std::string& method, const Summary& s, int failed) {
    using csv::format_double;
    const auto pair = [&](const MeasureSummary& m) {
        out << ',' << format_double(m.mean) << ',' << format_double(m.sd);
    };
    out << method;
    pair(s.err_B);
    pair(s.err_A);
    pair(s.pre);
    pair(s.rank);
    out << ',' << format_double(s.rank_pct);
    for (const auto& g : s.group_err) pair(g);
    pair(s.K_hat);
    out << ',' << format_double(s.K_pct);
    for (double a : s.group_absent_pct) out << ',' << format_double(a);
    out << ',' << format_double(s.converged_pct) << ',' << format_double(s.oracle_agree_pct) << ','
        << s.records << ',' << failed << '\n';
}

}  // namespace hetrrr

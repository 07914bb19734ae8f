#include "hetrrr/report.hpp"

#include <nlohmann/json.hpp>

namespace hetrrr {
namespace {

using json = nlohmann::ordered_json;

json matrix_json(const Matrix& M) {
    json rows = json::array();
    for (Index i = 0; i < M.rows(); ++i) {
        json row = json::array();
        for (Index j = 0; j < M.cols(); ++j) row.push_back(M(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

json labels_json(const std::vector<int>& labels) {
    json out = json::array();
    for (int g : labels) out.push_back(g + 1);
    return out;
}

}  // namespace

std::string penalty_name(PenaltyKind kind) {
    switch (kind) {
        case PenaltyKind::L1: return "l1";
        case PenaltyKind::MCP: return "mcp";
        case PenaltyKind::SCAD: return "scad";
    }
    return "unknown";
}

std::string truth_json(const SimulationSpec& spec, const SimulatedData& sim) {
    const auto& t = sim.truth;
    json j;
    j["spec"] = {
        {"example", spec.example == SimExample::Ex1 ? 1 : 2},
        {"setting", spec.setting == SimSetting::I ? "i" : "ii"},
        {"n", spec.n},
        {"p", spec.p},
        {"q", spec.q},
        {"r_star", spec.r_star},
        {"K", spec.K},
        {"snr", spec.snr},
        {"mu", spec.mu ? json(*spec.mu) : json("random-normal")},
        {"n_test", spec.n_test},
        {"seed", spec.seed},
        {"rho_x", spec.rho_x},
        {"rho_e", spec.rho_e},
    };
    j["seed"] = spec.seed;
    j["K"] = t.K;
    j["r_star"] = t.r_star;
    j["mu"] = t.mu;
    j["sigma"] = t.sigma;
    j["b_n"] = t.b_n ? json(*t.b_n) : json(nullptr);
    j["B_star"] = matrix_json(t.B_star);
    j["C_star"] = matrix_json(t.C_star);
    j["assignment"] = labels_json(t.assignment);
    j["test_assignment"] = labels_json(sim.test.assignment);
    return j.dump(2) + "\n";
}

std::string fit_report_json(const FitRunConfig& config, const Dataset& data, const FitResult& fit,
                            const SelectionReport* selection) {
    json j;
    j["config"] = {
        {"x", config.x_path},
        {"y", config.y_path},
        {"penalty", penalty_name(config.penalty.kind)},
        {"gamma", config.penalty.kind == PenaltyKind::L1 ? json(nullptr) : json(config.penalty.gamma)},
        {"theta", config.admm.theta},
        {"epsilon", config.admm.epsilon},
        {"dual_epsilon", config.admm.dual_epsilon},
        {"max_iter", config.admm.max_iter},
        {"rank_max", config.rank_max},
        {"n_lambda", config.n_lambda},
        {"lambda_star", config.lambda_star},
        {"cold_start", config.cold_start},
        {"seed", config.seed},
        {"rank", config.rank ? json(*config.rank) : json(nullptr)},
        {"lambda", config.lambda ? json(*config.lambda) : json(nullptr)},
        {"n", data.n()},
        {"p", data.p()},
        {"q", data.q()},
    };

    const Matrix A_part = fit.partition.implied_A();
    const double mse = (data.Y - data.X * fit.B_hat - A_part).squaredNorm() /
                       static_cast<double>(data.n() * data.q());
    j["fit"] = {
        {"rank", fit.rank_used},
        {"lambda", fit.lambda_used},
        {"K_hat", fit.partition.K_hat},
        {"converged", fit.converged},
        {"iterations", fit.iterations},
        {"in_sample_mse", mse},
        {"assignment", labels_json(fit.partition.assignment)},
        {"B_hat", matrix_json(fit.B_hat)},
        {"C_hat", matrix_json(fit.partition.C_hat)},
    };

    if (selection) {
        json grid = json::array();
        for (const auto& e : selection->grid) {
            grid.push_back({{"rank", e.rank},
                            {"lambda", e.lambda},
                            {"score", e.score},
                            {"rss", e.rss},
                            {"K_hat", e.K_hat},
                            {"converged", e.converged},
                            {"iterations", e.iterations}});
        }
        j["selection"] = {
            {"criterion", selection->criterion == Criterion::PIC ? "pic" : "bic"},
            {"best_rank", selection->best_rank},
            {"best_lambda", selection->best_lambda},
            {"best_index", selection->best_index},
            {"grid", std::move(grid)},
        };
    } else {
        j["selection"] = nullptr;
    }

    json trace = json::object();
    if (!fit.trace.empty()) {
        trace = {
            {"length", fit.trace.size()},
            {"objective_first", fit.trace.front().objective},
            {"objective_last", fit.trace.back().objective},
            {"primal_last", fit.trace.back().primal_res},
            {"dual_last", fit.trace.back().dual_res},
        };
    }
    j["diagnostics"] = {
        {"primal_res", fit.state.primal_res},
        {"dual_res", fit.state.dual_res},
        {"tol_merge", fit.tol_merge},
        {"trace", std::move(trace)},
    };
    return j.dump(2) + "\n";
}

}  // namespace hetrrr

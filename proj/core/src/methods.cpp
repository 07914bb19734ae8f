#include "hetrrr/methods.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <thread>

#include "hetrrr/oracle.hpp"
#include "hetrrr/reduced_rank.hpp"

namespace hetrrr {
namespace {

std::string lower(std::string_view s) {
    std::string out(s);
    for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t");
    return std::string(s.substr(b, e - b + 1));
}

Estimate run_fusion(MethodId id, const Dataset& data, const MethodOptions& opt) {
    SelectionOptions sel;
    sel.admm = opt.admm;
    sel.n_lambda = opt.n_lambda;
    sel.lambda_star = opt.lambda_star;
    sel.cold_start = opt.cold_start;
    sel.threads = opt.threads;
    if (is_rank_constrained(id)) {
        sel.criterion = Criterion::PIC;
    } else {
        sel.criterion = Criterion::BIC;
        sel.ranks = {static_cast<int>(std::min(data.p(), data.q()))};
    }
    const auto report = select_model(data, method_penalty(id, opt.mcp_gamma, opt.scad_gamma), sel);
    return estimate_from_fit(report.best_fit);
}

}  // namespace

MethodId parse_method(std::string_view name) {
    std::string s = lower(trim(name));
    if (const auto pos = s.find("lasso"); pos != std::string::npos) s.replace(pos, 5, "l1");
    static const std::pair<const char*, MethodId> table[] = {
        {"sr-mcp", MethodId::SR_MCP}, {"sr-scad", MethodId::SR_SCAD}, {"sr-l1", MethodId::SR_L1},
        {"s-mcp", MethodId::S_MCP},   {"s-scad", MethodId::S_SCAD},   {"s-l1", MethodId::S_L1},
        {"rrr", MethodId::RRR},       {"oracle-s", MethodId::ORACLE_S}, {"oracle-sr", MethodId::ORACLE_SR},
    };
    for (const auto& [key, id] : table) {
        if (s == key) return id;
    }
    throw Error(ErrorCode::InvalidConfig, "unknown method '" + std::string(name) + "'");
}

std::string method_name(MethodId id) {
    switch (id) {
        case MethodId::SR_MCP: return "sr-mcp";
        case MethodId::SR_SCAD: return "sr-scad";
        case MethodId::SR_L1: return "sr-l1";
        case MethodId::S_MCP: return "s-mcp";
        case MethodId::S_SCAD: return "s-scad";
        case MethodId::S_L1: return "s-l1";
        case MethodId::RRR: return "rrr";
        case MethodId::ORACLE_S: return "oracle-s";
        case MethodId::ORACLE_SR: return "oracle-sr";
    }
    return "unknown";
}

std::vector<MethodId> parse_method_list(std::string_view comma_separated) {
    std::vector<MethodId> out;
    std::size_t start = 0;
    while (start <= comma_separated.size()) {
        const auto end = std::min(comma_separated.find(',', start), comma_separated.size());
        const auto item = trim(comma_separated.substr(start, end - start));
        if (!item.empty()) {
            const MethodId id = parse_method(item);
            if (std::find(out.begin(), out.end(), id) == out.end()) out.push_back(id);
        }
        start = end + 1;
    }
    if (out.empty()) throw Error(ErrorCode::InvalidConfig, "method list is empty");
    return out;
}

bool is_oracle(MethodId id) noexcept { return id == MethodId::ORACLE_S || id == MethodId::ORACLE_SR; }

bool is_rank_constrained(MethodId id) noexcept {
    return id == MethodId::SR_MCP || id == MethodId::SR_SCAD || id == MethodId::SR_L1;
}

PenaltySpec method_penalty(MethodId id, double mcp_gamma, double scad_gamma) {
    switch (id) {
        case MethodId::SR_MCP:
        case MethodId::S_MCP: return PenaltySpec::mcp(mcp_gamma);
        case MethodId::SR_SCAD:
        case MethodId::S_SCAD: return PenaltySpec::scad(scad_gamma);
        case MethodId::SR_L1:
        case MethodId::S_L1: return PenaltySpec::l1();
        default: break;
    }
    throw Error(ErrorCode::InvalidConfig, method_name(id) + " has no fusion penalty");
}

Estimate run_method(MethodId id, const SimulatedData& sim, const MethodOptions& options,
                    std::uint64_t cv_seed) {
    const Dataset& data = sim.train;
    const int r_cap = static_cast<int>(std::min(data.p(), data.q()));
    switch (id) {
        case MethodId::RRR: {
            const int r = cv_rank(data, r_cap, options.cv_folds, cv_seed, true);
            const auto fit = rrr_fit_with_intercept(data.X, data.Y, r);
            Estimate est;
            est.B_hat = fit.rrr.B_hat;
            est.C_hat = fit.intercept.transpose();
            est.assignment.assign(static_cast<std::size_t>(data.n()), 0);
            est.rank_hat = r;
            return est;
        }
        case MethodId::ORACLE_S:
        case MethodId::ORACLE_SR: {
            const int K = sim.truth.K;
            const int r = id == MethodId::ORACLE_SR
                              ? sim.truth.r_star
                              : oracle_cv_rank(data, sim.truth.assignment, K, r_cap, options.cv_folds, cv_seed);
            const auto fit = oracle_fit(data, sim.truth.assignment, K, r);
            return {fit.B, fit.C, sim.truth.assignment, r, fit.converged};
        }
        default: return run_fusion(id, data, options);
    }
}

std::vector<ReplicationOutcome> run_replications(const ReplicationPlan& plan) {
    if (plan.reps < 1) throw Error(ErrorCode::InvalidConfig, "reps must be >= 1");
    if (plan.methods.empty()) throw Error(ErrorCode::InvalidConfig, "no methods requested");
    plan.spec.validate();
    const std::size_t per_rep = plan.methods.size();
    const std::size_t total = static_cast<std::size_t>(plan.reps) * per_rep;
    std::vector<ReplicationOutcome> out(total);

    // One task per replication: data are generated once and every method
    // sees the same draw.
    std::atomic<int> next{0};
    const auto worker = [&] {
        for (;;) {
            const int rep = next.fetch_add(1);
            if (rep >= plan.reps) return;
            SimulationSpec spec = plan.spec;
            spec.seed = replication_seed(plan.spec.seed, static_cast<std::uint64_t>(rep));
            std::optional<SimulatedData> sim;
            std::string gen_error;
            try {
                sim = simulate(spec);
            } catch (const std::exception& e) {
                gen_error = e.what();
            }
            for (std::size_t m = 0; m < per_rep; ++m) {
                auto& slot = out[static_cast<std::size_t>(rep) * per_rep + m];
                slot.replication = rep;
                slot.method = plan.methods[m];
                if (!sim) {
                    slot.error = gen_error;
                    continue;
                }
                try {
                    const auto est = run_method(plan.methods[m], *sim, plan.options, spec.seed);
                    slot.record = evaluate_estimate(est, sim->truth, sim->test);
                } catch (const std::exception& e) {
                    slot.error = e.what();
                }
            }
        }
    };
    const int jobs = std::clamp(plan.jobs, 1, plan.reps);
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    return out;
}

std::vector<MethodSummary> summarize_replications(const ReplicationPlan& plan,
                                                  const std::vector<ReplicationOutcome>& outcomes) {
    std::vector<MethodSummary> rows;
    for (MethodId id : plan.methods) {
        std::vector<EvalRecord> recs;
        int failed = 0;
        for (const auto& o : outcomes) {
            if (o.method != id) continue;
            if (o.record) recs.push_back(*o.record);
            else ++failed;
        }
        MethodSummary row{id, std::nullopt, failed};
        if (!recs.empty()) row.summary = aggregate(recs, plan.spec.r_star, plan.spec.K);
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace hetrrr

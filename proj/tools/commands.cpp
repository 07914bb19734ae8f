#include "commands.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>

#include "hetrrr/csv.hpp"
#include "hetrrr/methods.hpp"
#include "hetrrr/report.hpp"

namespace hetrrr::cli {
namespace {

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::Io, "cannot open '" + path + "' for writing");
    out << text;
    if (!out) throw Error(ErrorCode::Io, "write to '" + path + "' failed");
}

PenaltySpec parse_penalty(const std::string& name, std::optional<double> gamma) {
    if (name == "mcp") return PenaltySpec::mcp(gamma.value_or(3.0));
    if (name == "scad") return PenaltySpec::scad(gamma.value_or(3.7));
    if (name == "l1" || name == "lasso") return PenaltySpec::l1();
    throw Error(ErrorCode::InvalidConfig, "unknown penalty '" + name + "' (mcp, scad, l1)");
}

SimulationSpec build_spec(int example, const std::string& setting, std::optional<double> snr,
                          std::optional<double> mu, std::uint64_t seed) {
    if (example == 2) {
        if (mu) throw Error(ErrorCode::InvalidConfig, "--mu applies to example 1 only");
        return example2_spec(snr.value_or(1.5), seed);
    }
    if (example != 1) throw Error(ErrorCode::InvalidConfig, "--example must be 1 or 2");
    SimSetting s;
    if (setting == "i") {
        s = SimSetting::I;
    } else if (setting == "ii") {
        s = SimSetting::II;
        if (!mu) throw Error(ErrorCode::InvalidConfig, "setting ii needs --mu");
    } else {
        throw Error(ErrorCode::InvalidConfig, "--setting must be i or ii");
    }
    auto spec = example1_spec(s, snr.value_or(s == SimSetting::II ? 1.25 : 1.5), mu, seed);
    spec.validate();
    return spec;
}

int report_failure(const Error& e) {
    std::cerr << "hetrrr: " << e.what() << '\n';
    return e.code() == ErrorCode::AllFitsDiverged ? kDiverged : kInvalid;
}

}  // namespace

int effective_jobs(int requested) {
    if (const char* env = std::getenv("HETRRR_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<int>(v);
    }
    return std::max(1, requested);
}

int cmd_fit(const FitArgs& args) {
    try {
        const Dataset data = validate_dataset(csv::read_matrix(args.x_path), csv::read_matrix(args.y_path));
        FitRunConfig cfg;
        cfg.x_path = args.x_path;
        cfg.y_path = args.y_path;
        cfg.penalty = parse_penalty(args.penalty, args.gamma);
        cfg.penalty.validate_for_theta(args.theta);
        cfg.admm.theta = args.theta;
        cfg.admm.epsilon = args.epsilon;
        cfg.admm.dual_epsilon = args.dual_epsilon;
        cfg.admm.max_iter = args.max_iter;
        cfg.rank_max = args.rank_max.value_or(static_cast<int>(std::min(data.p(), data.q())));
        cfg.n_lambda = args.n_lambda;
        cfg.lambda_star = args.lambda_star;
        cfg.cold_start = args.cold_start;
        cfg.seed = args.seed;
        cfg.rank = args.rank;
        cfg.lambda = args.lambda;

        if (args.rank && args.lambda) {
            AdmmConfig admm = cfg.admm;
            admm.rank = *args.rank;
            admm.lambda = *args.lambda;
            const LeastSquaresDesign design(data.X);
            const AdmmState start = init_ridge_fusion(data, design, cfg.lambda_star);
            const FitResult fit = admm_fit(data, design, admm, cfg.penalty, &start);
            write_text(args.out_path, fit_report_json(cfg, data, fit, nullptr));
            if (!fit.converged) {
                std::cerr << "hetrrr: fit did not reach the stopping tolerance in " << fit.iterations
                          << " iterations\n";
                return kDiverged;
            }
            return kOk;
        }

        SelectionOptions sel;
        sel.admm = cfg.admm;
        sel.n_lambda = cfg.n_lambda;
        sel.lambda_star = cfg.lambda_star;
        sel.cold_start = cfg.cold_start;
        sel.threads = effective_jobs(args.jobs);
        if (args.rank) {
            sel.ranks = {*args.rank};
        } else {
            if (cfg.rank_max < 1) throw Error(ErrorCode::RankOutOfRange, "--rank-max must be >= 1");
            sel.ranks.resize(static_cast<std::size_t>(cfg.rank_max));
            std::iota(sel.ranks.begin(), sel.ranks.end(), 1);
        }
        if (args.lambda) sel.lambdas = {*args.lambda};
        const SelectionReport report = select_model(data, cfg.penalty, sel);
        write_text(args.out_path, fit_report_json(cfg, data, report.best_fit, &report));
        return kOk;
    } catch (const Error& e) {
        return report_failure(e);
    }
}

int cmd_simulate(const SimulateArgs& args) {
    try {
        const SimulationSpec spec = build_spec(args.example, args.setting, args.snr, args.mu, args.seed);
        const SimulatedData sim = simulate(spec);
        std::error_code ec;
        std::filesystem::create_directories(args.out_dir, ec);
        if (ec) throw Error(ErrorCode::Io, "cannot create '" + args.out_dir + "': " + ec.message());
        const std::filesystem::path dir(args.out_dir);
        csv::write_matrix((dir / "X.csv").string(), sim.train.X);
        csv::write_matrix((dir / "Y.csv").string(), sim.train.Y);
        csv::write_matrix((dir / "Xtest.csv").string(), sim.test.X);
        csv::write_matrix((dir / "Ytest.csv").string(), sim.test.Y);
        write_text((dir / "truth.json").string(), truth_json(spec, sim));
        return kOk;
    } catch (const Error& e) {
        return report_failure(e);
    }
}

int cmd_replicate(const ReplicateArgs& args) {
    try {
        ReplicationPlan plan;
        plan.spec = build_spec(args.example, args.setting, args.snr, args.mu, args.seed);
        plan.reps = args.reps;
        plan.methods = parse_method_list(args.methods);
        plan.options.admm.theta = args.theta;
        plan.options.admm.epsilon = args.epsilon;
        plan.options.admm.dual_epsilon = args.dual_epsilon;
        plan.options.admm.max_iter = args.max_iter;
        plan.options.n_lambda = args.n_lambda;
        plan.options.cold_start = args.cold_start;
        plan.jobs = effective_jobs(args.jobs);
        if (plan.reps < 1) throw Error(ErrorCode::InvalidConfig, "--reps must be >= 1");
        if (args.n_lambda < 2) throw Error(ErrorCode::InvalidConfig, "--n-lambda must be >= 2");

        const auto outcomes = run_replications(plan);
        for (const auto& o : outcomes) {
            if (!o.record) {
                std::cerr << "hetrrr: replication " << o.replication << ' ' << method_name(o.method)
                          << " failed: " << o.error << '\n';
            }
        }
        std::ostringstream table;
        write_summary_header(table, plan.spec.K);
        for (const auto& row : summarize_replications(plan, outcomes)) {
            if (row.summary) {
                write_summary_row(table, method_name(row.method), *row.summary, row.failed);
            } else {
                table << method_name(row.method) << std::string(static_cast<std::size_t>(15 + 3 * plan.spec.K), ',')
                      << "0," << row.failed << '\n';
            }
        }
        write_text(args.out_path, table.str());
        return kOk;
    } catch (const Error& e) {
        return report_failure(e);
    }
}

}  // namespace hetrrr::cli

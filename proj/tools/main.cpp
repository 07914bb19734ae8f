#include <CLI11.hpp>

#include "commands.hpp"

using hetrrr::cli::ExitCode;

int main(int argc, char** argv) {
    CLI::App app{"Subgroup identification and reduced-rank estimation for multivariate regression"};
    app.require_subcommand(1);

    hetrrr::cli::FitArgs fit;
    auto* f = app.add_subcommand("fit", "Fit X/Y CSV data; selects (rank, lambda) unless both are pinned");
    f->add_option("--x", fit.x_path, "Predictor matrix CSV (n x p)")->required();
    f->add_option("--y", fit.y_path, "Response matrix CSV (n x q)")->required();
    f->add_option("--out", fit.out_path, "Report JSON path")->required();
    f->add_option("--penalty", fit.penalty, "mcp, scad or l1")->capture_default_str();
    f->add_option("--gamma", fit.gamma, "Concavity (default 3 for mcp, 3.7 for scad)");
    f->add_option("--theta", fit.theta, "ADMM step size")->capture_default_str();
    f->add_option("--epsilon", fit.epsilon, "Primal residual tolerance")->capture_default_str();
    f->add_option("--dual-epsilon", fit.dual_epsilon, "Dual residual tolerance (<= 0 disables)")
        ->capture_default_str();
    f->add_option("--max-iter", fit.max_iter, "ADMM iteration cap")->capture_default_str();
    f->add_option("--rank-max", fit.rank_max, "Largest rank searched (default min(p, q))");
    f->add_option("--n-lambda", fit.n_lambda, "Lambda grid size per rank")->capture_default_str();
    f->add_option("--lambda-star", fit.lambda_star, "Ridge-fusion initialization penalty")
        ->capture_default_str();
    f->add_flag("--cold-start", fit.cold_start, "Start every grid point from the ridge-fusion fit");
    f->add_option("--seed", fit.seed, "Recorded in the report")->capture_default_str();
    f->add_option("--rank", fit.rank, "Pin the rank");
    f->add_option("--lambda", fit.lambda, "Pin lambda");
    f->add_option("--jobs", fit.jobs, "Ranks fitted in parallel (HETRRR_THREADS overrides)")
        ->capture_default_str();

    hetrrr::cli::SimulateArgs sim;
    auto* s = app.add_subcommand("simulate", "Write one simulated data set");
    s->add_option("--example", sim.example, "1 or 2")->capture_default_str();
    s->add_option("--setting", sim.setting, "i or ii (example 1)")->capture_default_str();
    s->add_option("--snr", sim.snr, "Signal-to-noise ratio (default 1.25 in setting ii, else 1.5)");
    s->add_option("--mu", sim.mu, "Intercept magnitude (setting ii)");
    s->add_option("--seed", sim.seed, "Base seed")->capture_default_str();
    s->add_option("--out-dir", sim.out_dir, "Output directory")->required();

    hetrrr::cli::ReplicateArgs rep;
    auto* r = app.add_subcommand("replicate", "Monte Carlo comparison of methods");
    r->add_option("--example", rep.example, "1 or 2")->capture_default_str();
    r->add_option("--setting", rep.setting, "i or ii (example 1)")->capture_default_str();
    r->add_option("--snr", rep.snr, "Signal-to-noise ratio (default 1.25 in setting ii, else 1.5)");
    r->add_option("--mu", rep.mu, "Intercept magnitude (setting ii)");
    r->add_option("--reps", rep.reps, "Replications")->capture_default_str();
    r->add_option("--methods", rep.methods,
                  "Comma list of sr-mcp, sr-scad, sr-l1, s-mcp, s-scad, s-l1, rrr, oracle-s, oracle-sr")
        ->capture_default_str();
    r->add_option("--seed", rep.seed, "Base seed")->capture_default_str();
    r->add_option("--out", rep.out_path, "Summary CSV path")->required();
    r->add_option("--theta", rep.theta, "ADMM step size")->capture_default_str();
    r->add_option("--epsilon", rep.epsilon, "Primal residual tolerance")->capture_default_str();
    r->add_option("--dual-epsilon", rep.dual_epsilon, "Dual residual tolerance (<= 0 disables)")
        ->capture_default_str();
    r->add_option("--max-iter", rep.max_iter, "ADMM iteration cap")->capture_default_str();
    r->add_option("--n-lambda", rep.n_lambda, "Lambda grid size per rank")->capture_default_str();
    r->add_flag("--cold-start", rep.cold_start, "Start every grid point from the ridge-fusion fit");
    r->add_option("--jobs", rep.jobs, "Worker threads (HETRRR_THREADS overrides)")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return ExitCode::kInvalid;
    }

    if (f->parsed()) return hetrrr::cli::cmd_fit(fit);
    if (s->parsed()) return hetrrr::cli::cmd_simulate(sim);
    return hetrrr::cli::cmd_replicate(rep);
}

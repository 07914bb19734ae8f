#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hetrrr/metrics.hpp"
#include "hetrrr/selection.hpp"
#include "hetrrr/simulate.hpp"

namespace hetrrr {

enum class MethodId { SR_MCP, SR_SCAD, SR_L1, S_MCP, S_SCAD, S_L1, RRR, ORACLE_S, ORACLE_SR };

/// Canonical lower-case names: sr-mcp, sr-scad, sr-l1, s-mcp, s-scad, s-l1,
/// rrr, oracle-s, oracle-sr. Parsing is case-insensitive and also accepts
/// "lasso" for "l1". Throws InvalidConfig on an unknown name.
MethodId parse_method(std::string_view name);
std::string method_name(MethodId id);
std::vector<MethodId> parse_method_list(std::string_view comma_separated);

bool is_oracle(MethodId id) noexcept;
bool is_rank_constrained(MethodId id) noexcept;  // SR-* only
/// Penalty of the fusion methods; throws InvalidConfig for RRR and oracles.
PenaltySpec method_penalty(MethodId id, double mcp_gamma = 3.0, double scad_gamma = 3.7);

struct MethodOptions {
    AdmmConfig admm;            // theta, epsilon, max_iter, dual_epsilon
    int n_lambda = kDefaultLambdaCount;
    double lambda_star = kDefaultRidgeLambda;
    bool cold_start = false;
    double mcp_gamma = 3.0;
    double scad_gamma = 3.7;
    int cv_folds = 5;
    int threads = 1;            // inner parallelism over ranks
};

/// Fits one method on one simulated replication. Oracle methods read the
/// true training labels (and the true rank for ORACLE-SR).
Estimate run_method(MethodId id, const SimulatedData& sim, const MethodOptions& options,
                    std::uint64_t cv_seed);

struct ReplicationOutcome {
    int replication = 0;
    MethodId method = MethodId::SR_MCP;
    std::optional<EvalRecord> record;  // absent when the fit failed
    std::string error;
};

struct ReplicationPlan {
    SimulationSpec spec;        // spec.seed is the base seed
    int reps = 1;
    std::vector<MethodId> methods;
    MethodOptions options;
    int jobs = 1;
};

/// Runs generate -> fit -> evaluate for every (replication, method). Work is
/// spread over `jobs` threads; the result is ordered by replication, then by
/// method position, and does not depend on `jobs`.
std::vector<ReplicationOutcome> run_replications(const ReplicationPlan& plan);

/// One summary row per method in `plan.methods` order.
struct MethodSummary {
    MethodId method;
    std::optional<Summary> summary;  // absent when every replication failed
    int failed = 0;
};
std::vector<MethodSummary> summarize_replications(const ReplicationPlan& plan,
                                                  const std::vector<ReplicationOutcome>& outcomes);

}  // namespace hetrrr

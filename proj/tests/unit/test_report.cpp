#include <gtest/gtest.h>

#include <nlohmann/json.hpp>

#include "hetrrr/report.hpp"

using namespace hetrrr;
using nlohmann::json;

TEST(TruthJson, KeysAndOneBasedLabels) {
    const auto spec = example1_spec(SimSetting::I, 1.5, 2.0, 9);
    const auto sim = simulate(spec);
    const auto text = truth_json(spec, sim);
    const json j = json::parse(text);
    for (const char* key : {"spec", "seed", "K", "r_star", "mu", "sigma", "b_n", "B_star", "C_star",
                            "assignment", "test_assignment"}) {
        EXPECT_TRUE(j.contains(key)) << key;
    }
    EXPECT_EQ(j["K"], 3);
    EXPECT_EQ(j["assignment"].size(), 100u);
    for (std::size_t i = 0; i < 100; ++i) {
        EXPECT_EQ(j["assignment"][i].get<int>(), sim.truth.assignment[i] + 1);
    }
    EXPECT_EQ(j["B_star"].size(), 12u);
    EXPECT_EQ(j["B_star"][0].size(), 8u);
    EXPECT_EQ(j["B_star"][4][5].get<double>(), sim.truth.B_star(4, 5));
    EXPECT_EQ(j["sigma"].get<double>(), sim.truth.sigma);
    EXPECT_EQ(text, truth_json(spec, simulate(spec)));

    const auto spec2 = example2_spec(1.5, 9);
    EXPECT_TRUE(json::parse(truth_json(spec2, simulate(spec2)))["b_n"].is_null());
}

TEST(FitReport, SectionsAndValues) {
    const auto sim = simulate(example1_spec(SimSetting::I, 1.5, 3.0, 4));
    AdmmConfig cfg;
    cfg.rank = 3;
    cfg.lambda = 1.0;
    cfg.max_iter = 50;
    const auto fit = admm_fit(sim.train, cfg, PenaltySpec::mcp());
    FitRunConfig rc;
    rc.x_path = "X.csv";
    rc.y_path = "Y.csv";
    rc.rank = 3;
    rc.lambda = 1.0;
    rc.admm = cfg;
    const json j = json::parse(fit_report_json(rc, sim.train, fit, nullptr));
    EXPECT_TRUE(j["selection"].is_null());
    EXPECT_EQ(j["config"]["penalty"], "mcp");
    EXPECT_EQ(j["config"]["n"], 100);
    EXPECT_EQ(j["fit"]["iterations"], fit.iterations);
    EXPECT_EQ(j["fit"]["K_hat"], fit.partition.K_hat);
    EXPECT_EQ(j["fit"]["C_hat"].size(), static_cast<std::size_t>(fit.partition.K_hat));
    int lo = 1 << 30;
    for (const auto& v : j["fit"]["assignment"]) lo = std::min(lo, v.get<int>());
    EXPECT_EQ(lo, 1);
    EXPECT_EQ(j["diagnostics"]["trace"]["length"], fit.trace.size());
    EXPECT_EQ(j["diagnostics"]["primal_res"].get<double>(), fit.state.primal_res);
}

TEST(FitReport, SelectionSection) {
    const auto sim = simulate(example1_spec(SimSetting::I, 1.5, 3.0, 5));
    SelectionOptions opt;
    opt.ranks = {3};
    opt.n_lambda = 4;
    const auto rep = select_model(sim.train, PenaltySpec::mcp(), opt);
    FitRunConfig rc;
    const json j = json::parse(fit_report_json(rc, sim.train, rep.best_fit, &rep));
    EXPECT_EQ(j["selection"]["criterion"], "pic");
    EXPECT_EQ(j["selection"]["grid"].size(), 4u);
    EXPECT_EQ(j["selection"]["best_index"], rep.best_index);
    EXPECT_EQ(j["selection"]["best_lambda"].get<double>(), rep.best_lambda);
}

TEST(PenaltyName, AllKinds) {
    EXPECT_EQ(penalty_name(PenaltyKind::L1), "l1");
    EXPECT_EQ(penalty_name(PenaltyKind::MCP), "mcp");
    EXPECT_EQ(penalty_name(PenaltyKind::SCAD), "scad");
}

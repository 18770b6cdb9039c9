#include <gtest/gtest.h>

#include <cmath>

#include "circres/compute.hpp"
#include "circres/sweep.hpp"
#include "circres/verification.hpp"

using namespace circres;

namespace {

ComputeRequest request(CirculantSpec spec, Quantity q, Method m) {
    return ComputeRequest{.spec = std::move(spec), .quantity = q, .method = m};
}

}  // namespace

TEST(Compute, ClosedResistancePair) {
    auto req = request(CirculantSpec::deletion(5, {1}), Quantity::resistance, Method::closed);
    req.u = 0;
    req.v = 2;
    const auto out = compute_invariants(req);
    ASSERT_EQ(out.size(), 1u);
    EXPECT_NEAR(out[0].value.get<double>(), 0.8, 1e-14);
    EXPECT_EQ(out[0].metadata["q"], 2);
    req.exact = true;
    EXPECT_EQ(compute_invariants(req)[0].value, "4/5");
}

TEST(Compute, AllPairsDefault) {
    const auto out = compute_invariants(request(CirculantSpec::deletion(7, {2}), Quantity::hitting, Method::spectral));
    ASSERT_EQ(out.size(), 6u);
    for (const auto& r : out) EXPECT_EQ(r.metadata["u"], 0);
}

TEST(Compute, TransportRecordsDelta) {
    auto req = request(CirculantSpec::deletion(7, {2}), Quantity::resistance, Method::closed);
    req.q = 1;
    req.exact = true;
    const auto out = compute_invariants(req);
    EXPECT_EQ(out[0].metadata["delta_q"], 3);
    EXPECT_EQ(out[0].value, "40/91");
}

TEST(Compute, TreesAcrossMethods) {
    const auto spec = CirculantSpec::deletion(7, {1});
    auto closed = request(spec, Quantity::trees, Method::closed);
    closed.exact = true;
    EXPECT_EQ(compute_invariants(closed)[0].value, "1183");
    EXPECT_EQ(compute_invariants(request(spec, Quantity::trees, Method::oracle))[0].value, "1183");
    const auto spectral = compute_invariants(request(spec, Quantity::trees, Method::spectral))[0];
    EXPECT_EQ(spectral.representation, Representation::log);
    EXPECT_EQ(spectral.metadata["rounded"], "1183");
}

TEST(Compute, LargeForestsSwitchToLog) {
    auto req = request(CirculantSpec::deletion(1001, {1}), Quantity::forests, Method::closed);
    req.q = 1;
    const auto out = compute_invariants(req);
    EXPECT_EQ(out[0].representation, Representation::log);
    EXPECT_TRUE(std::isfinite(out[0].value.get<double>()));
}

TEST(Compute, Preconditions) {
    EXPECT_THROW(compute_invariants(request(CirculantSpec::deletion(6, {1}), Quantity::trees, Method::closed)),
                 DomainError);
    EXPECT_THROW(compute_invariants(request(CirculantSpec::deletion(9, {3}), Quantity::trees, Method::closed)),
                 UnsupportedCaseError);
    EXPECT_THROW(compute_invariants(request(CirculantSpec::deletion(9, {1, 2}), Quantity::trees, Method::closed)),
                 UnsupportedCaseError);
    EXPECT_THROW(compute_invariants(request(CirculantSpec::deletion(6, {1, 2}), Quantity::trees, Method::spectral)),
                 DisconnectedGraphError);
    EXPECT_THROW(compute_invariants(request(CirculantSpec::deletion(7, {1}), Quantity::trees, Method::monte_carlo)),
                 UnsupportedCaseError);
    auto exact_spectral = request(CirculantSpec::deletion(7, {1}), Quantity::trees, Method::spectral);
    exact_spectral.exact = true;
    EXPECT_THROW(compute_invariants(exact_spectral), UnsupportedCaseError);
    EXPECT_THROW(compute_invariants(request(CirculantSpec::deletion(401, {1}), Quantity::trees, Method::oracle)),
                 DomainError);
}

TEST(Compute, MonteCarloRecordsSeed) {
    auto req = request(CirculantSpec::deletion(5, {1}), Quantity::hitting, Method::monte_carlo);
    req.q = 2;
    req.walk = WalkConfig{99, 20000, 0, 0};
    const auto out = compute_invariants(req);
    EXPECT_EQ(out[0].metadata["seed"], 99);
    EXPECT_EQ(out[0].metadata["walks"], 20000);
}

TEST(Compute, EigenvaluesOfDisconnectedSpec) {
    const auto out =
        compute_invariants(request(CirculantSpec::deletion(6, {1, 2}), Quantity::eigenvalues, Method::spectral));
    EXPECT_EQ(out[0].value.size(), 6u);
    EXPECT_EQ(out[0].metadata["connected"], false);
}

TEST(Verification, AllPassAndWorstBounds) {
    std::vector<CirculantSpec> specs;
    for (int n = 3; n <= 11; ++n)
        for (int r = 1; r <= n / 2; ++r) specs.push_back(CirculantSpec::deletion(n, {r}));
    specs.push_back(CirculantSpec::weighted(8, {{1, Rational(1, 2)}, {3, 2}}));
    const auto report = run_verification(specs, Tolerances{}, 0);
    EXPECT_TRUE(report.all_pass());
    EXPECT_EQ(report.summary.failed, 0u);
    EXPECT_EQ(report.summary.total, report.cases.size());
    EXPECT_GT(report.summary.disconnected_specs, 0u);
    for (const auto& c : report.cases) {
        EXPECT_GE(report.summary.worst_abs_dev, c.max_abs_dev);
        EXPECT_GE(report.summary.worst_rel_dev, c.max_rel_dev);
    }
}

TEST(Verification, TightToleranceFails) {
    Tolerances tol;
    tol.resistance_rel = 0;
    tol.hitting_rel = 0;
    tol.kirchhoff_rel = 0;
    tol.tree_rel = 0;
    tol.forest_rel = 0;
    tol.eigen_rel = 0;
    const auto report = run_verification({CirculantSpec::deletion(29, {1})}, tol, 1);
    EXPECT_FALSE(report.all_pass());
    EXPECT_GT(report.summary.failed, 0u);
}

TEST(Sweep, RowsIncreasingAndFinite) {
    const auto table = run_sweep(SweepQuantity::kirchhoff_scaled, 4, 2001, 1, 1, 0);
    EXPECT_EQ(table.skipped_even, 998u);  // n-min is clamped to 5
    ASSERT_FALSE(table.rows.empty());
    EXPECT_EQ(table.rows.front().n, 5);
    EXPECT_EQ(table.rows.back().n, 2001);
    double prev_gap = INFINITY;
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const auto& row = table.rows[i];
        EXPECT_TRUE(std::isfinite(row.value));
        if (i > 0) {
            EXPECT_GT(row.n, table.rows[i - 1].n);
        }
        EXPECT_LT(std::abs(row.deviation), prev_gap);
        prev_gap = std::abs(row.deviation);
    }
    EXPECT_LT(std::abs(table.rows.back().deviation), 1e-1);
}

TEST(Sweep, Limits) {
    const auto tree = run_sweep(SweepQuantity::tree_ratio, 5, 2001, 2, 1, 0);
    EXPECT_LT(std::abs(tree.rows.back().value - 0.1353352832366127), 1e-2);
    const auto res = run_sweep(SweepQuantity::resistance_scaled, 9991, 10001, 2, 3, 0);
    EXPECT_LT(std::abs(res.rows.back().value - 1.0), 1e-2);
    const auto gap = run_sweep(SweepQuantity::rho_gap, 5, 501, 2, 1, 0);
    EXPECT_LT(std::abs(gap.rows.back().value), std::abs(gap.rows.front().value));
    EXPECT_THROW(run_sweep(SweepQuantity::resistance_scaled, 5, 9, 2, 7, 0), DomainError);
    EXPECT_THROW(parse_sweep_quantity("nope"), DomainError);
}

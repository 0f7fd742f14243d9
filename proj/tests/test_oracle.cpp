#include <catch2/catch_amalgamated.hpp>

#include "mgcalc/oracle.hpp"

using namespace mgcalc;

TEST_CASE("graph enumeration basics") {
    SECTION("single-vertex graphs") {
        long seen = 0;
        oracle::GraphEnumOptions opt;
        opt.max_vertices = 1;
        opt.genus_min = 0;
        opt.genus_max = 3;
        oracle::enumerate_curve_graphs(opt, [&](const oracle::GraphTopology& topo,
                                                const std::vector<int>& weights) {
            CHECK(topo.vertex_count == 1);
            CHECK(topo.beta + weights[0] <= 3);
            ++seen;
        });
        // Loops 0..3 with weight filling the rest of the genus budget:
        // (0 loops, w=0..3), (1, w<=2), (2, w<=1), (3, w=0) -> 4+3+2+1.
        CHECK(seen == 10);
    }
    SECTION("stable-only emits exactly the stable cusp-free graphs") {
        oracle::GraphEnumOptions opt;
        opt.max_vertices = 3;
        opt.genus_min = 3;
        opt.genus_max = 4;
        opt.stable_only = true;
        long count = 0;
        oracle::enumerate_curve_graphs(opt, [&](const oracle::GraphTopology& topo,
                                                const std::vector<int>& weights) {
            const CurveGraph g =
                oracle::materialize(topo, weights, std::vector<int>(weights.size(), 0));
            REQUIRE(is_stable(g).ok);
            const int genus = arithmetic_genus(g);
            REQUIRE(genus >= 3);
            REQUIRE(genus <= 4);
            ++count;
        });
        CHECK(count > 0);
    }
    SECTION("unrestricted enumeration covers stable and unstable graphs alike") {
        oracle::GraphEnumOptions all, stable;
        all.max_vertices = stable.max_vertices = 2;
        all.genus_min = stable.genus_min = 3;
        all.genus_max = stable.genus_max = 3;
        stable.stable_only = true;
        long n_all = 0, n_stable = 0, n_all_stable = 0;
        oracle::enumerate_curve_graphs(all, [&](const oracle::GraphTopology& topo,
                                                const std::vector<int>& weights) {
            ++n_all;
            const CurveGraph g =
                oracle::materialize(topo, weights, std::vector<int>(weights.size(), 0));
            if (is_stable(g).ok) ++n_all_stable;
        });
        oracle::enumerate_curve_graphs(stable, [&](const oracle::GraphTopology&,
                                                   const std::vector<int>&) { ++n_stable; });
        CHECK(n_stable == n_all_stable);
        CHECK(n_all > n_stable);
    }
}

TEST_CASE("pseudostability checkers agree on all small graphs") {
    oracle::OracleBounds bounds;
    bounds.graph_vertices = 4;
    bounds.graph_genus = 4;
    const auto report = oracle::run_pseudostability_oracle(bounds);
    INFO(report.input);
    CHECK(report.agree);
}

TEST_CASE("oracle run over every scope with small bounds") {
    oracle::OracleBounds bounds;
    bounds.fcurve_genus_max = 12;
    bounds.graph_vertices = 3;
    bounds.graph_genus = 3;
    bounds.series_genus_max = 12;
    bounds.floor_m_max = 30;
    bounds.floor_e_max = 6;
    bounds.floor_q_max = 6;
    const auto reports = oracle::run_oracles("all", bounds);
    REQUIRE(reports.size() == 13);  // 10 genera + 3 aggregated sweeps
    for (const auto& report : reports) {
        INFO(report.operation << " " << report.input);
        CHECK(report.agree);
    }

    const auto j = oracle::oracle_reports_to_json(reports);
    REQUIRE(j.is_array());
    CHECK(j[0]["operation"] == "fcurves.enumerate");
    CHECK(j[0]["agree"] == true);

    SECTION("scope and bounds validation") {
        CHECK_THROWS_AS(oracle::run_oracles("nonsense", bounds), std::domain_error);
        oracle::OracleBounds too_big;
        too_big.graph_vertices = 9;
        CHECK_THROWS_AS(oracle::run_oracles("all", too_big), std::domain_error);
    }
}

// Acceptance suite: one pass/fail line per criterion, exit status 0 only
// if every criterion passes.  All checks are exact; no tolerances.

#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "mgcalc/curve_graph.hpp"
#include "mgcalc/descent.hpp"
#include "mgcalc/divisor.hpp"
#include "mgcalc/fcurve.hpp"
#include "mgcalc/linear_series.hpp"
#include "mgcalc/oracle.hpp"
#include "mgcalc/phase.hpp"
#include "test_helpers.hpp"

using namespace mgcalc;

namespace {

struct Check {
    bool ok = true;
    std::ostringstream detail;

    void require(bool condition, const std::string& what) {
        if (!condition) {
            ok = false;
            if (detail.tellp() > 0) detail << "; ";
            detail << what;
        }
    }
};

// 1. The log-canonical family pairs with the elliptic-tail ray as
//    (11*alpha - 9)/12, vanishing at alpha = 9/11.
void criterion_ray_pairing(Check& check) {
    testing::RationalSource source(101);
    for (int trial = 0; trial < 10; ++trial) {
        const Rational alpha = source.in_unit_interval();
        const Rational pairing = pair_with_ray(log_canonical_divisor(Genus(17), alpha, Model::Stack));
        check.require(pairing == (11 * alpha - 9) / 12,
                      "pairing mismatch at alpha=" + to_string(alpha));
    }
    check.require(
        pair_with_ray(log_canonical_divisor(Genus(17), make_rational(9, 11), Model::Stack)) == 0,
        "pairing at 9/11 is not zero");
}

// 2. For every g in 3..30 the stack family has exactly one wall, at 9/11,
//    contracting exactly the elliptic-tail stratum.
void criterion_first_wall(Check& check) {
    for (int g = 3; g <= 30; ++g) {
        const PhaseReport report = critical_alphas(Genus(g), Model::Stack);
        check.require(report.identically_zero.empty(), "g=" + std::to_string(g) + ": unexpected flat row");
        check.require(report.walls.size() == 1 && report.walls[0].alpha == make_rational(9, 11),
                      "g=" + std::to_string(g) + ": walls != {9/11}");
        if (!report.walls.empty())
            check.require(report.walls[0].contracted == std::vector<FCurve>{FCurve::a()},
                          "g=" + std::to_string(g) + ": contracted != {A}");
    }
}

// 3. For every g in 4..30 the pullback family has its wall at 7/10.  The
//    strata pairing to zero there are D(1) and the rows E(i, g-1-i) with
//    both arms of genus >= 2; rows E(1, g-2) evaluate to 2 - alpha = 13/10
//    and stay positive (their genus-1 arm reduces b_{g-1} to b_1, which
//    cancels), so they are checked as NOT contracted.  The elliptic-tail
//    row A vanishes identically and is reported separately.
void criterion_second_wall(Check& check) {
    for (int g = 4; g <= 30; ++g) {
        const PhaseReport report = critical_alphas(Genus(g), Model::PsPullback);
        check.require(report.identically_zero == std::vector<FCurve>{FCurve::a()},
                      "g=" + std::to_string(g) + ": identically-zero rows != {A}");
        const Rational wall = make_rational(7, 10);
        const Wall* at_wall = nullptr;
        for (const Wall& w : report.walls)
            if (w.alpha == wall) at_wall = &w;
        check.require(at_wall != nullptr, "g=" + std::to_string(g) + ": no wall at 7/10");
        if (!at_wall) continue;

        std::vector<FCurve> expected{FCurve::d(1)};
        for (int i = 2; 2 * i <= g - 1; ++i) expected.push_back(FCurve::e(i, g - 1 - i));
        std::sort(expected.begin(), expected.end());
        check.require(at_wall->contracted == expected,
                      "g=" + std::to_string(g) + ": contracted set mismatch");

        const DivisorClass d = log_canonical_divisor(Genus(g), wall, Model::PsPullback);
        check.require(intersect(d, FCurve::e(1, g - 2)) == make_rational(13, 10),
                      "g=" + std::to_string(g) + ": E(1,g-2) should stay at 13/10");
    }
}

// 4. On (7/10, 9/11] the pullback family is certified nef with the A row
//    at zero and everything else strictly positive.
void criterion_nef_band(Check& check) {
    const std::vector<Rational> alphas{make_rational(7, 10) + make_rational(1, 1000),
                                       make_rational(3, 4), make_rational(4, 5),
                                       make_rational(9, 11)};
    for (int g = 3; g <= 30; ++g)
        for (const Rational& alpha : alphas) {
            const NefVerdict verdict =
                gkm_nef_check(log_canonical_divisor(Genus(g), alpha, Model::PsPullback));
            check.require(verdict.kind == NefVerdict::Kind::Nef,
                          "g=" + std::to_string(g) + " alpha=" + to_string(alpha) + ": not nef");
            if (verdict.kind != NefVerdict::Kind::Nef) continue;
            for (const IntersectionReport& row : verdict.certificate) {
                if (row.curve.family == FCurveFamily::A)
                    check.require(row.value == 0, "g=" + std::to_string(g) + ": A row nonzero");
                else
                    check.require(row.value > 0, "g=" + std::to_string(g) + " alpha=" +
                                                     to_string(alpha) + ": row " + row.curve.label() +
                                                     " not positive");
            }
        }
}

// 5. The discrepancy coefficient is 9 - 11*alpha and satisfies its
//    defining relation -c/12 = (K + alpha*delta).R identically.
void criterion_discrepancy(Check& check) {
    testing::RationalSource source(505);
    for (int trial = 0; trial < 10; ++trial) {
        const Rational alpha = source.in_unit_interval();
        const Rational c = discrepancy_coefficient(alpha);
        check.require(c == 9 - 11 * alpha, "value mismatch at alpha=" + to_string(alpha));
        check.require(-c / 12 == pair_with_ray(log_canonical_divisor(Genus(9), alpha, Model::Stack)),
                      "defining relation fails at alpha=" + to_string(alpha));
    }
    check.require(discrepancy_coefficient(make_rational(9, 11)) == 0, "c(9/11) != 0");
    check.require(discrepancy_coefficient(make_rational(7, 10)) == make_rational(13, 10),
                  "c(7/10) != 13/10");
}

// 6. The Chow linearizations for n = 4 and n = 3 are exact positive
//    multiples of 11*lambda - delta and 32*lambda - 3*delta, hitting
//    alpha = 9/11 and 25/32.
void criterion_linearizations(Check& check) {
    for (int g = 3; g <= 30; ++g) {
        const LinearizationClass four = linearization_class(Genus(g), 4);
        const DivisorClass ray4 =
            Rational(16 * (g - 1)) * DivisorClass::uniform(Genus(g), Rational(11), Rational(1));
        check.require(four.divisor == ray4 && four.certified,
                      "g=" + std::to_string(g) + ": n=4 not 16(g-1)*(11l-d)");
        check.require(proportionality_alpha(four.divisor) == make_rational(9, 11),
                      "g=" + std::to_string(g) + ": n=4 alpha != 9/11");

        const LinearizationClass three = linearization_class(Genus(g), 3);
        const DivisorClass ray3 =
            Rational(3 * (g - 1)) * DivisorClass::uniform(Genus(g), Rational(32), Rational(3));
        check.require(three.divisor == ray3 && three.certified,
                      "g=" + std::to_string(g) + ": n=3 not 3(g-1)*(32l-3d)");
        check.require(proportionality_alpha(three.divisor) == make_rational(25, 32),
                      "g=" + std::to_string(g) + ": n=3 alpha != 25/32");
    }
}

// 7. Over every stable graph on up to 6 vertices with genus in [3,6], the
//    tail-to-cusp transform preserves genus, lands on pseudostable curves,
//    is idempotent, and the maximal tails are pairwise disjoint (enforced
//    inside the transform, which throws on violation).  The enumeration is
//    deterministic, so the workers split it by parity.
void criterion_transform_suite(Check& check, long& graphs_checked) {
    const unsigned workers = std::max(1u, std::min(4u, std::thread::hardware_concurrency()));
    std::vector<long> counts(workers, 0), failures(workers, 0);
    std::vector<std::string> first_failure(workers);

    const auto run_worker = [&](unsigned worker) {
        oracle::GraphEnumOptions opt;
        opt.max_vertices = 6;
        opt.genus_min = 3;
        opt.genus_max = 6;
        opt.stable_only = true;
        long index = 0;
        oracle::enumerate_curve_graphs(opt, [&](const oracle::GraphTopology& topo,
                                                const std::vector<int>& weights) {
            if (static_cast<unsigned>(index++ % workers) != worker) return;
            ++counts[worker];
            const CurveGraph g =
                oracle::materialize(topo, weights, std::vector<int>(weights.size(), 0));
            bool ok = true;
            try {
                const int genus = arithmetic_genus(g);
                const CurveGraph image = t_transform(g);
                ok = arithmetic_genus(image) == genus && is_pseudostable(image).ok &&
                     t_transform(image) == image;
            } catch (const std::exception&) {
                ok = false;
            }
            if (!ok) {
                ++failures[worker];
                if (first_failure[worker].empty()) first_failure[worker] = graph_to_json(g).dump();
            }
        });
    };

    std::vector<std::thread> threads;
    for (unsigned worker = 0; worker < workers; ++worker) threads.emplace_back(run_worker, worker);
    for (std::thread& thread : threads) thread.join();

    long total_failures = 0;
    std::string failure_note;
    for (unsigned worker = 0; worker < workers; ++worker) {
        graphs_checked += counts[worker];
        total_failures += failures[worker];
        if (failure_note.empty()) failure_note = first_failure[worker];
    }
    check.require(total_failures == 0,
                  std::to_string(total_failures) + " failing graphs, first: " + failure_note);
    check.require(graphs_checked > 100000, "suspiciously few stable graphs enumerated");
}

// 8. Decomposition identity and constant profile drops across the sweep.
void criterion_decomposition(Check& check) {
    long in_regime = 0;
    for (int g = 3; g <= 30; ++g)
        for (int r = 0; r <= g; ++r) {
            if (g - r == 0 && r < 3) continue;
            for (int n = 2; n <= 6; ++n) {
                if (h0_twisted(g - r, r, n, 2).in_regime()) {
                    ++in_regime;
                    check.require(decomposition_identity(Genus(g), r, n),
                                  "identity fails at g=" + std::to_string(g) + " r=" +
                                      std::to_string(r) + " n=" + std::to_string(n));
                }
                const DimensionProfile profile = dimension_profile(TailConfiguration(Genus(g), r), n);
                for (int a = 2; a <= 2 * n - 3; ++a) {
                    const auto& here = profile.entries[static_cast<std::size_t>(a)].dim;
                    const auto& next = profile.entries[static_cast<std::size_t>(a + 1)].dim;
                    if (here && next)
                        check.require(*here - *next == r, "drop != r at g=" + std::to_string(g) +
                                                              " r=" + std::to_string(r) +
                                                              " n=" + std::to_string(n) +
                                                              " a=" + std::to_string(a));
                }
            }
        }
    check.require(in_regime > 2000, "suspiciously few in-regime configurations");
}

// 9. The floor identity holds on the whole exhaustive sweep.
void criterion_floor_sweep(Check& check, long& cases) {
    const DescentSweepSummary summary = descent_sweep(200, 20, 12);
    cases = summary.cases;
    check.require(summary.failures == 0, std::to_string(summary.failures) + " failures");
}

// 10. The coarse-space coefficient at e = 2 matches the coarse form of
//     the log-canonical family on the genus-1 boundary.
void criterion_coarse_consistency(Check& check) {
    testing::RationalSource source(1010);
    for (int trial = 0; trial < 10; ++trial) {
        const Rational alpha = source.in_unit_interval();
        const Rational transformed = coarse_coefficient(RamifiedBoundary(2, alpha));
        check.require(transformed == (1 + alpha) / 2, "coefficient mismatch at alpha=" + to_string(alpha));
        const DivisorClass coarse = log_canonical_divisor(Genus(8), alpha, Model::Coarse);
        check.require(Rational(2) - coarse.delta_coeff(1) == transformed,
                      "coarse divisor disagrees at alpha=" + to_string(alpha));
    }
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        std::string title;
        std::function<void(Check&, std::string&)> run;
    };

    std::vector<Criterion> criteria;
    const auto plain = [](void (*fn)(Check&)) {
        return [fn](Check& check, std::string&) { fn(check); };
    };
    criteria.push_back({1, "ray pairing (11a-9)/12, zero at 9/11", plain(criterion_ray_pairing)});
    criteria.push_back({2, "first wall 9/11 contracts {A}, g=3..30", plain(criterion_first_wall)});
    criteria.push_back({3, "second wall 7/10 contracts D(1) and two-armed E rows, g=4..30",
                        plain(criterion_second_wall)});
    criteria.push_back({4, "pullback family nef on (7/10, 9/11], A row zero", plain(criterion_nef_band)});
    criteria.push_back({5, "discrepancy 9-11a with -c/12 = pairing", plain(criterion_discrepancy)});
    criteria.push_back({6, "linearizations: n=4 ~ 11l-d (9/11), n=3 ~ 32l-3d (25/32)",
                        plain(criterion_linearizations)});
    criteria.push_back({7, "transform suite over all stable graphs, <=6 vertices, genus 3..6",
                        [](Check& check, std::string& extra) {
                            long graphs = 0;
                            criterion_transform_suite(check, graphs);
                            extra = std::to_string(graphs) + " stable graphs";
                        }});
    criteria.push_back({8, "decomposition identity and profile drops, g=3..30, n=2..6",
                        plain(criterion_decomposition)});
    criteria.push_back({9, "floor identity sweep m<=200, e<=20, q<=12",
                        [](Check& check, std::string& extra) {
                            long cases = 0;
                            criterion_floor_sweep(check, cases);
                            extra = std::to_string(cases) + " cases";
                        }});
    criteria.push_back({10, "coarse coefficient (1+a)/2 matches the coarse divisor",
                        plain(criterion_coarse_consistency)});

    int failed = 0;
    for (const Criterion& criterion : criteria) {
        Check check;
        std::string extra;
        const auto start = std::chrono::steady_clock::now();
        try {
            criterion.run(check, extra);
        } catch (const std::exception& error) {
            check.require(false, std::string("exception: ") + error.what());
        }
        const auto elapsed =
            std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
        std::cout << (check.ok ? "PASS" : "FAIL") << "  criterion " << criterion.id << ": "
                  << criterion.title;
        if (!extra.empty()) std::cout << " [" << extra << "]";
        std::cout << " (" << elapsed.count() << " ms)";
        if (!check.ok) std::cout << " -- " << check.detail.str();
        std::cout << '\n';
        if (!check.ok) ++failed;
    }
    if (failed == 0)
        std::cout << "all 10 criteria passed\n";
    else
        std::cout << failed << " criteria failed\n";
    return failed == 0 ? 0 : 1;
}

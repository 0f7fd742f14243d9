#pragma once

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "mgcalc/divisor.hpp"
#include "mgcalc/fcurve.hpp"
#include "mgcalc/rational.hpp"

namespace mgcalc {

// Pairing constants of the elliptic-tail ray R:
//   lambda.R = 1/12, delta_0.R = 1, delta_1.R = -1/12, delta_i.R = 0 (i >= 2).
// The stratum-A table row is 12 times this ray.
inline Rational ray_lambda_pairing() { return make_rational(1, 12); }

inline Rational ray_delta_pairing(int i) {
    if (i == 0) return Rational(1);
    if (i == 1) return make_rational(-1, 12);
    return Rational(0);
}

// (a*lambda - sum b_i delta_i).R = a/12 - b_0 + b_1/12.
inline Rational pair_with_ray(const DivisorClass& d) {
    Rational out = d.lambda_coeff() * ray_lambda_pairing();
    for (int i = 0; i <= d.genus().half(); ++i) out -= d.delta_coeff(i) * ray_delta_pairing(i);
    return out;
}

// Coefficient c of delta_1 in the comparison of the log canonical divisor
// with its pullback from the pseudostable space.  Determined by pairing
// both sides with the contracted ray: -c/12 = (K + alpha*delta).R, which
// gives c = 9 - 11*alpha.  The defining relation is re-verified on every
// call.
inline Rational discrepancy_coefficient(const Rational& alpha) {
    if (alpha < 0 || alpha > 1)
        throw std::domain_error("alpha must lie in [0,1], got " + to_string(alpha));
    const Rational c = 9 - 11 * alpha;
    const Rational pairing = pair_with_ray(log_canonical_divisor(Genus(3), alpha, Model::Stack));
    if (-c / 12 != pairing)
        throw std::logic_error("discrepancy relation -c/12 = (K + alpha*delta).R violated");
    return c;
}

// One critical value: the strata listed pair to zero there and to a
// positive value just above.  Only the first wall below alpha = 1 is
// certified by the nefness analysis; later walls are reported but marked.
struct Wall {
    Rational alpha;
    std::vector<FCurve> contracted;
    bool certified;
};

struct PhaseReport {
    Genus genus;
    Model model;
    // Strata whose intersection vanishes identically in alpha (the
    // elliptic-tail stratum for the pullback family).
    std::vector<FCurve> identically_zero;
    // Sorted by alpha, descending.
    std::vector<Wall> walls;
};

// Walls of the log-canonical family on [0,1]: every stratum intersection
// is an affine function of alpha, and a wall is a root in [0,1] where the
// sign changes from + to 0/- as alpha decreases.  Solved exactly over the
// rationals; there is no tolerance anywhere.
inline PhaseReport critical_alphas(Genus g, Model model) {
    if (model == Model::Coarse)
        throw std::domain_error("critical alphas are computed for the mg and ps families only");

    const DivisorClass at0 = log_canonical_divisor(g, Rational(0), model);
    const DivisorClass at1 = log_canonical_divisor(g, Rational(1), model);

    PhaseReport report{g, model, {}, {}};
    struct AffineRow {
        FCurve curve;
        Rational value0;  // value at alpha = 0
        Rational slope;
    };
    std::vector<AffineRow> rows;
    for (const FCurve& curve : enumerate_fcurves(g)) {
        Rational v0 = intersect(at0, curve);
        Rational v1 = intersect(at1, curve);
        if (v0 == 0 && v1 == 0) {
            report.identically_zero.push_back(curve);
            continue;
        }
        rows.push_back({curve, v0, v1 - v0});
    }

    std::vector<Rational> alphas;
    for (const AffineRow& row : rows) {
        if (row.slope <= 0) continue;  // value does not drop as alpha decreases
        Rational root = -row.value0 / row.slope;
        if (root < 0 || root > 1) continue;
        if (std::find(alphas.begin(), alphas.end(), root) == alphas.end()) alphas.push_back(root);
    }
    std::sort(alphas.begin(), alphas.end(), [](const Rational& a, const Rational& b) { return a > b; });

    for (std::size_t w = 0; w < alphas.size(); ++w) {
        Wall wall{alphas[w], {}, w == 0};
        for (const AffineRow& row : rows)
            if (row.value0 + row.slope * alphas[w] == 0) wall.contracted.push_back(row.curve);
        report.walls.push_back(std::move(wall));
    }
    return report;
}

inline nlohmann::ordered_json phase_report_to_json(const PhaseReport& report) {
    nlohmann::ordered_json j;
    j["genus"] = report.genus.value;
    j["model"] = model_name(report.model);
    auto& zero = j["identically_zero"] = nlohmann::ordered_json::array();
    for (const FCurve& curve : report.identically_zero) zero.push_back(fcurve_to_json(curve));
    auto& walls = j["walls"] = nlohmann::ordered_json::array();
    for (const Wall& wall : report.walls) {
        nlohmann::ordered_json wj;
        wj["alpha"] = to_string(wall.alpha);
        wj["certified"] = wall.certified;
        if (!wall.certified) wj["note"] = "outside certified range";
        auto& contracted = wj["contracted"] = nlohmann::ordered_json::array();
        for (const FCurve& curve : wall.contracted) contracted.push_back(fcurve_to_json(curve));
        walls.push_back(std::move(wj));
    }
    return j;
}

// Sign table for the walls of a family: one row per stratum, one column
// per wall and per open interval between consecutive walls.
inline std::string phase_sign_table_tsv(Genus g, Model model) {
    const PhaseReport report = critical_alphas(g, model);

    // Sample points: midpoints of (w_{k+1}, w_k) intervals plus the walls
    // themselves, walking down from alpha = 1.
    std::vector<std::pair<std::string, Rational>> columns;
    Rational upper(1);
    for (const Wall& wall : report.walls) {
        if (wall.alpha < upper)
            columns.push_back({"(" + to_string(wall.alpha) + "," + to_string(upper) + ")",
                               (wall.alpha + upper) / 2});
        columns.push_back({"alpha=" + to_string(wall.alpha), wall.alpha});
        upper = wall.alpha;
    }
    if (upper > 0) columns.push_back({"(0," + to_string(upper) + ")", upper / 2});

    std::ostringstream out;
    out << "family\tparams";
    for (const auto& col : columns) out << '\t' << col.first;
    out << '\n';
    for (const FCurve& curve : enumerate_fcurves(g)) {
        out << family_letter(curve.family) << '\t';
        for (std::size_t i = 0; i < curve.params.size(); ++i) {
            if (i) out << ',';
            out << curve.params[i];
        }
        for (const auto& col : columns) {
            const Rational value = intersect(log_canonical_divisor(g, col.second, model), curve);
            out << '\t' << (value > 0 ? "+" : value < 0 ? "-" : "0");
        }
        out << '\n';
    }
    return out.str();
}

// Text description of the loci swept out by the strata contracted at the
// second wall.  T_0 needs g >= 4 (its second component has genus g-2 >= 2
// as written) and is omitted for g = 3.
inline std::string contracted_loci_description(Genus g) {
    std::ostringstream out;
    out << "Contracted loci at alpha = 7/10 (genus " << g.value << "):\n";
    if (g.value >= 4) {
        out << "  T_0 = { C1 u_{p,q} C2 : g(C1) = 1, g(C2) = " << g.value - 2
            << " }  -- two-pointed elliptic tails (elliptic bridges)\n";
    } else {
        out << "  T_0 omitted: it needs g >= 4 (the complementary component has genus g-2)\n";
    }
    for (int i = 1; i <= g.value - 2; ++i) {
        out << "  T_" << i << " = { C1 u_p C2 u_q C3 : g(C1) = " << i << ", g(C2) = 1, g(C3) = "
            << g.value - 1 - i << " }\n";
    }
    out << "These loci have codimension two; the contraction at alpha = 7/10 is small.\n";
    return out.str();
}

}  // namespace mgcalc

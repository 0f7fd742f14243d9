#pragma once

#include <algorithm>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "mgcalc/divisor.hpp"
#include "mgcalc/rational.hpp"

namespace mgcalc {

// The six families of one-dimensional boundary strata, labelled by the
// letters traditionally attached to them:
//   A          -- a varying elliptic tail
//   B          -- a 4-pointed curve of genus g-3 on a moving rational spine
//   C(i)       -- a 1-pointed genus-i curve and a 3-pointed genus-(g-2-i) curve
//   D(i)       -- two 2-pointed curves of genus i and g-2-i
//   E(i,j)     -- two 1-pointed curves of genus i, j and a 2-pointed curve
//                 of genus g-1-i-j
//   F(i,j,k,l) -- four 1-pointed curves with i+j+k+l = g
enum class FCurveFamily { A, B, C, D, E, F };

inline char family_letter(FCurveFamily f) {
    switch (f) {
        case FCurveFamily::A: return 'A';
        case FCurveFamily::B: return 'B';
        case FCurveFamily::C: return 'C';
        case FCurveFamily::D: return 'D';
        case FCurveFamily::E: return 'E';
        case FCurveFamily::F: return 'F';
    }
    throw std::logic_error("unreachable family tag");
}

struct FCurve {
    FCurveFamily family;
    std::vector<int> params;

    static FCurve a() { return {FCurveFamily::A, {}}; }
    static FCurve b() { return {FCurveFamily::B, {}}; }
    static FCurve c(int i) { return {FCurveFamily::C, {i}}; }
    static FCurve d(int i) { return {FCurveFamily::D, {i}}; }
    static FCurve e(int i, int j) { return {FCurveFamily::E, {std::min(i, j), std::max(i, j)}}; }
    static FCurve f(int i, int j, int k, int l) {
        std::vector<int> p{i, j, k, l};
        std::sort(p.begin(), p.end());
        return {FCurveFamily::F, std::move(p)};
    }

    std::string label() const {
        std::ostringstream out;
        out << family_letter(family);
        if (!params.empty()) {
            out << '(';
            for (std::size_t i = 0; i < params.size(); ++i) {
                if (i) out << ',';
                out << params[i];
            }
            out << ')';
        }
        return out.str();
    }

    // Parameter ranges for a curve living in genus g.
    void validate(Genus g) const {
        const auto fail = [&](const std::string& why) {
            throw std::domain_error("F-curve " + label() + " invalid for genus " +
                                    std::to_string(g.value) + ": " + why);
        };
        switch (family) {
            case FCurveFamily::A:
            case FCurveFamily::B:
                if (!params.empty()) fail("family takes no parameters");
                break;
            case FCurveFamily::C:
                if (params.size() != 1) fail("family C takes one parameter");
                if (params[0] < 1 || g.value - 2 - params[0] < 0) fail("need 1 <= i <= g-2");
                break;
            case FCurveFamily::D:
                if (params.size() != 1) fail("family D takes one parameter");
                if (params[0] < 1 || params[0] > g.value - 3) fail("need 1 <= i <= g-3");
                break;
            case FCurveFamily::E:
                if (params.size() != 2) fail("family E takes two parameters");
                if (params[0] < 1 || params[0] > params[1]) fail("need 1 <= i <= j");
                if (params[0] + params[1] > g.value - 1) fail("need i+j <= g-1");
                break;
            case FCurveFamily::F: {
                if (params.size() != 4) fail("family F takes four parameters");
                int sum = 0;
                for (std::size_t i = 0; i < 4; ++i) {
                    if (params[i] < 1) fail("all parts must be >= 1");
                    if (i && params[i] < params[i - 1]) fail("parts must be sorted ascending");
                    sum += params[i];
                }
                if (sum != g.value) fail("parts must sum to g");
                break;
            }
        }
    }

    friend bool operator==(const FCurve& x, const FCurve& y) {
        return x.family == y.family && x.params == y.params;
    }
    friend bool operator!=(const FCurve& x, const FCurve& y) { return !(x == y); }
    friend bool operator<(const FCurve& x, const FCurve& y) {
        if (x.family != y.family) return x.family < y.family;
        return x.params < y.params;
    }
};

// Deterministic, duplicate-free list of the one-dimensional strata of a
// given genus: family letter first, parameters lexicographic.  Families C
// and D are indexed by one genus each; D is symmetric under i <-> g-2-i,
// so only min(i, g-2-i) is kept.
inline std::vector<FCurve> enumerate_fcurves(Genus g) {
    std::vector<FCurve> out;
    out.push_back(FCurve::a());
    out.push_back(FCurve::b());
    for (int i = 1; i <= g.value - 2; ++i) out.push_back(FCurve::c(i));
    for (int i = 1; 2 * i <= g.value - 2 && i <= g.value - 3; ++i) out.push_back(FCurve::d(i));
    for (int i = 1; 2 * i <= g.value - 1; ++i)
        for (int j = i; i + j <= g.value - 1; ++j) out.push_back(FCurve::e(i, j));
    for (int i = 1; 4 * i <= g.value; ++i)
        for (int j = i; i + 3 * j <= g.value; ++j)
            for (int k = j; i + j + 2 * k <= g.value; ++k) {
                const int l = g.value - i - j - k;
                if (l >= k) out.push_back(FCurve::f(i, j, k, l));
            }
    return out;
}

// Intersection of a divisor class with a one-dimensional stratum, using
// the symmetric lookup b_m = b_{g-m}.  Family A is normalized as 12 times
// the elliptic-tail ray (lambda pairs to 1 on this family).
inline Rational intersect(const DivisorClass& d, const FCurve& curve) {
    curve.validate(d.genus());
    const auto b = [&](int i) -> const Rational& { return d.delta_coeff(i); };
    switch (curve.family) {
        case FCurveFamily::A:
            return d.lambda_coeff() - 12 * b(0) + b(1);
        case FCurveFamily::B:
            return b(0);
        case FCurveFamily::C:
            return b(curve.params[0]);
        case FCurveFamily::D:
            return 2 * b(0) - b(curve.params[0]);
        case FCurveFamily::E: {
            const int i = curve.params[0], j = curve.params[1];
            return b(i) + b(j) - b(i + j);
        }
        case FCurveFamily::F: {
            const int i = curve.params[0], j = curve.params[1];
            const int k = curve.params[2], l = curve.params[3];
            return b(i) + b(j) + b(k) + b(l) - b(i + j) - b(i + k) - b(i + l);
        }
    }
    throw std::logic_error("unreachable family tag");
}

struct IntersectionReport {
    FCurve curve;
    Rational value;
};

inline std::vector<IntersectionReport> intersection_table(const DivisorClass& d) {
    std::vector<IntersectionReport> table;
    for (const FCurve& curve : enumerate_fcurves(d.genus()))
        table.push_back({curve, intersect(d, curve)});
    return table;
}

// Sufficient nefness criterion: if b_i = 0 or b_i >= b_0 for every i in
// 1..floor(g/2), non-negative intersection with all one-dimensional
// strata implies the class is nef.  When the hypothesis fails the check
// is inconclusive and says so rather than guessing.
struct NefVerdict {
    enum class Kind { Nef, NotNef, Inapplicable };
    Kind kind;
    // Nef: the full non-negative intersection table.
    std::vector<IntersectionReport> certificate;
    // NotNef: first enumerated stratum with negative intersection.
    std::optional<IntersectionReport> witness;
    // Inapplicable: index with 0 != b_i < b_0.
    std::optional<int> offending_index;
};

inline NefVerdict gkm_nef_check(const DivisorClass& d) {
    for (int i = 1; i <= d.genus().half(); ++i) {
        const Rational& bi = d.delta_coeff(i);
        if (bi != 0 && bi < d.delta_coeff(0))
            return {NefVerdict::Kind::Inapplicable, {}, std::nullopt, i};
    }
    std::vector<IntersectionReport> table;
    for (const FCurve& curve : enumerate_fcurves(d.genus())) {
        Rational value = intersect(d, curve);
        if (value < 0)
            return {NefVerdict::Kind::NotNef, {}, IntersectionReport{curve, std::move(value)}, std::nullopt};
        table.push_back({curve, std::move(value)});
    }
    return {NefVerdict::Kind::Nef, std::move(table), std::nullopt, std::nullopt};
}

inline nlohmann::ordered_json fcurve_to_json(const FCurve& curve) {
    nlohmann::ordered_json j;
    j["family"] = std::string(1, family_letter(curve.family));
    j["params"] = curve.params;
    return j;
}

inline nlohmann::ordered_json table_to_json(const std::vector<IntersectionReport>& table) {
    auto rows = nlohmann::ordered_json::array();
    for (const auto& row : table) {
        nlohmann::ordered_json j = fcurve_to_json(row.curve);
        j["value"] = to_string(row.value);
        rows.push_back(std::move(j));
    }
    return rows;
}

inline std::string table_to_tsv(const std::vector<IntersectionReport>& table) {
    std::ostringstream out;
    out << "family\tparams\tvalue\n";
    for (const auto& row : table) {
        out << family_letter(row.curve.family) << '\t';
        for (std::size_t i = 0; i < row.curve.params.size(); ++i) {
            if (i) out << ',';
            out << row.curve.params[i];
        }
        out << '\t' << to_string(row.value) << '\n';
    }
    return out.str();
}

inline nlohmann::ordered_json nef_verdict_to_json(const NefVerdict& v) {
    nlohmann::ordered_json j;
    switch (v.kind) {
        case NefVerdict::Kind::Nef:
            j["verdict"] = "nef";
            j["certificate"] = table_to_json(v.certificate);
            break;
        case NefVerdict::Kind::NotNef:
            j["verdict"] = "not_nef";
            j["witness"] = fcurve_to_json(v.witness->curve);
            j["value"] = to_string(v.witness->value);
            break;
        case NefVerdict::Kind::Inapplicable:
            j["verdict"] = "inapplicable";
            j["reason"] = "hypothesis fails: 0 != b_" + std::to_string(*v.offending_index) + " < b_0";
            j["offending_index"] = *v.offending_index;
            break;
    }
    return j;
}

}  // namespace mgcalc

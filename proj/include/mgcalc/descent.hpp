#pragma once

#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "mgcalc/rational.hpp"

namespace mgcalc {

// A boundary divisor along which the map to the coarse space ramifies to
// order e, carrying stack-side coefficient a in [0,1].
struct RamifiedBoundary {
    RamifiedBoundary(int e, Rational a) : e(e), a(std::move(a)) {
        if (e < 1) throw std::domain_error("ramification order must be >= 1");
        if (this->a < 0 || this->a > 1)
            throw std::domain_error("boundary coefficient must lie in [0,1], got " + to_string(this->a));
    }
    int e;
    Rational a;
};

// Coefficient picked up on the coarse space: (e - 1 + a) / e.  The generic
// genus-1 boundary has e = 2, where a stack coefficient alpha becomes
// (1 + alpha)/2.
inline Rational coarse_coefficient(const RamifiedBoundary& b) {
    return (Rational(b.e) - 1 + b.a) / b.e;
}

// The floor identity behind the section-space comparison:
//   e*floor(m(e-1+a)/e) - m(e-1) = m + e*floor((floor(m a) - m)/e)
// together with its reduced form
//   floor((m a - m)/e) = floor((floor(m a) - m)/e).
// Both are evaluated exactly; a false return would be a genuine
// counterexample and fails the build.
inline bool floor_identity_check(long m, int e, const Rational& a) {
    if (m < 1) throw std::domain_error("m must be a positive integer");
    RamifiedBoundary boundary(e, a);  // validates e and a

    const Integer floor_ma = rational_floor(m * a);
    const Integer rhs_inner = rational_floor(Rational(floor_ma - m) / e);

    const Integer lhs_full = e * rational_floor(Rational(m) * (Rational(e) - 1 + a) / e) - m * Integer(e - 1);
    const Integer rhs_full = m + e * rhs_inner;
    const bool full = lhs_full == rhs_full;

    const bool reduced = rational_floor((m * a - m) / e) == rhs_inner;
    return full && reduced;
}

// Correct pole bound along the boundary for sections invariant under the
// mu_e action: m + e*floor((floor(m a) - m)/e).  Always <= floor(m a),
// with equality exactly when e divides floor(m a) - m.
inline Integer invariant_vanishing_order(long m, int e, const Rational& a) {
    if (m < 1) throw std::domain_error("m must be a positive integer");
    RamifiedBoundary boundary(e, a);

    const Integer floor_ma = rational_floor(m * a);
    const Integer order = m + e * rational_floor(Rational(floor_ma - m) / e);
    if (order > floor_ma) throw std::logic_error("vanishing order exceeded floor(m a)");
    if ((order - m) % e != 0) throw std::logic_error("vanishing order not congruent to m mod e");
    return order;
}

struct DescentSweepSummary {
    long cases = 0;
    long failures = 0;
    // First few failing (m, e, a) triples, if any.
    std::vector<std::string> failing_inputs;
};

// Exhaustive check of the floor identity over m <= m_max, e <= e_max and
// all a = p/q with 0 <= p <= q <= q_max.
inline DescentSweepSummary descent_sweep(long m_max, int e_max, int q_max) {
    if (m_max < 1 || e_max < 1 || q_max < 1) throw std::domain_error("sweep bounds must be >= 1");
    DescentSweepSummary summary;
    for (int q = 1; q <= q_max; ++q)
        for (int p = 0; p <= q; ++p) {
            const Rational a = make_rational(p, q);
            for (int e = 1; e <= e_max; ++e)
                for (long m = 1; m <= m_max; ++m) {
                    ++summary.cases;
                    if (!floor_identity_check(m, e, a)) {
                        ++summary.failures;
                        if (summary.failing_inputs.size() < 10) {
                            std::ostringstream what;
                            what << "m=" << m << " e=" << e << " a=" << p << "/" << q;
                            summary.failing_inputs.push_back(what.str());
                        }
                    }
                }
        }
    return summary;
}

inline nlohmann::ordered_json descent_sweep_to_json(const DescentSweepSummary& summary) {
    nlohmann::ordered_json j;
    j["cases"] = summary.cases;
    j["failures"] = summary.failures;
    j["ok"] = summary.failures == 0;
    if (!summary.failing_inputs.empty()) j["failing_inputs"] = summary.failing_inputs;
    return j;
}

}  // namespace mgcalc

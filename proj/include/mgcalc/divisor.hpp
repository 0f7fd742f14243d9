#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "mgcalc/rational.hpp"

namespace mgcalc {

// Genus of the curves being parametrized.  Everything in this library
// assumes g >= 3; smaller genera have special behaviour that is out of
// scope here.
struct Genus {
    explicit Genus(int g) : value(g) {
        if (g < 3) throw std::domain_error("genus must be >= 3, got " + std::to_string(g));
    }
    int value;
    int half() const { return value / 2; }

    friend bool operator==(Genus a, Genus b) { return a.value == b.value; }
    friend bool operator!=(Genus a, Genus b) { return a.value != b.value; }
};

// Which member of the log-canonical family a divisor class represents:
//   Stack      -- a*lambda - (2-alpha)*delta on the moduli stack
//   PsPullback -- the pullback from the pseudostable space: the delta_1
//                 coefficient is replaced by 11 - 12*alpha
//   Coarse     -- the coarse-space form, which carries (1+alpha)/2 on the
//                 genus-1 boundary instead of alpha
enum class Model { Stack, PsPullback, Coarse };

inline std::string model_name(Model m) {
    switch (m) {
        case Model::Stack: return "mg";
        case Model::PsPullback: return "ps";
        case Model::Coarse: return "coarse";
    }
    throw std::logic_error("unreachable model tag");
}

inline Model model_from_name(const std::string& name) {
    if (name == "mg") return Model::Stack;
    if (name == "ps") return Model::PsPullback;
    if (name == "coarse") return Model::Coarse;
    throw std::invalid_argument("unknown model \"" + name + "\" (want mg, ps, or coarse)");
}

// A divisor class a*lambda - sum_i b_i*delta_i on the moduli space of
// stable curves of a fixed genus.  The delta coefficients are stored
// densely for i = 0..floor(g/2); lookups above g/2 resolve through the
// symmetry b_i = b_{g-i}.  Instances are immutable after construction.
class DivisorClass {
  public:
    DivisorClass(Genus g, Rational lambda, std::vector<Rational> delta)
        : genus_(g), lambda_(std::move(lambda)), delta_(std::move(delta)) {
        const std::size_t want = static_cast<std::size_t>(g.half()) + 1;
        if (delta_.size() != want)
            throw std::invalid_argument("divisor class for genus " + std::to_string(g.value) +
                                        " needs " + std::to_string(want) + " delta coefficients, got " +
                                        std::to_string(delta_.size()));
    }

    // All b_i equal to the same value.
    static DivisorClass uniform(Genus g, Rational lambda, const Rational& b) {
        return DivisorClass(g, std::move(lambda),
                            std::vector<Rational>(static_cast<std::size_t>(g.half()) + 1, b));
    }

    Genus genus() const { return genus_; }
    const Rational& lambda_coeff() const { return lambda_; }

    // b_i with the symmetric convention b_i = b_{g-i}.
    const Rational& delta_coeff(int i) const {
        const int g = genus_.value;
        if (i < 0 || i > g)
            throw std::out_of_range("delta index " + std::to_string(i) + " out of range for genus " +
                                    std::to_string(g));
        const int reduced = i <= g / 2 ? i : g - i;
        return delta_[static_cast<std::size_t>(reduced)];
    }

    std::size_t delta_count() const { return delta_.size(); }

    friend bool operator==(const DivisorClass& a, const DivisorClass& b) {
        return a.genus_ == b.genus_ && a.lambda_ == b.lambda_ && a.delta_ == b.delta_;
    }
    friend bool operator!=(const DivisorClass& a, const DivisorClass& b) { return !(a == b); }

    friend DivisorClass operator*(const Rational& s, const DivisorClass& d) {
        std::vector<Rational> delta = d.delta_;
        for (auto& b : delta) b *= s;
        return DivisorClass(d.genus_, s * d.lambda_, std::move(delta));
    }

    friend DivisorClass operator+(const DivisorClass& a, const DivisorClass& b) {
        if (a.genus_ != b.genus_) throw std::invalid_argument("cannot add divisor classes of different genus");
        std::vector<Rational> delta = a.delta_;
        for (std::size_t i = 0; i < delta.size(); ++i) delta[i] += b.delta_[i];
        return DivisorClass(a.genus_, a.lambda_ + b.lambda_, std::move(delta));
    }

  private:
    Genus genus_;
    Rational lambda_;
    std::vector<Rational> delta_;
};

// The log-canonical family 13*lambda - (2-alpha)*delta in its three forms.
// On the stack the canonical class is 13*lambda - 2*delta, so the class of
// K + alpha*delta has a = 13 and b_i = 2 - alpha.  The pullback form keeps
// b_i = 2 - alpha away from delta_1 and replaces b_1 by 11 - 12*alpha; the
// coarse form records the genus-1 boundary coefficient as (1+alpha)/2,
// i.e. b_1 = 2 - (1+alpha)/2.
inline DivisorClass log_canonical_divisor(Genus g, const Rational& alpha, Model model) {
    if (alpha < 0 || alpha > 1)
        throw std::domain_error("alpha must lie in [0,1], got " + to_string(alpha));
    const Rational b = 2 - alpha;
    std::vector<Rational> delta(static_cast<std::size_t>(g.half()) + 1, b);
    switch (model) {
        case Model::Stack:
            break;
        case Model::PsPullback:
            delta[1] = 11 - 12 * alpha;
            break;
        case Model::Coarse:
            delta[1] = 2 - (1 + alpha) / 2;
            break;
    }
    return DivisorClass(g, Rational(13), std::move(delta));
}

// Line bundle induced on the moduli space by the natural linearization of
// the Chow variety of n-canonical curves: n(g-1)(n(12*lambda - delta) -
// 4*lambda), expanded to n(g-1)((12n-4)*lambda - n*delta).  The n = 3 and
// n = 4 cases are the certified ones; other n are computed but flagged.
struct LinearizationClass {
    DivisorClass divisor;
    bool certified;
};

inline LinearizationClass linearization_class(Genus g, int n) {
    if (n < 3) throw std::domain_error("linearization requires n >= 3, got " + std::to_string(n));
    const long scale = static_cast<long>(n) * (g.value - 1);
    const Rational a = Rational(scale) * (12 * n - 4);
    const Rational b = Rational(scale) * n;
    return LinearizationClass{DivisorClass::uniform(g, a, b), n == 3 || n == 4};
}

// If D = a*lambda - b*delta with one common b and a > 0, the alpha with
// D proportional to 13*lambda - (2-alpha)*delta is 2 - 13*b/a.  Returns
// nothing when the coefficients are not all equal or a <= 0.
inline std::optional<Rational> proportionality_alpha(const DivisorClass& d) {
    if (d.lambda_coeff() <= 0) return std::nullopt;
    const Rational& b = d.delta_coeff(0);
    for (int i = 1; i <= d.genus().half(); ++i)
        if (d.delta_coeff(i) != b) return std::nullopt;
    return Rational(2) - Rational(13) * b / d.lambda_coeff();
}

inline nlohmann::ordered_json divisor_to_json(const DivisorClass& d) {
    nlohmann::ordered_json j;
    j["g"] = d.genus().value;
    j["lambda"] = to_string(d.lambda_coeff());
    auto& delta = j["delta"] = nlohmann::ordered_json::array();
    for (int i = 0; i <= d.genus().half(); ++i) delta.push_back(to_string(d.delta_coeff(i)));
    return j;
}

inline DivisorClass divisor_from_json(const nlohmann::json& j) {
    Genus g(j.at("g").get<int>());
    Rational lambda = parse_rational(j.at("lambda").get<std::string>());
    std::vector<Rational> delta;
    for (const auto& entry : j.at("delta")) delta.push_back(parse_rational(entry.get<std::string>()));
    return DivisorClass(g, std::move(lambda), std::move(delta));
}

}  // namespace mgcalc

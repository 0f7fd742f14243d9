#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "mgcalc/divisor.hpp"

namespace mgcalc {

// Rank of the limiting linear series: g for n = 1, (2n-1)(g-1) for n >= 2.
inline long rank_kn(Genus g, int n) {
    if (n < 1) throw std::domain_error("rank requires n >= 1, got " + std::to_string(n));
    if (n == 1) return g.value;
    return static_cast<long>(2 * n - 1) * (g.value - 1);
}

// A curve of total genus g split into r elliptic tails and the remaining
// subcurve D of genus gD = g - r, pointed at the r attachment nodes.
struct TailConfiguration {
    TailConfiguration(Genus g, int r) : g(g), r(r) {
        if (r < 0) throw std::domain_error("tail count must be >= 0");
        if (r > g.value) throw std::domain_error("tail count cannot exceed the genus");
        if (genus_d() == 0 && r < 3)
            throw std::domain_error("a rational core needs at least 3 attachment points");
    }
    Genus g;
    int r;
    int genus_d() const { return g.value - r; }
};

// Dimension of sections of the n-th twisted pluricanonical bundle on D
// dropped a times at the attachment points, by Riemann-Roch:
//   deg = 2n(gD - 1) + (2n - a) r,  h0 = deg - gD + 1  when deg > 2gD - 2.
// Outside that range higher cohomology is not excluded and the entry is
// flagged instead of guessed.
struct TwistedH0 {
    long degree;
    std::optional<long> dim;
    std::string flag;  // empty when the Riemann-Roch regime applies

    bool in_regime() const { return dim.has_value(); }
};

inline TwistedH0 h0_twisted(int g_d, int r, int n, int a) {
    if (g_d < 0) throw std::domain_error("genus of the core must be >= 0");
    if (r < 0) throw std::domain_error("tail count must be >= 0");
    if (n < 2) throw std::domain_error("twisted sections require n >= 2, got " + std::to_string(n));
    if (a < 2 || a > 2 * n - 1)
        throw std::domain_error("vanishing order a must satisfy 2 <= a <= 2n-1, got " + std::to_string(a));
    const long degree = 2L * n * (g_d - 1) + static_cast<long>(2 * n - a) * r;
    if (degree < 0) return {degree, std::nullopt, "negative degree"};
    if (degree <= 2L * g_d - 2) return {degree, std::nullopt, "higher cohomology not excluded"};
    return {degree, degree - g_d + 1, ""};
}

// Dimensions of V_n(-a * sum p_j) for a = 0..2n-2.  The a = 0 entry is the
// full rank k_n; order-1 vanishing is skipped (the tail sections do not
// vanish at their own attachment point while the core part vanishes to
// order >= 2), so the a = 1 entry equals the a = 2 one.
struct ProfileEntry {
    int a;
    long degree;
    std::optional<long> dim;
    std::string flag;
};

struct DimensionProfile {
    TailConfiguration cfg;
    int n;
    std::vector<ProfileEntry> entries;  // indexed by a = 0..2n-2
};

inline DimensionProfile dimension_profile(const TailConfiguration& cfg, int n) {
    if (n < 2) throw std::domain_error("profiles require n >= 2, got " + std::to_string(n));
    DimensionProfile profile{cfg, n, {}};
    profile.entries.push_back({0, 0, rank_kn(cfg.g, n), ""});
    const TwistedH0 at2 = h0_twisted(cfg.genus_d(), cfg.r, n, 2);
    profile.entries.push_back({1, at2.degree, at2.dim, at2.flag});
    for (int a = 2; a <= 2 * n - 2; ++a) {
        const TwistedH0 entry = h0_twisted(cfg.genus_d(), cfg.r, n, a);
        profile.entries.push_back({a, entry.degree, entry.dim, entry.flag});
    }
    return profile;
}

// k_n splits as the twisted sections at a = 2 plus one section per tail:
// h0(gD, r, n, 2) + r = k_n.  Must hold whenever the regime applies.
inline bool decomposition_identity(Genus g, int r, int n) {
    const TailConfiguration cfg(g, r);
    const TwistedH0 at2 = h0_twisted(cfg.genus_d(), r, n, 2);
    if (!at2.in_regime())
        throw std::domain_error("decomposition identity out of regime: " + at2.flag);
    return *at2.dim + r == rank_kn(g, n);
}

// First vanishing orders of the series at the attachment points: (0, 2, 3)
// once the profile certifies them.  For n = 2 the profile stops at a = 2,
// so only (0, 2) is certified; with no tails there are no attachment
// points and the head is empty.
inline std::vector<int> vanishing_sequence_head(const TailConfiguration& cfg, int n) {
    if (n < 2) throw std::domain_error("vanishing orders require n >= 2, got " + std::to_string(n));
    if (cfg.r == 0) return {};
    const DimensionProfile profile = dimension_profile(cfg, n);
    const auto dim = [&](int a) -> const std::optional<long>& { return profile.entries[static_cast<std::size_t>(a)].dim; };
    std::vector<int> head;
    if (!dim(1) || !dim(2)) return head;
    if (*profile.entries[0].dim > *dim(1)) head.push_back(0);
    if (*dim(1) == *dim(2)) head.push_back(2);  // order 1 is skipped
    if (n >= 3 && dim(3) && *dim(2) > *dim(3)) head.push_back(3);
    return head;
}

inline nlohmann::ordered_json profile_to_json(const DimensionProfile& profile) {
    nlohmann::ordered_json j;
    j["g"] = profile.cfg.g.value;
    j["r"] = profile.cfg.r;
    j["gD"] = profile.cfg.genus_d();
    j["n"] = profile.n;
    j["k_n"] = rank_kn(profile.cfg.g, profile.n);
    auto& entries = j["dims"] = nlohmann::ordered_json::array();
    for (const ProfileEntry& entry : profile.entries) {
        nlohmann::ordered_json ej;
        ej["a"] = entry.a;
        if (entry.a >= 2) ej["degree"] = entry.degree;
        if (entry.dim)
            ej["dim"] = *entry.dim;
        else
            ej["regime"] = entry.flag;
        entries.push_back(std::move(ej));
    }
    j["vanishing_head"] = vanishing_sequence_head(profile.cfg, profile.n);
    return j;
}

}  // namespace mgcalc

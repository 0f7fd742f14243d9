#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace mgcalc {

// One component of a nodal-cuspidal curve: geometric genus h, number of
// cusps c, number of marked points m.  Markings are zero everywhere in the
// unpointed setting; the field exists for the pointed data produced by
// tail removal.
struct GraphVertex {
    int id = 0;
    int h = 0;
    int c = 0;
    int m = 0;

    friend bool operator==(const GraphVertex& a, const GraphVertex& b) {
        return a.id == b.id && a.h == b.h && a.c == b.c && a.m == b.m;
    }
};

// Dual graph of a nodal-cuspidal curve: vertices are components, edges are
// nodes (loops allowed, multiplicities allowed).  Immutable after
// construction; transformations return new graphs.
class CurveGraph {
  public:
    CurveGraph(std::vector<GraphVertex> vertices, std::vector<std::pair<int, int>> edges)
        : verts_(std::move(vertices)), edges_(std::move(edges)) {
        if (verts_.empty()) throw std::invalid_argument("curve graph needs at least one vertex");
        std::sort(verts_.begin(), verts_.end(),
                  [](const GraphVertex& a, const GraphVertex& b) { return a.id < b.id; });
        for (std::size_t i = 0; i < verts_.size(); ++i) {
            const GraphVertex& v = verts_[i];
            if (v.id < 0) throw std::invalid_argument("vertex ids must be >= 0");
            if (i > 0 && verts_[i - 1].id == v.id)
                throw std::invalid_argument("duplicate vertex id " + std::to_string(v.id));
            if (v.h < 0 || v.c < 0 || v.m < 0)
                throw std::invalid_argument("vertex attributes must be >= 0 (vertex " +
                                            std::to_string(v.id) + ")");
        }
        for (auto& e : edges_) {
            index_of(e.first);
            index_of(e.second);
            if (e.first > e.second) std::swap(e.first, e.second);
        }
        std::sort(edges_.begin(), edges_.end());

        valence_.assign(verts_.size(), 0);
        endpoint_index_.reserve(edges_.size());
        for (const auto& e : edges_) {
            const std::size_t u = index_of(e.first), v = index_of(e.second);
            endpoint_index_.push_back({u, v});
            valence_[u] += u == v ? 2 : 1;
            if (u != v) valence_[v] += 1;
        }
        // Flat adjacency (loops omitted): neighbor_of_[neighbor_start_[v] ..
        // neighbor_start_[v+1]).
        neighbor_start_.assign(verts_.size() + 1, 0);
        for (const auto& [u, v] : endpoint_index_)
            if (u != v) ++neighbor_start_[u + 1], ++neighbor_start_[v + 1];
        for (std::size_t i = 1; i < neighbor_start_.size(); ++i)
            neighbor_start_[i] += neighbor_start_[i - 1];
        neighbor_of_.resize(neighbor_start_.back());
        std::vector<std::size_t> cursor(neighbor_start_.begin(), neighbor_start_.end() - 1);
        for (const auto& [u, v] : endpoint_index_)
            if (u != v) {
                neighbor_of_[cursor[u]++] = v;
                neighbor_of_[cursor[v]++] = u;
            }
    }

    const std::vector<GraphVertex>& vertices() const { return verts_; }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    std::size_t vertex_count() const { return verts_.size(); }
    std::size_t edge_count() const { return edges_.size(); }

    std::size_t index_of(int id) const {
        auto it = std::lower_bound(verts_.begin(), verts_.end(), id,
                                   [](const GraphVertex& v, int want) { return v.id < want; });
        if (it == verts_.end() || it->id != id)
            throw std::invalid_argument("no vertex with id " + std::to_string(id));
        return static_cast<std::size_t>(it - verts_.begin());
    }

    // Loops count twice.
    int valence(std::size_t index) const { return valence_[index]; }

    // Edge endpoints as vertex indices (loops as equal pairs).
    const std::vector<std::pair<std::size_t, std::size_t>>& endpoint_indices() const {
        return endpoint_index_;
    }

    friend bool operator==(const CurveGraph& a, const CurveGraph& b) {
        return a.verts_ == b.verts_ && a.edges_ == b.edges_;
    }
    friend bool operator!=(const CurveGraph& a, const CurveGraph& b) { return !(a == b); }

    bool is_connected() const {
        std::vector<char> seen(verts_.size(), 0);
        std::vector<std::size_t> stack{0};
        seen[0] = 1;
        std::size_t reached = 1;
        while (!stack.empty()) {
            const std::size_t at = stack.back();
            stack.pop_back();
            for (std::size_t s = neighbor_start_[at]; s < neighbor_start_[at + 1]; ++s) {
                const std::size_t next = neighbor_of_[s];
                if (!seen[next]) {
                    seen[next] = 1;
                    ++reached;
                    stack.push_back(next);
                }
            }
        }
        return reached == verts_.size();
    }

  private:
    std::vector<GraphVertex> verts_;
    std::vector<std::pair<int, int>> edges_;
    std::vector<int> valence_;
    std::vector<std::size_t> neighbor_start_;
    std::vector<std::size_t> neighbor_of_;
    std::vector<std::pair<std::size_t, std::size_t>> endpoint_index_;
};

// Connected proper subcurve, identified by its component ids, together
// with the number of edges joining it to the complement.
struct SubcurveSpec {
    std::vector<int> vertex_ids;
    int attaching_edges = 0;

    friend bool operator==(const SubcurveSpec& a, const SubcurveSpec& b) {
        return a.vertex_ids == b.vertex_ids && a.attaching_edges == b.attaching_edges;
    }
};

namespace graph_detail {

// Subcurve enumeration is exponential in the vertex count; this is a
// desk-scale tool and refuses anything above the cap.
inline constexpr std::size_t kMaxSubcurveVertices = 20;

inline void check_subcurve_cap(const CurveGraph& g, const char* what) {
    if (g.vertex_count() > kMaxSubcurveVertices)
        throw std::domain_error(std::string(what) + ": subcurve enumeration is capped at " +
                                std::to_string(kMaxSubcurveVertices) + " vertices, got " +
                                std::to_string(g.vertex_count()));
}

struct SubsetScan {
    std::vector<std::uint32_t> neighbor_mask;        // by vertex index, loops ignored
    std::vector<std::pair<std::size_t, std::size_t>> edge_index;  // endpoints as indices
    std::vector<int> weight;                          // h + c per vertex
};

inline SubsetScan prepare_scan(const CurveGraph& g) {
    SubsetScan scan;
    scan.neighbor_mask.assign(g.vertex_count(), 0);
    scan.weight.reserve(g.vertex_count());
    for (const GraphVertex& v : g.vertices()) scan.weight.push_back(v.h + v.c);
    scan.edge_index = g.endpoint_indices();
    for (const auto& [u, v] : scan.edge_index) {
        if (u != v) {
            scan.neighbor_mask[u] |= std::uint32_t(1) << v;
            scan.neighbor_mask[v] |= std::uint32_t(1) << u;
        }
    }
    return scan;
}

inline bool subset_connected(const SubsetScan& scan, std::uint32_t mask) {
    const std::uint32_t seed = mask & (~mask + 1);
    std::uint32_t reached = seed;
    while (true) {
        std::uint32_t next = reached;
        std::uint32_t frontier = reached;
        while (frontier) {
            const int v = std::countr_zero(frontier);
            frontier &= frontier - 1;
            next |= scan.neighbor_mask[static_cast<std::size_t>(v)] & mask;
        }
        if (next == reached) break;
        reached = next;
    }
    return reached == mask;
}

// Arithmetic genus and attaching-edge count of the subcurve on `mask`.
inline std::pair<int, int> subset_genus_attach(const SubsetScan& scan, std::uint32_t mask) {
    int internal = 0, attach = 0, weight = 0;
    for (const auto& [u, v] : scan.edge_index) {
        const bool in_u = mask >> u & 1, in_v = mask >> v & 1;
        if (in_u && in_v)
            ++internal;
        else if (in_u || in_v)
            ++attach;
    }
    std::uint32_t rest = mask;
    while (rest) {
        weight += scan.weight[static_cast<std::size_t>(std::countr_zero(rest))];
        rest &= rest - 1;
    }
    const int genus = weight + internal - std::popcount(mask) + 1;
    return {genus, attach};
}

}  // namespace graph_detail

// Arithmetic genus: sum of h + c over components plus the first Betti
// number of the graph.
inline int arithmetic_genus(const CurveGraph& g) {
    if (!g.is_connected()) throw std::domain_error("arithmetic genus needs a connected curve");
    int weight = 0;
    for (const GraphVertex& v : g.vertices()) weight += v.h + v.c;
    return weight + static_cast<int>(g.edge_count()) - static_cast<int>(g.vertex_count()) + 1;
}

struct StabilityReport {
    bool ok = true;
    std::vector<std::string> reasons;

    explicit operator bool() const { return ok; }
    void fail(std::string why) {
        ok = false;
        reasons.push_back(std::move(why));
    }
};

// Deligne-Mumford stability on the dual graph: nodal (no cusps), genus
// >= 3, genus-0 components with at least three special points, genus-1
// components with at least one.  Loops count twice toward the valence.
inline StabilityReport is_stable(const CurveGraph& g) {
    StabilityReport report;
    if (!g.is_connected()) {
        report.fail("graph is not connected");
        return report;
    }
    if (arithmetic_genus(g) < 3)
        report.fail("arithmetic genus " + std::to_string(arithmetic_genus(g)) + " is below 3");
    for (std::size_t i = 0; i < g.vertex_count(); ++i) {
        const GraphVertex& v = g.vertices()[i];
        if (v.c > 0) report.fail("vertex " + std::to_string(v.id) + " carries a cusp; stable curves are nodal");
        const int special = g.valence(i) + v.m;
        if (v.h == 0 && special < 3)
            report.fail("genus-0 vertex " + std::to_string(v.id) + " has only " +
                        std::to_string(special) + " special points (needs 3)");
        if (v.h == 1 && special < 1)
            report.fail("genus-1 vertex " + std::to_string(v.id) + " has no special points");
    }
    return report;
}

// Pseudostability: nodes and cusps only (built into the data model),
// every connected proper subcurve of genus 1 meets the rest in at least
// two points, and of genus 0 in at least three.  The genus-0 condition
// reduces to a per-component check: a genus-0 cusp-free component needs
// valence >= 3, since any genus-0 subcurve on k components with all
// valences >= 3 has at least k+2 > 3 attaching edges.  Both conditions
// quantify over proper subcurves, so a single-component curve passes
// vacuously.
inline StabilityReport is_pseudostable(const CurveGraph& g) {
    graph_detail::check_subcurve_cap(g, "is_pseudostable");
    StabilityReport report;
    if (!g.is_connected()) {
        report.fail("graph is not connected");
        return report;
    }
    if (g.vertex_count() == 1) return report;
    for (std::size_t i = 0; i < g.vertex_count(); ++i) {
        const GraphVertex& v = g.vertices()[i];
        if (v.h == 0 && v.c == 0 && g.valence(i) < 3)
            report.fail("genus-0 vertex " + std::to_string(v.id) + " has valence " +
                        std::to_string(g.valence(i)) + " < 3 (canonical sheaf not ample)");
    }
    const auto scan = graph_detail::prepare_scan(g);
    const std::uint32_t full = (std::uint32_t(1) << g.vertex_count()) - 1;
    for (std::uint32_t mask = 1; mask < full; ++mask) {
        if (!graph_detail::subset_connected(scan, mask)) continue;
        const auto [genus, attach] = graph_detail::subset_genus_attach(scan, mask);
        if (genus == 1 && attach < 2) {
            std::ostringstream ids;
            for (std::uint32_t rest = mask; rest;) {
                const int v = std::countr_zero(rest);
                rest &= rest - 1;
                ids << ' ' << g.vertices()[static_cast<std::size_t>(v)].id;
            }
            report.fail("genus-1 subcurve {" + ids.str() + " } meets the rest in " +
                        std::to_string(attach) + " point(s), needs 2");
        }
    }
    return report;
}

// Domain of the tail operations: stable curves, widened to semistable
// ones (genus-0 components may have just two special points) so that
// degenerate tails such as rings of rationals are accepted.
inline StabilityReport is_tail_operable(const CurveGraph& g) {
    StabilityReport report;
    if (!g.is_connected()) {
        report.fail("graph is not connected");
        return report;
    }
    if (arithmetic_genus(g) < 3)
        report.fail("arithmetic genus " + std::to_string(arithmetic_genus(g)) + " is below 3");
    for (std::size_t i = 0; i < g.vertex_count(); ++i) {
        const GraphVertex& v = g.vertices()[i];
        if (v.c > 0) report.fail("vertex " + std::to_string(v.id) + " carries a cusp; the curve must be nodal");
        const int special = g.valence(i) + v.m;
        if (v.h == 0 && special < 2)
            report.fail("genus-0 vertex " + std::to_string(v.id) + " has only " +
                        std::to_string(special) + " special points (needs 2 for semistability)");
        if (v.h == 1 && special < 1)
            report.fail("genus-1 vertex " + std::to_string(v.id) + " has no special points");
    }
    return report;
}

namespace graph_detail {

// Maximal genus-1 single-attachment subcurves as vertex masks, sorted.
// Assumes the caller validated the graph.
inline std::vector<std::uint32_t> maximal_tail_masks(const CurveGraph& g) {
    const SubsetScan scan = prepare_scan(g);
    const std::uint32_t full = (std::uint32_t(1) << g.vertex_count()) - 1;
    std::vector<std::uint32_t> candidates;
    for (std::uint32_t mask = 1; mask < full; ++mask) {
        if (!subset_connected(scan, mask)) continue;
        const auto [genus, attach] = subset_genus_attach(scan, mask);
        if (genus == 1 && attach == 1) candidates.push_back(mask);
    }
    std::vector<std::uint32_t> maximal;
    for (const std::uint32_t mask : candidates) {
        bool contained = false;
        for (const std::uint32_t other : candidates)
            if (other != mask && (mask & other) == mask) {
                contained = true;
                break;
            }
        if (!contained) maximal.push_back(mask);
    }
    for (std::size_t i = 0; i < maximal.size(); ++i)
        for (std::size_t j = i + 1; j < maximal.size(); ++j)
            if (maximal[i] & maximal[j])
                throw std::logic_error("maximal elliptic tails overlap; this contradicts stability");
    return maximal;
}

}  // namespace graph_detail

// Maximal connected proper subcurves of arithmetic genus 1 attached to
// the rest by a single node.  On a (semi)stable curve these are pairwise
// disjoint; a violation would be an internal inconsistency.
inline std::vector<SubcurveSpec> find_elliptic_tails(const CurveGraph& g) {
    graph_detail::check_subcurve_cap(g, "find_elliptic_tails");
    if (const auto report = is_tail_operable(g); !report.ok)
        throw std::domain_error("find_elliptic_tails needs a semistable curve: " + report.reasons.front());

    std::vector<SubcurveSpec> tails;
    for (const std::uint32_t mask : graph_detail::maximal_tail_masks(g)) {
        SubcurveSpec spec;
        spec.attaching_edges = 1;
        for (std::uint32_t rest = mask; rest;) {
            const int v = std::countr_zero(rest);
            rest &= rest - 1;
            spec.vertex_ids.push_back(g.vertices()[static_cast<std::size_t>(v)].id);
        }
        tails.push_back(std::move(spec));
    }
    std::sort(tails.begin(), tails.end(),
              [](const SubcurveSpec& a, const SubcurveSpec& b) { return a.vertex_ids < b.vertex_ids; });
    return tails;
}

// Replace each elliptic tail by a cusp on the component it was attached
// to.  Genus is preserved, the image is pseudostable, and applying the
// transform twice equals applying it once.  Pseudostable curves carry no
// elliptic tails (any genus-1 subcurve meets the rest at least twice), so
// the transform fixes them; this makes the idempotence identity direct.
inline CurveGraph t_transform(const CurveGraph& g) {
    graph_detail::check_subcurve_cap(g, "t_transform");
    if (!is_tail_operable(g).ok) {
        const auto pseudo = is_pseudostable(g);
        if (pseudo.ok && g.is_connected() && arithmetic_genus(g) >= 3) return g;
        throw std::domain_error("t_transform needs a semistable curve (or an already cusped "
                                "pseudostable one): " +
                                (pseudo.ok ? std::string("arithmetic genus below 3")
                                           : pseudo.reasons.front()));
    }
    const std::vector<std::uint32_t> tails = graph_detail::maximal_tail_masks(g);

    std::uint32_t in_tail = 0;
    std::vector<int> extra_cusps(g.vertex_count(), 0);
    for (const std::uint32_t tail : tails) {
        in_tail |= tail;
        for (std::uint32_t rest = tail; rest;) {
            const std::size_t v = static_cast<std::size_t>(std::countr_zero(rest));
            rest &= rest - 1;
            if (g.vertices()[v].m > 0)
                throw std::domain_error("elliptic tail vertex " + std::to_string(g.vertices()[v].id) +
                                        " carries markings; tails must be unmarked");
        }
        // The unique attaching edge determines where the cusp appears.
        for (const auto& [u, v] : g.endpoint_indices()) {
            const bool tu = tail >> u & 1, tv = tail >> v & 1;
            if (tu != tv) ++extra_cusps[tu ? v : u];
        }
    }

    std::vector<GraphVertex> vertices;
    for (std::size_t i = 0; i < g.vertex_count(); ++i) {
        if (in_tail >> i & 1) continue;
        GraphVertex v = g.vertices()[i];
        v.c += extra_cusps[i];
        vertices.push_back(v);
    }
    std::vector<std::pair<int, int>> edges;
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        const auto& [u, v] = g.endpoint_indices()[e];
        if (!(in_tail >> u & 1) && !(in_tail >> v & 1)) edges.push_back(g.edges()[e]);
    }
    return CurveGraph(std::move(vertices), std::move(edges));
}

// Exact isomorphism of attribute-labelled multigraphs: the bijection must
// match h, c, m and every edge multiplicity, loops included.  Brute force
// over attribute-compatible assignments with degree pruning; no canonical
// form is trusted without the final bijection check.
inline bool graphs_isomorphic(const CurveGraph& a, const CurveGraph& b) {
    if (a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count()) return false;
    const std::size_t n = a.vertex_count();

    const auto adjacency = [](const CurveGraph& g) {
        std::vector<std::vector<int>> adj(g.vertex_count(), std::vector<int>(g.vertex_count(), 0));
        for (const auto& [u, v] : g.endpoint_indices()) {
            ++adj[u][v];
            if (u != v) ++adj[v][u];
        }
        return adj;
    };
    const auto adj_a = adjacency(a), adj_b = adjacency(b);

    // Signature: attributes, valence, loop count.  Must agree as multisets.
    const auto signature = [&](const CurveGraph& g, const std::vector<std::vector<int>>& adj,
                               std::size_t i) {
        const GraphVertex& v = g.vertices()[i];
        int valence = adj[i][i] * 2;
        for (std::size_t j = 0; j < g.vertex_count(); ++j)
            if (j != i) valence += adj[i][j];
        return std::array<int, 5>{v.h, v.c, v.m, valence, adj[i][i]};
    };
    std::vector<std::array<int, 5>> sig_a(n), sig_b(n);
    for (std::size_t i = 0; i < n; ++i) sig_a[i] = signature(a, adj_a, i), sig_b[i] = signature(b, adj_b, i);
    {
        auto sorted_a = sig_a, sorted_b = sig_b;
        std::sort(sorted_a.begin(), sorted_a.end());
        std::sort(sorted_b.begin(), sorted_b.end());
        if (sorted_a != sorted_b) return false;
    }

    std::vector<int> map_ab(n, -1);
    std::vector<char> used(n, 0);
    const auto extend = [&](const auto& self, std::size_t at) -> bool {
        if (at == n) return true;
        for (std::size_t cand = 0; cand < n; ++cand) {
            if (used[cand] || sig_a[at] != sig_b[cand]) continue;
            bool consistent = true;
            for (std::size_t prev = 0; prev < at && consistent; ++prev)
                consistent = adj_a[at][prev] == adj_b[cand][static_cast<std::size_t>(map_ab[prev])];
            if (!consistent) continue;
            map_ab[at] = static_cast<int>(cand);
            used[cand] = 1;
            if (self(self, at + 1)) return true;
            used[cand] = 0;
            map_ab[at] = -1;
        }
        return false;
    };
    return extend(extend, 0);
}

// Two stable curves have the same image under the tail-to-cusp transform
// exactly when the transforms are isomorphic as labelled multigraphs.
inline bool t_equivalent(const CurveGraph& g1, const CurveGraph& g2) {
    for (const CurveGraph* g : {&g1, &g2})
        if (const auto report = is_tail_operable(*g); !report.ok)
            throw std::domain_error("t_equivalent needs semistable curves: " + report.reasons.front());
    if (arithmetic_genus(g1) != arithmetic_genus(g2))
        throw std::domain_error("t_equivalent needs curves of the same arithmetic genus");
    return graphs_isomorphic(t_transform(g1), t_transform(g2));
}

inline nlohmann::ordered_json graph_to_json(const CurveGraph& g) {
    nlohmann::ordered_json j;
    auto& vertices = j["vertices"] = nlohmann::ordered_json::array();
    for (const GraphVertex& v : g.vertices()) {
        nlohmann::ordered_json vj;
        vj["id"] = v.id;
        vj["h"] = v.h;
        vj["c"] = v.c;
        vj["m"] = v.m;
        vertices.push_back(std::move(vj));
    }
    auto& edges = j["edges"] = nlohmann::ordered_json::array();
    for (const auto& e : g.edges()) edges.push_back({e.first, e.second});
    return j;
}

inline CurveGraph graph_from_json(const nlohmann::json& j) {
    std::vector<GraphVertex> vertices;
    for (const auto& vj : j.at("vertices")) {
        GraphVertex v;
        v.id = vj.at("id").get<int>();
        v.h = vj.at("h").get<int>();
        v.c = vj.value("c", 0);
        v.m = vj.value("m", 0);
        vertices.push_back(v);
    }
    std::vector<std::pair<int, int>> edges;
    for (const auto& ej : j.at("edges")) {
        if (!ej.is_array() || ej.size() != 2)
            throw std::invalid_argument("edges must be [u, v] pairs");
        edges.push_back({ej[0].get<int>(), ej[1].get<int>()});
    }
    return CurveGraph(std::move(vertices), std::move(edges));
}

}  // namespace mgcalc

#include "cdend/factorization.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>

namespace cdend {

namespace {

[[noreturn]] void invalid(const std::string& kind, const std::string& msg, const std::string& witness = {}) {
    throw ValidationError(kind, msg, witness.empty() ? msg : witness);
}

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

} // namespace

bool in_xi_plus(const Morphism& m) {
    Mask seen = 0;
    for (int x : m.phi0) {
        if (has_bit(seen, x)) return false;
        seen |= bit(x);
    }
    return true;
}

bool in_xi_minus(const Morphism& m) {
    Mask hit = 0;
    for (int x : m.phi0) hit |= bit(x);
    if (hit != m.cod->all_edges()) return false;
    Mask covered = 0;
    for (const auto& g : m.phi1) covered |= g.verts;
    return covered == m.cod->all_vertices();
}

// ---- Reedy factorization -------------------------------------------------

Factorization reedy_factor(const Morphism& m) {
    const Tree& R = *m.dom;
    const int E = R.num_edges();
    UnionFind uf(E);
    std::vector<char> collapsed(R.num_vertices(), 0);
    for (int v = 0; v < R.num_vertices(); ++v)
        if (m.phi1[v].is_edge()) {
            collapsed[v] = 1;
            uf.unite(R.nbhd[v][0], R.nbhd[v][1]);
        }
    std::map<int, int> class_index;
    std::vector<std::vector<int>> members;
    for (int e = 0; e < E; ++e) {
        int r = uf.find(e);
        if (!class_index.count(r)) {
            class_index[r] = static_cast<int>(members.size());
            members.emplace_back();
        }
        members[class_index[r]].push_back(e);
    }
    std::vector<int> cls(E);
    for (int e = 0; e < E; ++e) cls[e] = class_index[uf.find(e)];

    std::vector<std::string> eids, vids;
    for (const auto& mem : members) {
        std::string id;
        for (std::size_t k = 0; k < mem.size(); ++k) id += (k ? "~" : "") + R.edge_ids[mem[k]];
        eids.push_back(id);
    }
    std::vector<std::vector<int>> nb;
    std::vector<int> mid_vertex(R.num_vertices(), -1);
    for (int v = 0; v < R.num_vertices(); ++v) {
        if (collapsed[v]) continue;
        mid_vertex[v] = static_cast<int>(vids.size());
        vids.push_back(R.vertex_ids[v]);
        std::vector<int> l;
        for (int e : R.nbhd[v]) l.push_back(cls[e]);
        nb.push_back(std::move(l));
    }
    std::vector<int> order;
    for (int e : R.leg_order)
        if (std::find(order.begin(), order.end(), cls[e]) == order.end()) order.push_back(cls[e]);
    if (vids.empty()) order.resize(1);
    TreePtr mid = share(make_tree(std::move(eids), std::move(vids), std::move(nb), std::move(order)));

    Morphism first{m.dom, mid, cls, {}};
    for (int v = 0; v < R.num_vertices(); ++v)
        first.phi1.push_back(collapsed[v] ? edge_subgraph(cls[R.nbhd[v][0]]) : star_subgraph(*mid, mid_vertex[v]));
    Morphism second{mid, m.cod, std::vector<int>(members.size()), {}};
    for (std::size_t c = 0; c < members.size(); ++c) second.phi0[c] = m.phi0[members[c][0]];
    for (int v = 0; v < R.num_vertices(); ++v)
        if (!collapsed[v]) second.phi1.push_back(m.phi1[v]);
    return {mid, std::move(first), std::move(second), FactorKind::Reedy};
}

// ---- active / inert ------------------------------------------------------

bool is_active(const Morphism& m) { return image(m) == whole_subgraph(*m.cod); }

bool is_inert(const Morphism& m) {
    if (!in_xi_plus(m)) return false;
    Mask hit = 0;
    for (int x : m.phi0) hit |= bit(x);
    const Tree& S = *m.cod;
    for (int w : mask_members(image(m).verts))
        for (int e : S.nbhd[w])
            if (!has_bit(hit, e)) return false;
    return true;
}

SubGraph to_subtree(const SubTree& st, const SubGraph& g) {
    SubGraph out;
    for (int e : mask_members(g.edges)) out.edges |= bit(st.host_to_edge[e]);
    for (int v : mask_members(g.verts)) out.verts |= bit(st.host_to_vertex[v]);
    return out;
}

SubGraph to_host(const SubTree& st, const SubGraph& g) {
    SubGraph out;
    for (int e : mask_members(g.edges)) out.edges |= bit(st.edge_to_host[e]);
    for (int v : mask_members(g.verts)) out.verts |= bit(st.vertex_to_host[v]);
    return out;
}

Factorization active_inert_factor(const Morphism& m) {
    SubGraph img = image(m);
    std::vector<int> order;
    if (!img.is_edge())
        for (int r : m.dom->leg_order)
            if (std::find(order.begin(), order.end(), m.phi0[r]) == order.end()) order.push_back(m.phi0[r]);
    SubTree st = subgraph_tree(*m.cod, img, order);
    TreePtr mid = share(st.tree);
    Morphism first{m.dom, mid, {}, {}};
    for (int x : m.phi0) first.phi0.push_back(st.host_to_edge[x]);
    for (const auto& g : m.phi1) first.phi1.push_back(to_subtree(st, g));
    Morphism second{mid, m.cod, st.edge_to_host, {}};
    for (int v : st.vertex_to_host) second.phi1.push_back(star_subgraph(*m.cod, v));
    return {mid, std::move(first), std::move(second), FactorKind::ActiveInert};
}

// ---- comparisons ---------------------------------------------------------

std::optional<Morphism> iso_over(const Morphism& d1, const Morphism& d2) {
    const Tree& A = *d1.dom;
    const Tree& B = *d2.dom;
    if (A.num_edges() != B.num_edges() || A.num_vertices() != B.num_vertices()) return std::nullopt;
    if (!in_xi_plus(d2)) return std::nullopt;
    std::map<int, int> back;
    for (int e = 0; e < B.num_edges(); ++e) back[d2.phi0[e]] = e;
    Morphism theta{d1.dom, d2.dom, {}, {}};
    for (int x : d1.phi0) {
        auto it = back.find(x);
        if (it == back.end()) return std::nullopt;
        theta.phi0.push_back(it->second);
    }
    for (int v = 0; v < A.num_vertices(); ++v) {
        int found = -1;
        for (int w = 0; w < B.num_vertices(); ++w)
            if (d2.phi1[w] == d1.phi1[v]) found = w;
        if (found < 0) return std::nullopt;
        theta.phi1.push_back(star_subgraph(B, found));
    }
    if (!is_morphism(theta) || !is_isomorphism(theta)) return std::nullopt;
    if (!same_maps(compose(d2, theta), d1)) return std::nullopt;
    return theta;
}

std::optional<Morphism> compare_factorizations(const Factorization& a, const Factorization& b) {
    auto theta = iso_over(a.second, b.second);
    if (!theta) return std::nullopt;
    if (!same_maps(compose(*theta, a.first), b.first)) return std::nullopt;
    return theta;
}

// ---- lifting -------------------------------------------------------------

Morphism lift_square(const Morphism& phi, const Morphism& psi, const Morphism& alpha, const Morphism& beta) {
    if (!is_active(phi)) invalid("NotActive", "left map of the square is not active", describe(phi));
    if (!is_inert(psi)) invalid("NotInert", "right map of the square is not inert", describe(psi));
    if (!same_maps(compose(psi, alpha), compose(beta, phi)))
        invalid("SquareDoesNotCommute", "psi.alpha differs from beta.phi");
    const Tree& R = *phi.dom;
    const Tree& S = *phi.cod;
    const Tree& A = *psi.dom;
    Morphism gamma{phi.cod, psi.dom, std::vector<int>(S.num_edges(), -1), {}};
    if (S.is_eta()) {
        gamma.phi0[0] = alpha.phi0[R.leg_order[0]];
    } else {
        for (int r : R.leg_order) gamma.phi0[phi.phi0[r]] = alpha.phi0[r];
        std::vector<int> psi_inv(psi.cod->num_edges(), -1);
        for (int a = 0; a < A.num_edges(); ++a) psi_inv[psi.phi0[a]] = a;
        std::vector<SubGraph> g(S.num_vertices());
        for (int w = 0; w < S.num_vertices(); ++w) {
            const SubGraph& b = beta.phi1[w];
            if (b.is_edge()) {
                g[w] = edge_subgraph(psi_inv[b.single_edge()]);
                continue;
            }
            Mask verts = 0;
            for (int a = 0; a < A.num_vertices(); ++a)
                if (psi.phi1[a].verts & b.verts) verts |= bit(a);
            g[w] = vertex_span(A, verts);
        }
        gamma.phi1 = g;
        for (int s = 0; s < S.num_edges(); ++s) {
            if (S.is_leg(s)) continue;
            auto meet = subgraph_intersection(A, g[S.ends(s)[0]], g[S.ends(s)[1]]);
            if (!meet || popcount(meet->edges) != 1)
                throw Error("InvariantViolation", "transported subgraphs do not meet in one edge");
            gamma.phi0[s] = std::countr_zero(meet->edges);
        }
    }
    validate_morphism(gamma);
    if (!same_maps(compose(gamma, phi), alpha) || !same_maps(compose(psi, gamma), beta))
        throw Error("InvariantViolation", "constructed lift does not fill the square");
    return gamma;
}

// ---- cofaces and codegeneracies ------------------------------------------

const char* coface_kind_name(CofaceKind k) {
    switch (k) {
    case CofaceKind::Inner: return "inner";
    case CofaceKind::Outer: return "outer";
    case CofaceKind::LegInclusion: return "leg-inclusion";
    }
    return "?";
}

namespace {

Morphism inclusion(const SubTree& st, const TreePtr& face, const TreePtr& host) {
    Morphism m{face, host, st.edge_to_host, {}};
    for (int v : st.vertex_to_host) m.phi1.push_back(star_subgraph(*host, v));
    return m;
}

} // namespace

Coface inner_coface(const TreePtr& s, int e) {
    const Tree& S = *s;
    if (e < 0 || e >= S.num_edges() || S.is_leg(e)) invalid("NotInner", "inner cofaces contract an interior edge");
    int u = S.ends(e)[0], w = S.ends(e)[1];
    std::vector<int> new_edge(S.num_edges(), -1), new_vertex(S.num_vertices(), -1);
    std::vector<std::string> eids, vids;
    for (int x = 0; x < S.num_edges(); ++x)
        if (x != e) {
            new_edge[x] = static_cast<int>(eids.size());
            eids.push_back(S.edge_ids[x]);
        }
    int merged = -1;
    for (int v = 0; v < S.num_vertices(); ++v) {
        if (v == w) continue;
        new_vertex[v] = static_cast<int>(vids.size());
        if (v == u) merged = new_vertex[v];
        vids.push_back(v == u ? S.vertex_ids[u] + "~" + S.vertex_ids[w] : S.vertex_ids[v]);
    }
    new_vertex[w] = merged;
    std::vector<std::vector<int>> nb(vids.size());
    for (int v = 0; v < S.num_vertices(); ++v) {
        if (v == w) continue;
        auto& l = nb[new_vertex[v]];
        for (int x : S.nbhd[v]) {
            if (v == u && x == e) {
                const auto& wl = S.nbhd[w];
                int p = S.position_in_nbhd(w, e), n = static_cast<int>(wl.size());
                for (int k = 1; k < n; ++k) l.push_back(new_edge[wl[(p + k) % n]]);
            } else {
                l.push_back(new_edge[x]);
            }
        }
    }
    std::vector<int> order;
    for (int x : S.leg_order) order.push_back(new_edge[x]);
    TreePtr face = share(make_tree(std::move(eids), std::move(vids), std::move(nb), std::move(order)));
    Morphism m{face, s, {}, {}};
    for (int x = 0; x < S.num_edges(); ++x)
        if (x != e) m.phi0.push_back(x);
    for (int v = 0; v < face->num_vertices(); ++v) {
        int host = -1;
        for (int y = 0; y < S.num_vertices(); ++y)
            if (y != w && new_vertex[y] == v) host = y;
        m.phi1.push_back(host == u ? vertex_span(S, bit(u) | bit(w)) : star_subgraph(S, host));
    }
    return {CofaceKind::Inner, S.edge_ids[e], std::move(m)};
}

std::vector<Coface> cofaces(const TreePtr& s) {
    const Tree& S = *s;
    std::vector<Coface> out;
    if (S.is_eta()) return out;
    if (S.num_vertices() == 1) {
        for (int i = 0; i < static_cast<int>(S.leg_order.size()); ++i) {
            int leg = S.leg_order[i];
            TreePtr face = share(eta(S.edge_ids[leg]));
            out.push_back({CofaceKind::LegInclusion, std::to_string(i), Morphism{face, s, {leg}, {}}});
        }
        return out;
    }
    for (int v = 0; v < S.num_vertices(); ++v) {
        int interior = -1, count = 0;
        for (int e : S.nbhd[v])
            if (!S.is_leg(e)) {
                interior = e;
                ++count;
            }
        if (count != 1) continue;
        SubGraph g = vertex_span(S, S.all_vertices() & ~bit(v));
        std::vector<int> order;
        for (int l : S.leg_order)
            if (has_bit(g.edges, l)) order.push_back(l);
        order.push_back(interior);
        SubTree st = subgraph_tree(S, g, order);
        TreePtr face = share(st.tree);
        out.push_back({CofaceKind::Outer, S.vertex_ids[v], inclusion(st, face, s)});
    }
    for (int e = 0; e < S.num_edges(); ++e)
        if (!S.is_leg(e)) out.push_back(inner_coface(s, e));
    return out;
}

std::vector<Morphism> codegeneracies(const TreePtr& s) {
    const Tree& S = *s;
    std::vector<Morphism> out;
    for (int v = 0; v < S.num_vertices(); ++v) {
        if (S.valence(v) != 2) continue;
        int a = S.nbhd[v][0], b = S.nbhd[v][1];
        std::vector<int> new_edge(S.num_edges(), -1), new_vertex(S.num_vertices(), -1);
        std::vector<std::string> eids, vids;
        for (int x = 0; x < S.num_edges(); ++x)
            if (x != b) {
                new_edge[x] = static_cast<int>(eids.size());
                eids.push_back(S.edge_ids[x]);
            }
        new_edge[b] = new_edge[a];
        std::vector<std::vector<int>> nb;
        for (int y = 0; y < S.num_vertices(); ++y) {
            if (y == v) continue;
            new_vertex[y] = static_cast<int>(vids.size());
            vids.push_back(S.vertex_ids[y]);
            std::vector<int> l;
            for (int x : S.nbhd[y]) l.push_back(new_edge[x]);
            nb.push_back(std::move(l));
        }
        std::vector<int> order;
        for (int x : S.leg_order)
            if (std::find(order.begin(), order.end(), new_edge[x]) == order.end()) order.push_back(new_edge[x]);
        if (vids.empty()) order.resize(1);
        TreePtr target = share(make_tree(std::move(eids), std::move(vids), std::move(nb), std::move(order)));
        Morphism m{s, target, {}, {}};
        for (int x = 0; x < S.num_edges(); ++x) m.phi0.push_back(new_edge[x]);
        for (int y = 0; y < S.num_vertices(); ++y)
            m.phi1.push_back(y == v ? edge_subgraph(new_edge[a]) : star_subgraph(*target, new_vertex[y]));
        out.push_back(std::move(m));
    }
    return out;
}

} // namespace cdend

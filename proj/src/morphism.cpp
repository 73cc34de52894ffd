#include "cdend/morphism.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <set>
#include <sstream>

namespace cdend {

namespace {

[[noreturn]] void invalid(const std::string& kind, const std::string& msg, const std::string& witness = {}) {
    throw ValidationError(kind, msg, witness.empty() ? msg : witness);
}

std::string subgraph_text(const Tree& t, const SubGraph& g) {
    std::string s = "{";
    bool first = true;
    for (int v : mask_members(g.verts)) {
        s += (first ? "" : ",") + t.vertex_ids[v];
        first = false;
    }
    s += "|";
    first = true;
    for (int e : mask_members(g.edges)) {
        s += (first ? "" : ",") + t.edge_ids[e];
        first = false;
    }
    return s + "}";
}

bool same_tree(const TreePtr& a, const TreePtr& b) { return a == b || (a && b && *a == *b); }

} // namespace

bool same_maps(const Morphism& a, const Morphism& b) { return a.phi0 == b.phi0 && a.phi1 == b.phi1; }

bool maps_less(const Morphism& a, const Morphism& b) {
    if (a.phi0 != b.phi0) return a.phi0 < b.phi0;
    return a.phi1 < b.phi1;
}

void sort_canonical(std::vector<Morphism>& homs) {
    std::sort(homs.begin(), homs.end(), maps_less);
    homs.erase(std::unique(homs.begin(), homs.end(), same_maps), homs.end());
}

void validate_morphism(const Morphism& m) {
    if (!m.dom || !m.cod) invalid("BadMap", "morphism without domain or codomain");
    const Tree& R = *m.dom;
    const Tree& S = *m.cod;
    if (static_cast<int>(m.phi0.size()) != R.num_edges()) invalid("BadMap", "phi0 is not total on edges");
    if (static_cast<int>(m.phi1.size()) != R.num_vertices()) invalid("BadMap", "phi1 is not total on vertices");
    for (int e = 0; e < R.num_edges(); ++e)
        if (m.phi0[e] < 0 || m.phi0[e] >= S.num_edges())
            invalid("BadMap", "phi0 sends edge '" + R.edge_ids[e] + "' outside the codomain");
    for (int v = 0; v < R.num_vertices(); ++v)
        if (!is_valid_subgraph(S, m.phi1[v]))
            invalid("BadMap", "phi1 of vertex '" + R.vertex_ids[v] + "' is not a subgraph");
    for (int v = 0; v < R.num_vertices(); ++v) {
        if (R.valence(v) == 2) continue;
        Mask seen = 0;
        for (int e : R.nbhd[v]) {
            int x = m.phi0[e];
            if (has_bit(seen, x))
                invalid("NonInjectiveAtVertex", "phi0 is not injective on nbhd(" + R.vertex_ids[v] + ")",
                        R.vertex_ids[v] + " -> " + S.edge_ids[x]);
            seen |= bit(x);
        }
    }
    for (int v = 0; v < R.num_vertices(); ++v) {
        std::vector<int> img;
        for (int e : R.nbhd[v]) img.push_back(m.phi0[e]);
        std::sort(img.begin(), img.end());
        if (img != boundary(S, m.phi1[v]))
            invalid("LegMismatch", "phi0(nbhd(" + R.vertex_ids[v] + ")) differs from the legs of its subgraph",
                    R.vertex_ids[v] + " -> " + subgraph_text(S, m.phi1[v]));
    }
    for (int v = 0; v < R.num_vertices(); ++v)
        for (int w = v + 1; w < R.num_vertices(); ++w)
            if (m.phi1[v].verts & m.phi1[w].verts)
                invalid("VertexOverlap", "subgraphs of two vertices share a vertex",
                        R.vertex_ids[v] + "," + R.vertex_ids[w]);
}

bool is_morphism(const Morphism& m) {
    try {
        validate_morphism(m);
        return true;
    } catch (const ValidationError&) {
        return false;
    }
}

Morphism identity(const TreePtr& t) {
    Morphism m{t, t, {}, {}};
    for (int e = 0; e < t->num_edges(); ++e) m.phi0.push_back(e);
    for (int v = 0; v < t->num_vertices(); ++v) m.phi1.push_back(star_subgraph(*t, v));
    return m;
}

SubGraph image_of(const Morphism& m, const SubGraph& g) {
    if (g.is_edge()) return edge_subgraph(m.phi0[g.single_edge()]);
    Mask verts = 0;
    for (int v : mask_members(g.verts)) verts |= m.phi1[v].verts;
    if (verts == 0) return m.phi1[std::countr_zero(g.verts)];
    return vertex_span(*m.cod, verts);
}

SubGraph image(const Morphism& m) {
    if (m.dom->is_eta()) return edge_subgraph(m.phi0[0]);
    return image_of(m, whole_subgraph(*m.dom));
}

Morphism compose(const Morphism& psi, const Morphism& phi) {
    if (!same_tree(phi.cod, psi.dom)) invalid("DomainMismatch", "codomain and domain differ in composition");
    Morphism out{phi.dom, psi.cod, {}, {}};
    for (int x : phi.phi0) out.phi0.push_back(psi.phi0[x]);
    for (const auto& g : phi.phi1) out.phi1.push_back(image_of(psi, g));
    return out;
}

bool is_isomorphism(const Morphism& m) {
    const Tree& R = *m.dom;
    const Tree& S = *m.cod;
    if (R.num_edges() != S.num_edges() || R.num_vertices() != S.num_vertices()) return false;
    Mask hit = 0;
    for (int x : m.phi0) hit |= bit(x);
    if (hit != S.all_edges()) return false;
    Mask vhit = 0;
    for (int v = 0; v < R.num_vertices(); ++v) {
        const SubGraph& g = m.phi1[v];
        if (popcount(g.verts) != 1) return false;
        if (g != star_subgraph(S, std::countr_zero(g.verts))) return false;
        vhit |= g.verts;
    }
    return vhit == S.all_vertices();
}

bool is_constant(const Morphism& m) { return image(m).is_edge(); }

Morphism inverse(const Morphism& iso) {
    if (!is_isomorphism(iso)) invalid("BadMap", "inverse of a non-isomorphism");
    Morphism out{iso.cod, iso.dom, std::vector<int>(iso.phi0.size()), std::vector<SubGraph>(iso.phi1.size())};
    for (int e = 0; e < static_cast<int>(iso.phi0.size()); ++e) out.phi0[iso.phi0[e]] = e;
    for (int v = 0; v < static_cast<int>(iso.phi1.size()); ++v)
        out.phi1[std::countr_zero(iso.phi1[v].verts)] = star_subgraph(*iso.dom, v);
    return out;
}

// ---- complete morphisms --------------------------------------------------

CompleteMorphism to_complete(const Morphism& m) {
    CompleteMorphism a{m.dom, m.cod, m.phi0, {}};
    for (const auto& g : all_subgraphs(*m.dom)) a.alpha1.emplace(g, image_of(m, g));
    return a;
}

Morphism from_complete(const CompleteMorphism& a) {
    Morphism m{a.dom, a.cod, a.alpha0, {}};
    for (int v = 0; v < a.dom->num_vertices(); ++v) {
        auto it = a.alpha1.find(star_subgraph(*a.dom, v));
        if (it == a.alpha1.end()) invalid("BadMap", "alpha1 is not defined on a star");
        m.phi1.push_back(it->second);
    }
    return m;
}

void validate_complete(const CompleteMorphism& a) {
    const Tree& R = *a.dom;
    const Tree& S = *a.cod;
    if (static_cast<int>(a.alpha0.size()) != R.num_edges()) invalid("BadMap", "alpha0 is not total");
    for (int x : a.alpha0)
        if (x < 0 || x >= S.num_edges()) invalid("BadMap", "alpha0 leaves the codomain");
    auto subs = all_subgraphs(R);
    if (a.alpha1.size() != subs.size()) invalid("BadMap", "alpha1 is not total on subgraphs");
    auto at = [&](const SubGraph& g) -> const SubGraph& {
        auto it = a.alpha1.find(g);
        if (it == a.alpha1.end()) invalid("BadMap", "alpha1 is not total on subgraphs");
        return it->second;
    };
    for (const auto& g : subs) {
        const SubGraph& h = at(g);
        if (!is_valid_subgraph(S, h)) invalid("BadMap", "alpha1 value is not a subgraph");
        std::vector<int> img;
        for (int e : boundary(R, g)) img.push_back(a.alpha0[e]);
        std::sort(img.begin(), img.end());
        if (img != boundary(S, h))
            invalid("BoundaryMismatch", "boundary does not commute with alpha", subgraph_text(R, g));
    }
    for (std::size_t i = 0; i < subs.size(); ++i)
        for (std::size_t j = i + 1; j < subs.size(); ++j) {
            auto meet = subgraph_intersection(R, subs[i], subs[j]);
            if (!meet) continue;
            const SubGraph& x = at(subs[i]);
            const SubGraph& y = at(subs[j]);
            auto imeet = subgraph_intersection(S, x, y);
            auto w = [&] { return subgraph_text(R, subs[i]) + " & " + subgraph_text(R, subs[j]); };
            if (!imeet) invalid("LatticeViolation", "images of overlapping subgraphs do not overlap", w());
            if (at(*meet) != *imeet) invalid("LatticeViolation", "alpha1 does not preserve an intersection", w());
            auto join = subgraph_union(R, subs[i], subs[j]);
            auto ijoin = subgraph_union(S, x, y);
            if (!join || !ijoin || at(*join) != *ijoin)
                invalid("LatticeViolation", "alpha1 does not preserve a union", w());
        }
}

CompleteMorphism compose_complete(const CompleteMorphism& b, const CompleteMorphism& a) {
    if (!same_tree(a.cod, b.dom)) invalid("DomainMismatch", "codomain and domain differ in composition");
    CompleteMorphism out{a.dom, b.cod, {}, {}};
    for (int x : a.alpha0) out.alpha0.push_back(b.alpha0[x]);
    for (const auto& [g, h] : a.alpha1) out.alpha1.emplace(g, b.alpha1.at(h));
    return out;
}

// ---- brute-force enumeration ---------------------------------------------

namespace {

class BruteForce {
public:
    BruteForce(const TreePtr& r, const TreePtr& s, std::uint64_t cap) : R_(*r), S_(*s), cap_(cap) {
        proto_.dom = r;
        proto_.cod = s;
        for (const auto& g : all_subgraphs(S_)) {
            auto b = boundary(S_, g);
            int k = static_cast<int>(b.size());
            by_boundary_[b].push_back(g);
            // Every sub-multiset of a boundary, tagged with the full size.
            for (Mask sub = 0; sub < bit(k); ++sub) {
                std::vector<int> key{k};
                for (int i = 0; i < k; ++i)
                    if (has_bit(sub, i)) key.push_back(b[i]);
                prefixes_.insert(std::move(key));
            }
        }
        order_edges();
        phi0_.assign(R_.num_edges(), -1);
    }

    std::vector<Morphism> run() {
        assign_edge(0);
        sort_canonical(out_);
        return out_;
    }

private:
    void tick() {
        if (++visited_ > cap_)
            throw SizeBoundExceeded("brute-force enumeration visited more than " + std::to_string(cap_) +
                                    " search nodes");
    }

    void order_edges() {
        const int E = R_.num_edges();
        std::vector<char> seen(E, 0);
        std::deque<int> q{R_.leg_order[0]};
        seen[R_.leg_order[0]] = 1;
        while (!q.empty()) {
            int e = q.front();
            q.pop_front();
            edge_order_.push_back(e);
            if (R_.is_eta()) continue;
            for (int v : R_.ends(e)) {
                if (v < 0) continue;
                for (int f : R_.nbhd[v])
                    if (!seen[f]) {
                        seen[f] = 1;
                        q.push_back(f);
                    }
            }
        }
    }

    bool vertex_ok(int v) const {
        const auto& nb = R_.nbhd[v];
        int k = static_cast<int>(nb.size());
        std::vector<int> key{k};
        int assigned = 0;
        for (int e : nb)
            if (phi0_[e] >= 0) {
                key.push_back(phi0_[e]);
                ++assigned;
            }
        std::sort(key.begin() + 1, key.end());
        if (k != 2)
            for (std::size_t i = 2; i < key.size(); ++i)
                if (key[i] == key[i - 1]) return false;
        if (assigned == k) {
            std::vector<int> full(key.begin() + 1, key.end());
            return by_boundary_.count(full) > 0;
        }
        return prefixes_.count(key) > 0;
    }

    void assign_edge(std::size_t idx) {
        tick();
        if (idx == edge_order_.size()) {
            proto_.phi0 = phi0_;
            proto_.phi1.assign(R_.num_vertices(), SubGraph{});
            assign_vertex(0, 0);
            return;
        }
        int e = edge_order_[idx];
        for (int x = 0; x < S_.num_edges(); ++x) {
            phi0_[e] = x;
            bool ok = true;
            if (!R_.is_eta())
                for (int v : R_.ends(e))
                    if (v >= 0 && !vertex_ok(v)) {
                        ok = false;
                        break;
                    }
            if (ok) assign_edge(idx + 1);
        }
        phi0_[e] = -1;
    }

    void assign_vertex(int v, Mask used) {
        tick();
        if (v == R_.num_vertices()) {
            out_.push_back(proto_);
            return;
        }
        std::vector<int> img;
        for (int e : R_.nbhd[v]) img.push_back(phi0_[e]);
        std::sort(img.begin(), img.end());
        auto it = by_boundary_.find(img);
        if (it == by_boundary_.end()) return;
        for (const auto& g : it->second) {
            if (g.verts & used) continue;
            proto_.phi1[v] = g;
            assign_vertex(v + 1, used | g.verts);
        }
    }

    const Tree& R_;
    const Tree& S_;
    std::uint64_t cap_;
    std::uint64_t visited_ = 0;
    std::map<std::vector<int>, std::vector<SubGraph>> by_boundary_;
    std::set<std::vector<int>> prefixes_;
    std::vector<int> edge_order_;
    std::vector<int> phi0_;
    Morphism proto_;
    std::vector<Morphism> out_;
};

} // namespace

std::vector<Morphism> enumerate_homs_bruteforce(const TreePtr& r, const TreePtr& s, std::uint64_t cap) {
    return BruteForce(r, s, cap).run();
}

std::string describe(const Morphism& m) {
    const Tree& R = *m.dom;
    const Tree& S = *m.cod;
    std::ostringstream os;
    os << "phi0{";
    for (int e = 0; e < R.num_edges(); ++e) os << (e ? "," : "") << R.edge_ids[e] << "->" << S.edge_ids[m.phi0[e]];
    os << "} phi1{";
    for (int v = 0; v < R.num_vertices(); ++v)
        os << (v ? "," : "") << R.vertex_ids[v] << "->" << subgraph_text(S, m.phi1[v]);
    os << "}";
    return os.str();
}

} // namespace cdend

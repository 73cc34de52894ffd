#include "cdend/nerve.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <map>
#include <set>

#include "cdend/rooting.hpp"

namespace cdend {

namespace {

[[noreturn]] void invalid(const std::string& kind, const std::string& msg, const std::string& witness = {}) {
    throw ValidationError(kind, msg, witness.empty() ? msg : witness);
}

std::string element_text(const Element& x) {
    std::string s = "[";
    for (std::size_t k = 0; k < x.size(); ++k) s += (k ? "," : "") + std::to_string(x[k]);
    return s + "]";
}

int op_index(const CyclicOperad& O, const Op& o) {
    auto l = O.ops(o.profile);
    auto it = std::find(l.begin(), l.end(), o);
    if (it == l.end()) invalid("OperadAxiomViolation", "operation not listed under its profile", O.op_name(o));
    return static_cast<int>(it - l.begin());
}

} // namespace

std::string Presheaf::describe(const TreePtr&, const Element& x) const { return element_text(x); }

// ---- the nerve -----------------------------------------------------------

NerveElement NervePresheaf::decode(const Tree& s, const Element& x) const {
    NerveElement n;
    for (int e = 0; e < s.num_edges(); ++e) n.coloring.push_back(static_cast<int>(x.at(e)));
    for (int v = 0; v < s.num_vertices(); ++v) {
        Profile p;
        for (int e : s.nbhd[v]) p.push_back(n.coloring[e]);
        auto l = O_->ops(p);
        auto k = x.at(s.num_edges() + v);
        if (k < 0 || k >= static_cast<std::int64_t>(l.size())) throw MalformedInput("nerve element out of range");
        n.vertex_ops.push_back(l[k]);
    }
    return n;
}

Element NervePresheaf::encode(const Tree& s, const NerveElement& n) const {
    Element x(n.coloring.begin(), n.coloring.end());
    for (int v = 0; v < s.num_vertices(); ++v) x.push_back(op_index(*O_, n.vertex_ops[v]));
    return x;
}

std::vector<Element> NervePresheaf::value(const TreePtr& sp) const {
    const Tree& S = *sp;
    const int E = S.num_edges(), V = S.num_vertices(), C = O_->num_colors();
    std::vector<Element> out;
    if (S.is_eta()) {
        for (int c = 0; c < C; ++c) out.push_back({c});
        return out;
    }
    Element x(E + V, -1);
    std::uint64_t visited = 0;
    auto rec = [&](auto&& self, int v) -> void {
        if (++visited > cap_) throw SizeBoundExceeded("nerve evaluation exceeded " + std::to_string(cap_));
        if (v == V) {
            out.push_back(x);
            return;
        }
        std::vector<int> open;
        for (int e : S.nbhd[v])
            if (x[e] < 0) open.push_back(e);
        auto choose = [&](auto&& pick, std::size_t k) -> void {
            if (k == open.size()) {
                Profile p;
                for (int e : S.nbhd[v]) p.push_back(static_cast<int>(x[e]));
                auto n = O_->ops(p).size();
                for (std::size_t j = 0; j < n; ++j) {
                    x[E + v] = static_cast<std::int64_t>(j);
                    self(self, v + 1);
                }
                x[E + v] = -1;
                return;
            }
            for (int c = 0; c < C; ++c) {
                x[open[k]] = c;
                pick(pick, k + 1);
            }
            x[open[k]] = -1;
        };
        choose(choose, 0);
    };
    rec(rec, 0);
    std::sort(out.begin(), out.end());
    return out;
}

Element NervePresheaf::restrict(const Morphism& phi, const Element& xe) const {
    const Tree& R = *phi.dom;
    const Tree& S = *phi.cod;
    NerveElement x = decode(S, xe);
    NerveElement y;
    for (int e = 0; e < R.num_edges(); ++e) y.coloring.push_back(x.coloring[phi.phi0[e]]);
    for (int v = 0; v < R.num_vertices(); ++v) {
        const SubGraph& g = phi.phi1[v];
        if (g.is_edge()) {
            y.vertex_ops.push_back(O_->unit(x.coloring[g.single_edge()]));
            continue;
        }
        std::vector<int> order;
        for (int e : R.nbhd[v]) order.push_back(phi.phi0[e]);
        SubTree st = subgraph_tree(S, g, order);
        DecoratedTree d{share(st.tree), {}, {}};
        for (int h : st.edge_to_host) d.coloring.push_back(x.coloring[h]);
        for (int h : st.vertex_to_host) d.labels.push_back(x.vertex_ops[h]);
        y.vertex_ops.push_back(evaluate_decorated_tree(*O_, d));
    }
    return encode(R, y);
}

std::string NervePresheaf::describe(const TreePtr& s, const Element& xe) const {
    NerveElement x = decode(*s, xe);
    std::string out;
    for (int e = 0; e < s->num_edges(); ++e)
        out += (e ? " " : "") + s->edge_ids[e] + "=" + O_->color_name(x.coloring[e]);
    for (int v = 0; v < s->num_vertices(); ++v)
        out += (v ? " " : " | ") + s->vertex_ids[v] + "=" + O_->op_name(x.vertex_ops[v]);
    return out;
}

std::shared_ptr<const NervePresheaf> nerve(OperadPtr o, std::uint64_t cap) {
    return std::make_shared<const NervePresheaf>(std::move(o), cap);
}

// ---- representables ------------------------------------------------------

Element encode_morphism(const Morphism& m) {
    Element x(m.phi0.begin(), m.phi0.end());
    for (const auto& g : m.phi1) {
        x.push_back(std::bit_cast<std::int64_t>(g.verts));
        x.push_back(std::bit_cast<std::int64_t>(g.edges));
    }
    return x;
}

Morphism decode_morphism(const TreePtr& dom, const TreePtr& cod, const Element& x) {
    Morphism m{dom, cod, {}, {}};
    const int E = dom->num_edges(), V = dom->num_vertices();
    if (static_cast<int>(x.size()) < E + 2 * V) throw MalformedInput("morphism encoding too short");
    for (int e = 0; e < E; ++e) m.phi0.push_back(static_cast<int>(x[e]));
    for (int v = 0; v < V; ++v)
        m.phi1.push_back(SubGraph{std::bit_cast<Mask>(x[E + 2 * v]), std::bit_cast<Mask>(x[E + 2 * v + 1])});
    return m;
}

namespace {

class RepresentablePresheaf : public Presheaf {
public:
    RepresentablePresheaf(TreePtr s, std::uint64_t cap, bool doubled) : S_(std::move(s)), cap_(cap), doubled_(doubled) {}

    std::string name() const override {
        return std::string(doubled_ ? "doubled" : "representable") + "(" + tree_summary(*S_) + ")";
    }

    std::vector<Element> value(const TreePtr& r) const override {
        std::vector<Element> out;
        for (const auto& f : enumerate_homs_structured(r, S_, -1, cap_)) {
            Element x = encode_morphism(f);
            if (!doubled_) {
                out.push_back(std::move(x));
                continue;
            }
            bool core = in_core(f);
            x.push_back(0);
            out.push_back(x);
            if (!core) {
                x.back() = 1;
                out.push_back(std::move(x));
            }
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    Element restrict(const Morphism& phi, const Element& x) const override {
        Morphism f = decode_morphism(phi.cod, S_, x);
        Morphism g = compose(f, phi);
        Element y = encode_morphism(g);
        if (doubled_) y.push_back(in_core(g) ? 0 : x.back());
        return y;
    }

    std::string describe(const TreePtr& r, const Element& x) const override {
        std::string s = cdend::describe(decode_morphism(r, S_, x));
        if (doubled_) s += " copy " + std::to_string(x.back());
        return s;
    }

private:
    static bool in_core(const Morphism& f) { return popcount(image(f).verts) <= 1; }

    TreePtr S_;
    std::uint64_t cap_;
    bool doubled_;
};

} // namespace

PresheafPtr representable(const TreePtr& s, std::uint64_t cap) {
    return std::make_shared<const RepresentablePresheaf>(s, cap, false);
}

PresheafPtr doubled_representable(const TreePtr& s, std::uint64_t cap) {
    return std::make_shared<const RepresentablePresheaf>(s, cap, true);
}

// ---- Segal cores ---------------------------------------------------------

Morphism star_inclusion(const TreePtr& s, int v) {
    const auto& nb = s->nbhd[v];
    std::vector<std::string> eids;
    std::vector<int> order;
    for (std::size_t k = 0; k < nb.size(); ++k) {
        eids.push_back(s->edge_ids[nb[k]]);
        order.push_back(static_cast<int>(k));
    }
    TreePtr t = share(make_tree(eids, {s->vertex_ids[v]}, {order}, order));
    return Morphism{t, s, nb, {star_subgraph(*s, v)}};
}

Morphism edge_inclusion(const TreePtr& t, int e) { return Morphism{share(eta(t->edge_ids[e])), t, {e}, {}}; }

std::vector<std::vector<Element>> segal_core_homs(const Presheaf& x, const TreePtr& sp) {
    const Tree& S = *sp;
    std::vector<std::vector<Element>> out;
    if (S.is_eta()) {
        for (auto& e : x.value(sp)) out.push_back({e});
        return out;
    }
    const int V = S.num_vertices();
    std::vector<std::vector<Element>> vals(V);
    // at_edge[v][k][j]: restriction of candidate j at v to the k-th edge of v.
    std::vector<std::vector<std::vector<Element>>> at_edge(V);
    for (int v = 0; v < V; ++v) {
        Morphism inc = star_inclusion(sp, v);
        vals[v] = x.value(inc.dom);
        at_edge[v].resize(S.valence(v));
        for (int k = 0; k < S.valence(v); ++k) {
            Morphism ek = edge_inclusion(inc.dom, k);
            for (const auto& c : vals[v]) at_edge[v][k].push_back(x.restrict(ek, c));
        }
    }
    std::vector<int> pick(V, -1);
    auto rec = [&](auto&& self, int v) -> void {
        if (v == V) {
            std::vector<Element> fam;
            for (int w = 0; w < V; ++w) fam.push_back(vals[w][pick[w]]);
            out.push_back(std::move(fam));
            return;
        }
        for (std::size_t j = 0; j < vals[v].size(); ++j) {
            bool ok = true;
            for (int k = 0; k < S.valence(v) && ok; ++k) {
                int e = S.nbhd[v][k];
                int w = S.across(e, v);
                if (w < 0 || w > v) continue;
                int kw = S.position_in_nbhd(w, e);
                ok = at_edge[v][k][j] == at_edge[w][kw][pick[w]];
            }
            if (!ok) continue;
            pick[v] = static_cast<int>(j);
            self(self, v + 1);
        }
        pick[v] = -1;
    };
    rec(rec, 0);
    return out;
}

std::vector<Element> segal_map(const Presheaf& x, const TreePtr& s, const Element& e) {
    if (s->is_eta()) return {e};
    std::vector<Element> out;
    for (int v = 0; v < s->num_vertices(); ++v) out.push_back(x.restrict(star_inclusion(s, v), e));
    return out;
}

namespace {

std::string family_text(const Presheaf& x, const std::vector<TreePtr>& doms, const std::vector<Element>& fam) {
    std::string s = "(";
    for (std::size_t k = 0; k < fam.size(); ++k) s += (k ? "; " : "") + x.describe(doms[k], fam[k]);
    return s + ")";
}

} // namespace

CheckReport segal_check_tree(const Presheaf& x, const TreePtr& s) {
    CheckReport rep;
    rep.check = "segal";
    rep.tree = tree_summary(*s);
    rep.trees_checked = 1;
    std::vector<TreePtr> doms;
    if (s->is_eta()) doms.push_back(s);
    for (int v = 0; v < s->num_vertices(); ++v) doms.push_back(star_inclusion(s, v).dom);
    auto vals = x.value(s);
    auto core = segal_core_homs(x, s);
    rep.instances_checked = vals.size() + core.size();
    std::map<std::vector<Element>, Element> seen;
    for (const auto& e : vals) {
        auto fam = segal_map(x, s, e);
        auto [it, fresh] = seen.emplace(fam, e);
        if (!fresh) {
            rep.pass = false;
            rep.witness = "not injective: " + x.describe(s, it->second) + " and " + x.describe(s, e) +
                          " have the same core family " + family_text(x, doms, fam);
            return rep;
        }
        if (!std::binary_search(core.begin(), core.end(), fam)) {
            rep.pass = false;
            rep.witness = "core family of " + x.describe(s, e) + " is not compatible";
            return rep;
        }
    }
    if (seen.size() != core.size()) {
        for (const auto& fam : core)
            if (!seen.count(fam)) {
                rep.pass = false;
                rep.witness = "not surjective: no element over " + family_text(x, doms, fam);
                return rep;
            }
    }
    return rep;
}

CheckReport is_segal(const Presheaf& x, int max_vertices, int max_legs) {
    CheckReport total;
    total.check = "segal";
    for (const auto& t : trees_up_to(max_vertices, max_legs)) {
        CheckReport r = segal_check_tree(x, share(t));
        total.trees_checked += 1;
        total.instances_checked += r.instances_checked;
        if (!r.pass) {
            total.pass = false;
            total.tree = r.tree;
            total.witness = r.witness;
            return total;
        }
    }
    return total;
}

// ---- inner horns ---------------------------------------------------------

namespace {

// Edge-injective maps into S agree up to iso over S exactly when they have
// the same image edges and the same vertex images.
std::string face_key(const Morphism& k) {
    std::vector<int> edges = k.phi0;
    std::sort(edges.begin(), edges.end());
    std::vector<SubGraph> verts = k.phi1;
    std::sort(verts.begin(), verts.end());
    std::string s;
    for (int e : edges) s += std::to_string(e) + ",";
    s += "|";
    for (const auto& g : verts) s += std::to_string(g.verts) + ":" + std::to_string(g.edges) + ",";
    return s;
}

} // namespace

std::optional<Morphism> factor_through(const Morphism& k, const Morphism& f) {
    const Tree& D = *f.dom;
    std::vector<int> inv(f.cod->num_edges(), -1);
    for (int e = 0; e < D.num_edges(); ++e) inv[f.phi0[e]] = e;
    Morphism a{k.dom, f.dom, {}, {}};
    for (int x : k.phi0) {
        if (inv[x] < 0) return std::nullopt;
        a.phi0.push_back(inv[x]);
    }
    std::vector<SubGraph> subs;
    for (const auto& g : k.phi1) {
        if (g.is_edge()) {
            if (inv[g.single_edge()] < 0) return std::nullopt;
            a.phi1.push_back(edge_subgraph(inv[g.single_edge()]));
            continue;
        }
        if (subs.empty()) subs = all_subgraphs(D);
        auto it = std::find_if(subs.begin(), subs.end(),
                               [&](const SubGraph& h) { return !h.is_edge() && image_of(f, h) == g; });
        if (it == subs.end()) return std::nullopt;
        a.phi1.push_back(*it);
    }
    if (!is_morphism(a)) return std::nullopt;
    return a;
}

Horn inner_horn(const TreePtr& s, const Coface& delta) {
    if (delta.kind != CofaceKind::Inner) invalid("NotInner", "horns are taken at inner cofaces");
    Horn h;
    std::string dkey = face_key(delta.map);
    for (auto& c : cofaces(s))
        if (face_key(c.map) != dkey) h.faces.push_back(std::move(c));
    std::map<std::string, Morphism> closure;
    std::deque<Morphism> queue;
    for (const auto& f : h.faces) queue.push_back(f.map);
    while (!queue.empty()) {
        Morphism k = std::move(queue.front());
        queue.pop_front();
        for (const auto& c : cofaces(k.dom)) {
            Morphism kc = compose(k, c.map);
            auto [it, fresh] = closure.emplace(face_key(kc), kc);
            if (fresh) queue.push_back(kc);
        }
    }
    for (const auto& [key, k] : closure) {
        std::vector<std::pair<int, Morphism>> through;
        for (int j = 0; j < static_cast<int>(h.faces.size()); ++j)
            if (auto a = factor_through(k, h.faces[j].map)) through.emplace_back(j, std::move(*a));
        if (through.size() >= 2) h.constraints.push_back(std::move(through));
    }
    return h;
}

namespace {

std::vector<std::vector<Element>> horn_homs(const Presheaf& x, const Horn& h, std::uint64_t cap) {
    const int F = static_cast<int>(h.faces.size());
    std::vector<std::vector<Element>> vals(F);
    for (int j = 0; j < F; ++j) vals[j] = x.value(h.faces[j].map.dom);
    // restricted[c][p][t]: restriction of candidate t along the p-th leg of constraint c.
    std::vector<std::vector<std::vector<Element>>> restricted(h.constraints.size());
    std::vector<std::vector<int>> due(F);
    for (std::size_t c = 0; c < h.constraints.size(); ++c) {
        int last = 0;
        for (const auto& [j, a] : h.constraints[c]) {
            std::vector<Element> r;
            for (const auto& v : vals[j]) r.push_back(x.restrict(a, v));
            restricted[c].push_back(std::move(r));
            last = std::max(last, j);
        }
        due[last].push_back(static_cast<int>(c));
    }
    std::vector<std::vector<Element>> out;
    std::vector<int> pick(F, -1);
    std::uint64_t visited = 0;
    auto rec = [&](auto&& self, int j) -> void {
        if (++visited > cap) throw SizeBoundExceeded("horn enumeration exceeded " + std::to_string(cap));
        if (j == F) {
            std::vector<Element> fam;
            for (int k = 0; k < F; ++k) fam.push_back(vals[k][pick[k]]);
            out.push_back(std::move(fam));
            return;
        }
        for (std::size_t t = 0; t < vals[j].size(); ++t) {
            pick[j] = static_cast<int>(t);
            bool ok = true;
            for (int c : due[j]) {
                const auto& legs = h.constraints[c];
                const Element& first = restricted[c][0][pick[legs[0].first]];
                for (std::size_t p = 1; p < legs.size() && ok; ++p)
                    ok = restricted[c][p][pick[legs[p].first]] == first;
                if (!ok) break;
            }
            if (ok) self(self, j + 1);
        }
        pick[j] = -1;
    };
    rec(rec, 0);
    return out;
}

} // namespace

std::vector<std::vector<Element>> inner_horn_homs(const Presheaf& x, const TreePtr& s, const Coface& delta,
                                                  std::uint64_t cap) {
    return horn_homs(x, inner_horn(s, delta), cap);
}

bool unique_inner_filler(const Presheaf& x, const TreePtr& s, const Coface& delta, std::string* witness,
                         std::uint64_t cap) {
    Horn h = inner_horn(s, delta);
    auto homs = horn_homs(x, h, cap);
    std::vector<TreePtr> doms;
    for (const auto& f : h.faces) doms.push_back(f.map.dom);
    std::map<std::vector<Element>, Element> seen;
    for (const auto& e : x.value(s)) {
        std::vector<Element> fam;
        for (const auto& f : h.faces) fam.push_back(x.restrict(f.map, e));
        auto [it, fresh] = seen.emplace(fam, e);
        if (!fresh) {
            if (witness)
                *witness = "two fillers " + x.describe(s, it->second) + " and " + x.describe(s, e) +
                           " of the horn at " + delta.witness;
            return false;
        }
    }
    for (const auto& fam : homs)
        if (!seen.count(fam)) {
            if (witness) *witness = "no filler for " + family_text(x, doms, fam) + " at " + delta.witness;
            return false;
        }
    if (seen.size() != homs.size()) {
        if (witness) *witness = "restriction leaves the horn at " + delta.witness;
        return false;
    }
    return true;
}

CheckReport check_inner_horns(const Presheaf& x, int max_vertices, int max_legs) {
    CheckReport rep;
    rep.check = "inner-horn";
    for (const auto& t : trees_up_to(max_vertices, max_legs)) {
        TreePtr s = share(t);
        rep.trees_checked += 1;
        for (const auto& c : cofaces(s)) {
            if (c.kind != CofaceKind::Inner) continue;
            rep.instances_checked += 1;
            std::string w;
            if (!unique_inner_filler(x, s, c, &w)) {
                rep.pass = false;
                rep.tree = tree_summary(*s);
                rep.witness = w;
                return rep;
            }
        }
    }
    return rep;
}

// ---- graft trees ---------------------------------------------------------

namespace {

void check_indices(int m, int n, int i) {
    if (m < 1 || n < 0 || i < 1 || i > m)
        invalid("BadIndices", "graft trees need m >= 1, n >= 0 and 1 <= i <= m",
                "m=" + std::to_string(m) + " n=" + std::to_string(n) + " i=" + std::to_string(i));
}

TreePtr star_tree(int q) { return share(star(q)); }

} // namespace

TreePtr graft_tree(int m, int n, int i) {
    check_indices(m, n, i);
    const int e = m + n;
    std::vector<std::string> eids;
    std::vector<int> order;
    for (int k = 0; k < m + n; ++k) {
        eids.push_back(std::to_string(k));
        order.push_back(k);
    }
    eids.push_back("e");
    std::vector<int> a, b;
    for (int k = 0; k < i; ++k) a.push_back(k);
    a.push_back(e);
    for (int k = n + i; k < m + n; ++k) a.push_back(k);
    b.push_back(e);
    for (int k = i; k < n + i; ++k) b.push_back(k);
    return share(make_tree(eids, {"a", "b"}, {a, b}, order));
}

GraftMaps graft_maps(int m, int n, int i) {
    GraftMaps g;
    g.z = graft_tree(m, n, i);
    const Tree& Z = *g.z;
    const int e = m + n;
    g.delta_a = Morphism{star_tree(n + 1), g.z, {}, {star_subgraph(Z, 1)}};
    for (int k = 0; k <= n; ++k) g.delta_a.phi0.push_back(k == 0 ? e : i + k - 1);
    g.delta_b = Morphism{star_tree(m + 1), g.z, {}, {star_subgraph(Z, 0)}};
    for (int k = 0; k <= m; ++k) g.delta_b.phi0.push_back(k < i ? k : (k == i ? e : n - 1 + k));
    g.delta_e = Morphism{star_tree(m + n), g.z, {}, {whole_subgraph(Z)}};
    for (int k = 0; k < m + n; ++k) g.delta_e.phi0.push_back(k);
    validate_morphism(g.delta_a);
    validate_morphism(g.delta_b);
    validate_morphism(g.delta_e);
    return g;
}

Morphism psi_map(const Perm& sigma) {
    TreePtr t = star_tree(static_cast<int>(sigma.size()));
    Morphism m{t, t, sigma, {whole_subgraph(*t)}};
    validate_morphism(m);
    return m;
}

Morphism phi_map(int m, int n, int i) {
    check_indices(m, n, i);
    if (i == m && n < 1) invalid("BadIndices", "the last graft map needs n >= 1");
    TreePtr z = graft_tree(m, n, i);
    TreePtr w = i < m ? graft_tree(m, n, i + 1) : graft_tree(n, m, 1);
    Morphism f{z, w, {}, {}};
    for (int k = 0; k < m + n; ++k) f.phi0.push_back((k + 1) % (m + n));
    f.phi0.push_back(m + n);
    if (i < m) f.phi1 = {star_subgraph(*w, 0), star_subgraph(*w, 1)};
    else f.phi1 = {star_subgraph(*w, 1), star_subgraph(*w, 0)};
    validate_morphism(f);
    return f;
}

bool verify_psi_phi_squares(const CyclicOperad& o, int m, int n, int i, std::string* witness) {
    check_indices(m, n, i);
    if (i == m && n < 1) invalid("BadIndices", "the last graft map needs n >= 1");
    auto fail = [&](const std::string& w) {
        if (witness) *witness = w;
        return false;
    };
    const bool last = i == m;
    GraftMaps src = graft_maps(m, n, i);
    GraftMaps dst = last ? graft_maps(n, m, 1) : graft_maps(m, n, i + 1);
    Morphism phi = phi_map(m, n, i);
    Morphism psi_b = psi_map(tau_perm(m + 1));
    Morphism psi_a = last ? psi_map(tau_perm(n + 1)) : identity(star_tree(n + 1));
    Morphism psi_e = psi_map(tau_perm(m + n));
    // Targets of delta_b and delta_a after phi.
    const Morphism& to_b = last ? dst.delta_a : dst.delta_b;
    const Morphism& to_a = last ? dst.delta_b : dst.delta_a;
    if (!same_maps(compose(phi, src.delta_b), compose(to_b, psi_b))) return fail("square at b does not commute");
    if (!same_maps(compose(phi, src.delta_a), compose(to_a, psi_a))) return fail("square at a does not commute");
    if (!same_maps(compose(phi, src.delta_e), compose(dst.delta_e, psi_e))) return fail("square at e does not commute");

    NervePresheaf N(OperadPtr(OperadPtr{}, &o));
    auto op_of = [&](const Morphism& d, const Element& y) {
        return N.decode(*d.dom, N.restrict(d, y)).vertex_ops.at(0);
    };
    auto text = [&](const Op& x) { return o.op_name(x); };
    for (const auto& y : N.value(dst.z)) {
        Element yphi = N.restrict(phi, y);
        Op outer = op_of(dst.delta_b, y); // the vertex a of the target
        Op inner = op_of(dst.delta_a, y); // the vertex b of the target
        int slot = last ? 1 : i + 1;
        Op composite = o.circ(outer, slot, inner);
        if (op_of(dst.delta_e, y) != composite) return fail("contracting e is not o_" + std::to_string(slot));
        Op rotated = op_of(src.delta_e, yphi);
        Op want = o.act(composite, tau_perm(m + n));
        if (rotated != want)
            return fail("restriction along phi gives " + text(rotated) + ", expected " + text(want));
        Op other = last ? o.circ(o.act(inner, tau_perm(m + 1)), m, o.act(outer, tau_perm(n + 1)))
                        : o.circ(o.act(outer, tau_perm(m + 1)), i, inner);
        if (other != want) return fail("rotation law fails: " + text(other) + " vs " + text(want));
        if (op_of(src.delta_b, yphi) != op_of(psi_b, N.restrict(to_b, y)) ||
            op_of(src.delta_a, yphi) != (last ? op_of(psi_a, N.restrict(to_a, y)) : op_of(to_a, y)))
            return fail("nerve restriction is not functorial on a graft square");
    }
    return true;
}

} // namespace cdend

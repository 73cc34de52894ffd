#include "cdend/tree.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace cdend {

int popcount(Mask m) { return std::popcount(m); }

std::vector<int> mask_members(Mask m) {
    std::vector<int> out;
    while (m) {
        int i = std::countr_zero(m);
        out.push_back(i);
        m &= m - 1;
    }
    return out;
}

namespace {

[[noreturn]] void invalid(const std::string& kind, const std::string& msg, const std::string& witness = {}) {
    throw ValidationError(kind, msg, witness.empty() ? msg : witness);
}

void check_unique_ids(const std::vector<std::string>& ids, const char* what) {
    std::set<std::string> seen;
    for (const auto& id : ids)
        if (!seen.insert(id).second) invalid("DuplicateId", std::string("duplicate ") + what + " id '" + id + "'");
}

} // namespace

Mask Tree::all_edges() const { return num_edges() == 64 ? ~Mask{0} : bit(num_edges()) - 1; }
Mask Tree::all_vertices() const { return num_vertices() == 64 ? ~Mask{0} : bit(num_vertices()) - 1; }

int Tree::across(int e, int v) const {
    const auto& en = ends_[e];
    if (en[0] == v) return en[1];
    if (en[1] == v) return en[0];
    return -1;
}

int Tree::position_in_nbhd(int v, int e) const {
    const auto& nb = nbhd[v];
    for (int k = 0; k < static_cast<int>(nb.size()); ++k)
        if (nb[k] == e) return k;
    return -1;
}

int Tree::edge_index(const std::string& id) const {
    for (int i = 0; i < num_edges(); ++i)
        if (edge_ids[i] == id) return i;
    return -1;
}

int Tree::vertex_index(const std::string& id) const {
    for (int i = 0; i < num_vertices(); ++i)
        if (vertex_ids[i] == id) return i;
    return -1;
}

int Tree::vertex_distance(int v, int w) const {
    int E = num_edges();
    return dist_[(E + v) * nodes_ + (E + w)] / 2;
}

bool Tree::operator==(const Tree& o) const {
    return edge_ids == o.edge_ids && vertex_ids == o.vertex_ids && nbhd == o.nbhd && leg_order == o.leg_order;
}

Tree make_tree(std::vector<std::string> edge_ids, std::vector<std::string> vertex_ids,
               std::vector<std::vector<int>> nbhd, std::vector<int> leg_order) {
    const int E = static_cast<int>(edge_ids.size());
    const int V = static_cast<int>(vertex_ids.size());
    if (E == 0) invalid("NotContractible", "tree has no edges");
    if (E > kMaxTreeSize || V > kMaxTreeSize) invalid("TooLarge", "trees are limited to 64 edges and 64 vertices");
    if (static_cast<int>(nbhd.size()) != V) invalid("BadOrdering", "neighborhood list count differs from vertex count");
    check_unique_ids(edge_ids, "edge");
    check_unique_ids(vertex_ids, "vertex");

    std::vector<std::array<int, 2>> ends(E, {-1, -1});
    std::vector<int> incidence(E, 0);
    for (int v = 0; v < V; ++v) {
        Mask seen = 0;
        for (int e : nbhd[v]) {
            if (e < 0 || e >= E) invalid("BadOrdering", "vertex '" + vertex_ids[v] + "' lists an unknown edge");
            if (has_bit(seen, e))
                invalid("BadOrdering", "vertex '" + vertex_ids[v] + "' lists edge '" + edge_ids[e] + "' twice");
            seen |= bit(e);
            if (incidence[e] == 2)
                invalid("IncidenceViolation", "edge '" + edge_ids[e] + "' lies in more than two neighborhoods",
                        edge_ids[e]);
            ends[e][incidence[e]++] = v;
        }
    }

    Mask legs = 0;
    if (V == 0) {
        if (E != 1) invalid("NotContractible", "a vertex-free tree must have exactly one edge");
        if (leg_order.empty()) leg_order = {0};
        if (leg_order != std::vector<int>{0}) invalid("BadOrdering", "the leg order of eta lists its edge once");
        legs = 1;
    } else {
        int interior = 0;
        for (int e = 0; e < E; ++e) {
            if (incidence[e] == 0) invalid("NotContractible", "edge '" + edge_ids[e] + "' meets no vertex", edge_ids[e]);
            if (incidence[e] == 2) ++interior;
            else legs |= bit(e);
        }
        std::vector<char> reached(V, 0);
        std::deque<int> queue{0};
        reached[0] = 1;
        int count = 1;
        while (!queue.empty()) {
            int v = queue.front();
            queue.pop_front();
            for (int e : nbhd[v]) {
                int w = ends[e][0] == v ? ends[e][1] : ends[e][0];
                if (w >= 0 && !reached[w]) {
                    reached[w] = 1;
                    ++count;
                    queue.push_back(w);
                }
            }
        }
        if (count != V) invalid("NotContractible", "graph is disconnected");
        if (interior != V - 1) invalid("NotContractible", "graph has a cycle");
        if (legs == 0) invalid("NoLegs", "tree has no legs");
        Mask listed = 0;
        for (int e : leg_order) {
            if (e < 0 || e >= E || !has_bit(legs, e) || has_bit(listed, e))
                invalid("BadOrdering", "leg order is not a bijection onto the legs");
            listed |= bit(e);
        }
        if (listed != legs) invalid("BadOrdering", "leg order is not a bijection onto the legs");
    }

    Tree t;
    t.edge_ids = std::move(edge_ids);
    t.vertex_ids = std::move(vertex_ids);
    t.nbhd = std::move(nbhd);
    t.leg_order = std::move(leg_order);
    t.legs_ = legs;
    t.ends_ = std::move(ends);

    // All-pairs BFS on the rwb node graph: edges 0..E-1, vertices E..E+V-1.
    const int N = E + V;
    t.nodes_ = N;
    t.dist_.assign(N * N, -1);
    t.parent_.assign(N * N, -1);
    std::vector<std::vector<int>> adj(N);
    for (int e = 0; e < E; ++e)
        for (int v : t.ends_[e])
            if (v >= 0) {
                adj[e].push_back(E + v);
                adj[E + v].push_back(e);
            }
    for (int s = 0; s < N; ++s) {
        int* d = &t.dist_[s * N];
        int* p = &t.parent_[s * N];
        std::deque<int> q{s};
        d[s] = 0;
        while (!q.empty()) {
            int x = q.front();
            q.pop_front();
            for (int y : adj[x])
                if (d[y] < 0) {
                    d[y] = d[x] + 1;
                    p[y] = x;
                    q.push_back(y);
                }
        }
    }
    return t;
}

Tree validate_tree(const RawTree& raw) {
    std::vector<std::string> edges = raw.edges;
    std::vector<std::string> verts;
    check_unique_ids(edges, "edge");
    auto lookup = [&](const std::string& id) {
        for (int i = 0; i < static_cast<int>(edges.size()); ++i)
            if (edges[i] == id) return i;
        invalid("BadOrdering", "reference to unknown edge '" + id + "'");
    };
    std::vector<std::vector<int>> nb;
    for (const auto& rv : raw.vertices) {
        verts.push_back(rv.id);
        std::vector<int> l;
        for (const auto& id : rv.nbhd) l.push_back(lookup(id));
        nb.push_back(std::move(l));
    }
    std::vector<int> legs;
    for (const auto& id : raw.leg_order) legs.push_back(lookup(id));
    return make_tree(std::move(edges), std::move(verts), std::move(nb), std::move(legs));
}

RawTree to_raw(const Tree& t) {
    RawTree r;
    r.edges = t.edge_ids;
    for (int v = 0; v < t.num_vertices(); ++v) {
        RawVertex rv{t.vertex_ids[v], {}};
        for (int e : t.nbhd[v]) rv.nbhd.push_back(t.edge_ids[e]);
        r.vertices.push_back(std::move(rv));
    }
    for (int e : t.leg_order) r.leg_order.push_back(t.edge_ids[e]);
    return r;
}

Tree eta(const std::string& edge_id) { return make_tree({edge_id}, {}, {}, {0}); }

Tree star(int n) {
    if (n < 1) invalid("BadOrdering", "star(n) needs n >= 1");
    std::vector<std::string> edges;
    std::vector<int> order;
    for (int i = 0; i < n; ++i) {
        edges.push_back(std::to_string(i));
        order.push_back(i);
    }
    return make_tree(edges, {"v"}, {order}, order);
}

Tree linear(int n) {
    if (n < 0) invalid("BadOrdering", "linear(n) needs n >= 0");
    if (n == 0) return eta("e0");
    std::vector<std::string> edges, verts;
    std::vector<std::vector<int>> nb;
    for (int i = 0; i <= n; ++i) edges.push_back("e" + std::to_string(i));
    for (int i = 1; i <= n; ++i) {
        verts.push_back("v" + std::to_string(i));
        nb.push_back({i - 1, i});
    }
    return make_tree(edges, verts, nb, {0, n});
}

bool is_linear(const Tree& t) {
    for (int v = 0; v < t.num_vertices(); ++v)
        if (t.valence(v) != 2) return false;
    return true;
}

// ---- subgraphs -----------------------------------------------------------

int SubGraph::single_edge() const { return verts == 0 && popcount(edges) == 1 ? std::countr_zero(edges) : -1; }

SubGraph edge_subgraph(int e) { return {0, bit(e)}; }

SubGraph star_subgraph(const Tree& t, int v) {
    SubGraph g{bit(v), 0};
    for (int e : t.nbhd[v]) g.edges |= bit(e);
    return g;
}

SubGraph whole_subgraph(const Tree& t) { return {t.all_vertices(), t.all_edges()}; }

namespace {

bool vertex_set_connected(const Tree& t, Mask verts) {
    if (verts == 0) return false;
    Mask reached = bit(std::countr_zero(verts));
    Mask frontier = reached;
    while (frontier) {
        int v = std::countr_zero(frontier);
        frontier &= frontier - 1;
        for (int e : t.nbhd[v]) {
            int w = t.across(e, v);
            if (w >= 0 && has_bit(verts, w) && !has_bit(reached, w)) {
                reached |= bit(w);
                frontier |= bit(w);
            }
        }
    }
    return reached == verts;
}

} // namespace

SubGraph vertex_span(const Tree& t, Mask verts) {
    if (!vertex_set_connected(t, verts)) invalid("NotContractible", "vertex set does not span a connected subgraph");
    SubGraph g{verts, 0};
    for (int v : mask_members(verts))
        for (int e : t.nbhd[v]) g.edges |= bit(e);
    return g;
}

bool is_valid_subgraph(const Tree& t, const SubGraph& g) {
    if ((g.edges & ~t.all_edges()) || (g.verts & ~t.all_vertices())) return false;
    if (g.verts == 0) return popcount(g.edges) == 1;
    if (!vertex_set_connected(t, g.verts)) return false;
    Mask span = 0;
    for (int v : mask_members(g.verts))
        for (int e : t.nbhd[v]) span |= bit(e);
    return span == g.edges;
}

Mask subgraph_legs(const Tree& t, const SubGraph& g) {
    if (g.is_edge()) return g.edges;
    Mask once = 0, twice = 0;
    for (int v : mask_members(g.verts))
        for (int e : t.nbhd[v]) {
            twice |= once & bit(e);
            once |= bit(e);
        }
    return once & ~twice;
}

Mask subgraph_interior(const Tree& t, const SubGraph& g) { return g.is_edge() ? 0 : g.edges & ~subgraph_legs(t, g); }

std::vector<int> boundary(const Tree& t, const SubGraph& g) {
    if (g.is_edge()) {
        int e = g.single_edge();
        return {e, e};
    }
    return mask_members(subgraph_legs(t, g));
}

std::optional<SubGraph> subgraph_intersection(const Tree&, const SubGraph& a, const SubGraph& b) {
    SubGraph g{a.verts & b.verts, a.edges & b.edges};
    if (g.edges == 0) return std::nullopt;
    return g;
}

std::optional<SubGraph> subgraph_union(const Tree& t, const SubGraph& a, const SubGraph& b) {
    if ((a.edges & b.edges) == 0) return std::nullopt;
    if (a.verts == 0 && b.verts == 0) return a;
    return vertex_span(t, a.verts | b.verts);
}

bool subgraph_contains(const SubGraph& big, const SubGraph& small) {
    return (small.verts & ~big.verts) == 0 && (small.edges & ~big.edges) == 0;
}

std::vector<SubGraph> all_subgraphs(const Tree& t) {
    std::vector<SubGraph> out;
    for (int e = 0; e < t.num_edges(); ++e) out.push_back(edge_subgraph(e));
    std::unordered_set<Mask> seen;
    std::vector<Mask> stack;
    for (int v = 0; v < t.num_vertices(); ++v) {
        seen.insert(bit(v));
        stack.push_back(bit(v));
    }
    while (!stack.empty()) {
        Mask m = stack.back();
        stack.pop_back();
        for (int v : mask_members(m))
            for (int e : t.nbhd[v]) {
                int w = t.across(e, v);
                if (w >= 0 && !has_bit(m, w) && seen.insert(m | bit(w)).second) stack.push_back(m | bit(w));
            }
    }
    std::vector<Mask> masks(seen.begin(), seen.end());
    std::sort(masks.begin(), masks.end());
    for (Mask m : masks) out.push_back(vertex_span(t, m));
    return out;
}

SubTree subgraph_tree(const Tree& host, const SubGraph& g, const std::vector<int>& host_leg_order) {
    SubTree st;
    st.host_to_edge.assign(host.num_edges(), -1);
    st.host_to_vertex.assign(host.num_vertices(), -1);
    std::vector<std::string> eids, vids;
    for (int e : mask_members(g.edges)) {
        st.host_to_edge[e] = static_cast<int>(eids.size());
        st.edge_to_host.push_back(e);
        eids.push_back(host.edge_ids[e]);
    }
    std::vector<std::vector<int>> nb;
    for (int v : mask_members(g.verts)) {
        st.host_to_vertex[v] = static_cast<int>(vids.size());
        st.vertex_to_host.push_back(v);
        vids.push_back(host.vertex_ids[v]);
        std::vector<int> l;
        for (int e : host.nbhd[v]) l.push_back(st.host_to_edge[e]);
        nb.push_back(std::move(l));
    }
    std::vector<int> order;
    if (g.is_edge()) {
        order = {0};
    } else if (host_leg_order.empty()) {
        for (int e : mask_members(subgraph_legs(host, g))) order.push_back(st.host_to_edge[e]);
    } else {
        for (int e : host_leg_order) {
            if (e < 0 || e >= host.num_edges() || st.host_to_edge[e] < 0)
                invalid("BadOrdering", "requested leg order mentions an edge outside the subgraph");
            order.push_back(st.host_to_edge[e]);
        }
    }
    st.tree = make_tree(std::move(eids), std::move(vids), std::move(nb), std::move(order));
    return st;
}

// ---- distance and paths --------------------------------------------------

namespace {

int node_of(const Tree& t, Elem x) { return x.is_vertex ? t.num_edges() + x.index : x.index; }

Elem elem_of(const Tree& t, int node) {
    return node < t.num_edges() ? Elem{false, node} : Elem{true, node - t.num_edges()};
}

} // namespace

int distance(const Tree& t, Elem x, Elem y) {
    if (x.is_vertex != y.is_vertex) invalid("BadOrdering", "distance needs two edges or two vertices");
    return t.node_distance(node_of(t, x), node_of(t, y)) / 2;
}

Path minimal_path(const Tree& t, Elem x, Elem y) {
    int a = node_of(t, x), b = node_of(t, y);
    Path rev;
    for (int n = b; n != a; n = t.rwb_parent(a, n)) rev.push_back(elem_of(t, n));
    rev.push_back(x);
    return Path(rev.rbegin(), rev.rend());
}

std::string path_to_string(const Tree& t, const Path& p) {
    std::string s;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i) s += "\xc2\xb7";
        s += p[i].is_vertex ? t.vertex_ids[p[i].index] : t.edge_ids[p[i].index];
    }
    return s;
}

// ---- rwb graph -----------------------------------------------------------

RwbGraph to_rwb(const Tree& t) {
    RwbGraph g;
    auto add = [&](std::string name, char c) {
        g.names.push_back(std::move(name));
        g.color.push_back(c);
        return static_cast<int>(g.names.size()) - 1;
    };
    for (int v = 0; v < t.num_vertices(); ++v) add(t.vertex_ids[v], 'b');
    if (t.is_eta()) {
        int a = add("r0:" + t.edge_ids[0], 'r');
        int b = add("r1:" + t.edge_ids[0], 'r');
        g.links.emplace_back(a, b);
        return g;
    }
    for (int e = 0; e < t.num_edges(); ++e) {
        const auto& en = t.ends(e);
        if (t.is_leg(e)) {
            int r = add("r:" + t.edge_ids[e], 'r');
            g.links.emplace_back(en[0], r);
        } else {
            int w = add("w:" + t.edge_ids[e], 'w');
            g.links.emplace_back(en[0], w);
            g.links.emplace_back(en[1], w);
        }
    }
    return g;
}

Tree from_rwb(const RwbGraph& g) {
    const int N = static_cast<int>(g.names.size());
    auto strip = [&](int n) {
        const auto& s = g.names[n];
        auto p = s.find(':');
        return p == std::string::npos ? s : s.substr(p + 1);
    };
    std::vector<int> black;
    std::vector<int> vertex_of(N, -1);
    for (int n = 0; n < N; ++n)
        if (g.color[n] == 'b') {
            vertex_of[n] = static_cast<int>(black.size());
            black.push_back(n);
        }
    if (black.empty()) {
        for (int n = 0; n < N; ++n)
            if (g.color[n] == 'r') return eta(strip(n));
        throw MalformedInput("rwb graph has no nodes");
    }
    std::vector<std::string> eids, vids;
    std::vector<std::vector<int>> nb(black.size());
    std::vector<int> legs;
    for (int b : black) vids.push_back(g.names[b]);
    std::vector<std::vector<int>> adj(N);
    for (auto [x, y] : g.links) {
        adj[x].push_back(y);
        adj[y].push_back(x);
    }
    for (int n = 0; n < N; ++n) {
        if (g.color[n] == 'b') continue;
        int e = static_cast<int>(eids.size());
        eids.push_back(strip(n));
        for (int y : adj[n])
            if (g.color[y] == 'b') nb[vertex_of[y]].push_back(e);
        if (g.color[n] == 'r') legs.push_back(e);
    }
    return make_tree(eids, vids, nb, legs);
}

std::string to_dot(const Tree& t) {
    RwbGraph g = to_rwb(t);
    std::ostringstream os;
    os << "graph tree {\n";
    for (std::size_t n = 0; n < g.names.size(); ++n) {
        const char* fill = g.color[n] == 'b' ? "black" : g.color[n] == 'w' ? "white" : "red";
        const char* font = g.color[n] == 'b' ? "white" : "black";
        os << "  n" << n << " [label=\"" << g.names[n] << "\", style=filled, fillcolor=" << fill
           << ", fontcolor=" << font << "];\n";
    }
    for (auto [x, y] : g.links) os << "  n" << x << " -- n" << y << ";\n";
    os << "}\n";
    return os.str();
}

// ---- canonical forms -----------------------------------------------------

namespace {

void put_label(std::string& out, char tag, const std::string& s) {
    out += tag;
    out += std::to_string(s.size());
    out += ':';
    out += s;
}

class Encoder {
public:
    Encoder(const Tree& t, const CanonOptions& opt) : t_(t), opt_(opt) {
        for (int k = 0; k < static_cast<int>(t.leg_order.size()); ++k) leg_index_[t.leg_order[k]] = k;
    }

    // Encoding of edge e together with everything beyond it, seen from `from`.
    const std::string& edge(int e, int from) {
        auto key = std::make_pair(e, from);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        std::string s = "(";
        if (opt_.pin_legs && t_.is_leg(e)) {
            s += 'L';
            s += std::to_string(leg_index_.at(e));
        }
        if (opt_.edge_labels) put_label(s, 'c', (*opt_.edge_labels)[e]);
        int w = t_.is_eta() ? -1 : (from < 0 ? t_.ends(e)[0] : t_.across(e, from));
        if (w >= 0) {
            s += 'V';
            if (opt_.pin_vertices) s += std::to_string(t_.position_in_nbhd(w, e));
            if (opt_.vertex_labels) put_label(s, 'o', (*opt_.vertex_labels)[w]);
            for (const auto& c : children(w, e)) s += edge(c, w);
        }
        s += ')';
        return memo_.emplace(key, std::move(s)).first->second;
    }

    // Child edges of w entered via e, in encoding order.
    std::vector<int> children(int w, int e) {
        const auto& nb = t_.nbhd[w];
        int n = static_cast<int>(nb.size());
        std::vector<int> out;
        if (opt_.pin_vertices) {
            int p = t_.position_in_nbhd(w, e);
            for (int k = 1; k < n; ++k) out.push_back(nb[(p + k) % n]);
        } else {
            for (int c : nb)
                if (c != e) out.push_back(c);
            std::sort(out.begin(), out.end(), [&](int a, int b) { return edge(a, w) < edge(b, w); });
        }
        return out;
    }

    std::string rooted_at(int leg) { return edge(leg, -1); }

private:
    const Tree& t_;
    const CanonOptions& opt_;
    std::map<int, int> leg_index_;
    std::map<std::pair<int, int>, std::string> memo_;
};

std::vector<int> root_candidates(const Tree& t, const CanonOptions& opt) {
    if (opt.pin_legs) return {t.leg_order[0]};
    return mask_members(t.legs_mask());
}

} // namespace

std::string canonical_form(const Tree& t, const CanonOptions& opt) {
    Encoder enc(t, opt);
    std::string best;
    bool first = true;
    for (int r : root_candidates(t, opt)) {
        std::string s = enc.rooted_at(r);
        if (first || s < best) best = std::move(s);
        first = false;
    }
    return best;
}

std::string canonical_form_unpinned(const Tree& t) { return canonical_form(t, {false, false, nullptr, nullptr}); }

namespace {

bool match_down(const Tree& a, const Tree& b, Encoder& ea, Encoder& eb, int e, int fa, int f, int fb, Relabeling& r) {
    r.edge_map[e] = f;
    int wa = a.is_eta() ? -1 : (fa < 0 ? a.ends(e)[0] : a.across(e, fa));
    int wb = b.is_eta() ? -1 : (fb < 0 ? b.ends(f)[0] : b.across(f, fb));
    if ((wa < 0) != (wb < 0)) return false;
    if (wa < 0) return true;
    r.vertex_map[wa] = wb;
    auto ca = ea.children(wa, e);
    auto cb = eb.children(wb, f);
    if (ca.size() != cb.size()) return false;
    for (std::size_t k = 0; k < ca.size(); ++k) {
        if (ea.edge(ca[k], wa) != eb.edge(cb[k], wb)) return false;
        if (!match_down(a, b, ea, eb, ca[k], wa, cb[k], wb, r)) return false;
    }
    return true;
}

} // namespace

std::optional<Relabeling> find_isomorphism(const Tree& a, const Tree& b, const CanonOptions& opt) {
    return find_isomorphism(a, b, opt, opt);
}

std::optional<Relabeling> find_isomorphism(const Tree& a, const Tree& b, const CanonOptions& oa,
                                           const CanonOptions& ob) {
    if (a.num_edges() != b.num_edges() || a.num_vertices() != b.num_vertices()) return std::nullopt;
    Encoder ea(a, oa), eb(b, ob);
    int ra = -1;
    std::string best;
    for (int r : root_candidates(a, oa)) {
        std::string s = ea.rooted_at(r);
        if (ra < 0 || s < best) {
            best = std::move(s);
            ra = r;
        }
    }
    for (int rb : root_candidates(b, ob)) {
        if (eb.rooted_at(rb) != best) continue;
        Relabeling rel{std::vector<int>(a.num_edges(), -1), std::vector<int>(a.num_vertices(), -1)};
        if (match_down(a, b, ea, eb, ra, -1, rb, -1, rel)) return rel;
    }
    return std::nullopt;
}

// ---- enumeration of iso classes ------------------------------------------

std::vector<Tree> trees_up_to(int max_vertices, int max_legs) {
    std::map<std::tuple<int, int, std::string>, Tree> found;
    if (max_legs >= 1) {
        Tree e = eta();
        found.emplace(std::make_tuple(0, 1, canonical_form_unpinned(e)), e);
    }
    for (int V = 1; V <= max_vertices; ++V) {
        // Parent arrays p[i] < i enumerate all labelled-by-order trees.
        std::vector<int> parent(V, -1);
        std::function<void(int)> shapes = [&](int i) {
            if (i == V) {
                std::vector<int> legs(V, 0);
                std::function<void(int, int)> dist = [&](int v, int used) {
                    if (v == V) {
                        if (used < 1) return;
                        std::vector<std::string> eids, vids;
                        std::vector<std::vector<int>> nb(V);
                        std::vector<int> order;
                        for (int x = 0; x < V; ++x) vids.push_back("v" + std::to_string(x));
                        for (int x = 1; x < V; ++x) {
                            int e = static_cast<int>(eids.size());
                            eids.push_back("i" + std::to_string(x));
                            nb[parent[x]].push_back(e);
                            nb[x].push_back(e);
                        }
                        int li = 0;
                        for (int x = 0; x < V; ++x)
                            for (int k = 0; k < legs[x]; ++k) {
                                int e = static_cast<int>(eids.size());
                                eids.push_back(std::to_string(li++));
                                nb[x].push_back(e);
                                order.push_back(e);
                            }
                        for (int x = 0; x < V; ++x)
                            if (nb[x].empty()) return;
                        Tree t = make_tree(eids, vids, nb, order);
                        found.emplace(std::make_tuple(V, used, canonical_form_unpinned(t)), std::move(t));
                        return;
                    }
                    for (int k = 0; used + k <= max_legs; ++k) {
                        legs[v] = k;
                        dist(v + 1, used + k);
                    }
                };
                dist(0, 0);
                return;
            }
            for (int p = 0; p < i; ++p) {
                parent[i] = p;
                shapes(i + 1);
            }
        };
        shapes(1);
    }
    std::vector<Tree> out;
    for (auto& [k, t] : found) out.push_back(std::move(t));
    return out;
}

std::string tree_summary(const Tree& t) {
    std::ostringstream os;
    os << "Tree(E=" << t.num_edges() << ", V=" << t.num_vertices() << ", legs=[";
    for (std::size_t k = 0; k < t.leg_order.size(); ++k) os << (k ? "," : "") << t.edge_ids[t.leg_order[k]];
    os << "])";
    return os.str();
}

} // namespace cdend

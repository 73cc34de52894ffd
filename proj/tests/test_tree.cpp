#include <doctest.h>

#include <algorithm>
#include <set>

#include "cdend/tree.hpp"
#include "fixtures.hpp"

using namespace cdend;
using namespace cdend::fixtures;

namespace {

std::string kind_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    return "";
}

// Breadth-first distance on the bipartite edge/vertex incidence graph.
int bfs_distance(const Tree& t, Elem x, Elem y) {
    const int n = t.num_edges() + t.num_vertices();
    auto node = [&](Elem a) { return a.is_vertex ? t.num_edges() + a.index : a.index; };
    std::vector<std::vector<int>> adj(n);
    for (int v = 0; v < t.num_vertices(); ++v)
        for (int e : t.nbhd[v]) {
            adj[e].push_back(t.num_edges() + v);
            adj[t.num_edges() + v].push_back(e);
        }
    std::vector<int> d(n, -1);
    std::vector<int> q{node(x)};
    d[node(x)] = 0;
    for (std::size_t i = 0; i < q.size(); ++i)
        for (int w : adj[q[i]])
            if (d[w] < 0) d[w] = d[q[i]] + 1, q.push_back(w);
    return d[node(y)] / 2;
}

} // namespace

TEST_CASE("standard trees are valid") {
    Tree s = star(3);
    CHECK(s.num_edges() == 3);
    CHECK(s.num_legs() == 3);
    CHECK(s.valence(0) == 3);
    Tree e = eta();
    CHECK(e.is_eta());
    CHECK(e.num_legs() == 1);
    CHECK(e.leg_order.size() == 1);
    Tree l = linear(3);
    CHECK(is_linear(l));
    CHECK(l.num_vertices() == 3);
    CHECK(l.num_legs() == 2);
    CHECK_FALSE(is_linear(star(3)));
    CHECK(star(8).num_legs() == 8);
}

TEST_CASE("L0 is eta up to isomorphism") {
    CHECK(canonical_form_unpinned(linear(0)) == canonical_form_unpinned(eta()));
    CHECK(canonical_form_unpinned(linear(1)) == canonical_form_unpinned(star(2)));
}

TEST_CASE("malformed trees are rejected with the right kind") {
    // two parallel edges between u and v form a cycle
    CHECK(kind_of([] { make_tree({"a", "b", "x", "y"}, {"u", "v"}, {{0, 1, 2}, {0, 1, 3}}, {2, 3}); }) ==
          "NotContractible");
    // disconnected
    CHECK(kind_of([] { make_tree({"a", "b"}, {"u", "v"}, {{0}, {1}}, {0, 1}); }) == "NotContractible");
    // an edge meeting three vertices
    CHECK(kind_of([] { make_tree({"a", "b", "c", "d"}, {"u", "v", "w"}, {{0, 1}, {0, 2}, {0, 3}}, {1, 2, 3}); }) ==
          "IncidenceViolation");
    // leg order misses a leg
    CHECK(kind_of([] { make_tree({"0", "1", "2"}, {"v"}, {{0, 1, 2}}, {0, 1}); }) == "BadOrdering");
    // a leg order listing an interior edge
    CHECK(kind_of([] { make_tree({"a", "c", "b"}, {"u", "v"}, {{0, 1}, {1, 2}}, {0, 1}); }) == "BadOrdering");
    CHECK(kind_of([] { make_tree({"a", "a"}, {"v"}, {{0, 1}}, {0, 1}); }) == "DuplicateId");
    // a single vertex with no edges has no legs
    CHECK_FALSE(kind_of([] { make_tree({}, {"v"}, {{}}, {}); }).empty());
}

TEST_CASE("validate_tree and to_raw round trip") {
    auto s = three_vertex_tree();
    Tree back = validate_tree(to_raw(*s));
    CHECK(back == *s);
}

TEST_CASE("distances and minimal paths in three_vertex_tree") {
    auto s = three_vertex_tree();
    int a = s->edge_index("a"), e = s->edge_index("e");
    int u = s->vertex_index("u"), w = s->vertex_index("w");
    CHECK(distance(*s, {false, a}, {false, e}) == 2);
    CHECK(path_to_string(*s, minimal_path(*s, {false, a}, {false, e})) == "a·u·c·v·e");
    CHECK(distance(*s, {true, u}, {true, w}) == 2);
    CHECK(distance(*s, {false, a}, {false, a}) == 0);
}

TEST_CASE("distance agrees with breadth-first search on small trees") {
    for (const auto& t : trees_up_to(4, 6)) {
        std::vector<Elem> all;
        for (int e = 0; e < t.num_edges(); ++e) all.push_back({false, e});
        for (int v = 0; v < t.num_vertices(); ++v) all.push_back({true, v});
        for (Elem x : all)
            for (Elem y : all) {
                if (x.is_vertex != y.is_vertex) continue;
                int d = distance(t, x, y);
                REQUIRE(d == bfs_distance(t, x, y));
                REQUIRE(d == distance(t, y, x));
                Path p = minimal_path(t, x, y);
                REQUIRE(p.front() == x);
                REQUIRE(p.back() == y);
                REQUIRE(static_cast<int>(p.size()) == 2 * d + 1);
            }
    }
}

TEST_CASE("boundary of subgraphs") {
    auto s = three_vertex_tree();
    int c = s->edge_index("c");
    CHECK(boundary(*s, edge_subgraph(c)) == std::vector<int>{c, c});
    SubGraph uv = vertex_span(*s, bit(s->vertex_index("u")) | bit(s->vertex_index("v")));
    std::vector<int> legs = boundary(*s, uv);
    std::vector<int> want{s->edge_index("a"), s->edge_index("b"), s->edge_index("d"), s->edge_index("e"),
                          s->edge_index("f")};
    std::sort(want.begin(), want.end());
    CHECK(legs == want);
    CHECK(boundary(*s, whole_subgraph(*s)).size() == 4);
}

TEST_CASE("union and intersection of subgraphs") {
    auto s = three_vertex_tree();
    int u = s->vertex_index("u"), v = s->vertex_index("v"), w = s->vertex_index("w");
    SubGraph su = star_subgraph(*s, u), sv = star_subgraph(*s, v), sw = star_subgraph(*s, w);
    auto i = subgraph_intersection(*s, su, sv);
    REQUIRE(i);
    CHECK(*i == edge_subgraph(s->edge_index("c")));
    CHECK_FALSE(subgraph_intersection(*s, su, sw));
    auto un = subgraph_union(*s, su, sv);
    REQUIRE(un);
    CHECK(un->verts == (bit(u) | bit(v)));
    CHECK_FALSE(subgraph_union(*s, su, sw));
}

TEST_CASE("subgraph lattice laws") {
    for (const auto& t : trees_up_to(3, 5)) {
        auto subs = all_subgraphs(t);
        for (const auto& g : subs) REQUIRE(is_valid_subgraph(t, g));
        for (const auto& a : subs)
            for (const auto& b : subs) {
                auto i = subgraph_intersection(t, a, b);
                if (i) {
                    REQUIRE(subgraph_contains(a, *i));
                    REQUIRE(subgraph_contains(b, *i));
                    auto un = subgraph_union(t, a, b);
                    REQUIRE(un);
                    REQUIRE(subgraph_contains(*un, a));
                    REQUIRE(subgraph_contains(*un, b));
                }
            }
    }
}

TEST_CASE("canonical forms separate iso classes and ignore relabelling") {
    auto trees = trees_up_to(4, 6);
    std::set<std::string> forms;
    for (const auto& t : trees) forms.insert(canonical_form_unpinned(t));
    CHECK(forms.size() == trees.size());

    auto s = three_vertex_tree();
    // same graph with edges and vertices listed in a different order
    std::vector<std::string> e{"f", "e", "d", "c", "b", "a"};
    Tree r = make_tree(e, {"w", "v", "u"}, {idx(e, {"d"}), idx(e, {"c", "d", "e", "f"}), idx(e, {"c", "b", "a"})},
                       idx(e, {"f", "b", "e", "a"}));
    CHECK(canonical_form(r) == canonical_form(*s));
    CHECK(find_isomorphism(r, *s));
    CHECK(canonical_form_unpinned(*s) == canonical_form_unpinned(*univalent_end_tree()));
}

TEST_CASE("small trees up to isomorphism") {
    // one vertex: the corollas with 1..6 legs, plus eta
    auto t1 = trees_up_to(1, 6);
    CHECK(t1.size() == 7);
    // two vertices: legs split as (p, q) with p <= q, p + q <= 6, p, q >= 0, p + q >= 1
    int pairs = 0;
    for (int p = 0; p <= 6; ++p)
        for (int q = p; p + q <= 6; ++q)
            if (p + q >= 1) ++pairs;
    auto t2 = trees_up_to(2, 6);
    CHECK(t2.size() == t1.size() + pairs);
}

TEST_CASE("rwb graph round trip preserves the unpinned tree") {
    for (const auto& t : trees_up_to(4, 6)) {
        RwbGraph g = to_rwb(t);
        REQUIRE(g.names.size() == static_cast<std::size_t>(t.num_edges() + t.num_vertices() + (t.is_eta() ? 1 : 0)));
        auto reds = std::count(g.color.begin(), g.color.end(), 'r');
        REQUIRE(reds == (t.is_eta() ? 2 : t.num_legs()));
        Tree back = from_rwb(g);
        REQUIRE(canonical_form_unpinned(back) == canonical_form_unpinned(t));
    }
    CHECK(to_dot(star(3)).find("graph") != std::string::npos);
}

TEST_CASE("subgraph_tree keeps host ids") {
    auto s = three_vertex_tree();
    SubGraph sv = star_subgraph(*s, s->vertex_index("v"));
    SubTree st = subgraph_tree(*s, sv);
    CHECK(st.tree.num_vertices() == 1);
    CHECK(st.tree.vertex_ids[0] == "v");
    CHECK(st.tree.num_legs() == 4);
    CHECK(st.tree.edge_ids[st.tree.nbhd[0][0]] == "c");
}

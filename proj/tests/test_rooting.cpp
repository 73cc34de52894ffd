#include <doctest.h>

#include <set>

#include "cdend/rooting.hpp"
#include "fixtures.hpp"

using namespace cdend;
using namespace cdend::fixtures;

namespace {

long factorial(int n) { return n <= 1 ? 1 : n * factorial(n - 1); }

// Rootedness straight from distances: position 0 of every vertex is its
// unique edge nearest the root leg.
bool rooted_by_distance(const Tree& t) {
    int r = t.leg_order[0];
    for (int v = 0; v < t.num_vertices(); ++v) {
        int d0 = t.edge_distance(t.nbhd[v][0], r);
        for (std::size_t k = 1; k < t.nbhd[v].size(); ++k)
            if (t.edge_distance(t.nbhd[v][k], r) <= d0) return false;
    }
    return true;
}

} // namespace

TEST_CASE("rooting eta") {
    auto e = unit_tree();
    auto r = rootify(e, 0);
    CHECK(r.rooted->is_eta());
    CHECK(is_rooted(*r.rooted));
}

TEST_CASE("two_vertex_four_leg_tree has four distinct rootings") {
    auto s = two_vertex_four_leg_tree();
    std::vector<TreePtr> rooted;
    for (int leg : s->leg_order) {
        auto r = rootify(s, leg);
        CHECK(is_rooted(*r.rooted));
        CHECK(rooted_by_distance(*r.rooted));
        CHECK(r.rooted->leg_order[0] == leg);
        CHECK(is_isomorphism(r.iso));
        rooted.push_back(r.rooted);
    }
    REQUIRE(rooted.size() == 4);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = i + 1; j < 4; ++j) CHECK_FALSE(*rooted[i] == *rooted[j]);
}

TEST_CASE("rooting two_vertex_four_leg_tree at leg 2") {
    auto s = two_vertex_four_leg_tree();
    auto r = rootify(s, s->edge_index("2"));
    const Tree& t = *r.rooted;
    // v is nearest the root through 2, u through c
    CHECK(t.edge_ids[t.nbhd[t.vertex_index("v")][0]] == "2");
    CHECK(t.edge_ids[t.nbhd[t.vertex_index("u")][0]] == "c");
}

TEST_CASE("rooting rejects interior edges") {
    auto s = two_vertex_four_leg_tree();
    bool threw = false;
    try {
        rootify(s, s->edge_index("c"));
    } catch (const ValidationError& e) {
        threw = e.kind() == "NotALeg";
    }
    CHECK(threw);
}

TEST_CASE("every rooting of every small tree is rooted") {
    for (const auto& s : shared_trees(4, 6))
        for (int leg : s->leg_order) REQUIRE(rooted_by_distance(*rootify(s, leg).rooted));
}

TEST_CASE("oriented endomorphisms of rooted L1") {
    auto t = rootify(L(1), 0).rooted;
    auto homs = enumerate_omega_homs(t, t);
    CHECK(homs.size() == 3);
    for (const auto& m : homs) CHECK(is_oriented(m));
}

TEST_CASE("corolla automorphisms form the symmetric group") {
    for (int n = 1; n <= 5; ++n) {
        auto s = corolla(n);
        auto a = automorphisms(s);
        CHECK(static_cast<long>(a.size()) == factorial(n));
        for (const auto& m : a) CHECK(is_isomorphism(m));
        if (n <= 4) {
            std::size_t isos = 0;
            for (const auto& m : enumerate_homs_bruteforce(s, s)) isos += is_isomorphism(m);
            CHECK(isos == a.size());
        }
    }
}

TEST_CASE("automorphisms of star(3) compose like the symmetric group") {
    auto a = automorphisms(corolla(3));
    REQUIRE(a.size() == 6);
    std::set<std::vector<int>> perms;
    for (const auto& m : a) perms.insert(m.phi0);
    CHECK(perms.size() == 6);
    for (const auto& x : a)
        for (const auto& y : a) CHECK(perms.count(compose(x, y).phi0) == 1);
    // non-abelian
    bool commute = true;
    for (const auto& x : a)
        for (const auto& y : a) commute = commute && compose(x, y).phi0 == compose(y, x).phi0;
    CHECK_FALSE(commute);
}

TEST_CASE("lift and amalgamate are inverse") {
    auto trees = shared_trees(3, 5);
    for (const auto& r : trees)
        for (const auto& s : trees)
            for (const auto& m : enumerate_homs_bruteforce(r, s)) {
                if (is_constant(m)) {
                    CHECK_THROWS_AS(lift(m, s->leg_order[0]), ValidationError);
                    continue;
                }
                for (int s0 : s->leg_order) {
                    Morphism w = lift(m, s0);
                    REQUIRE(is_oriented(w));
                    REQUIRE(same_maps(amalgamate(w, r, s), m));
                    REQUIRE(w.dom->leg_order[0] == find_root(m, s0));
                }
            }
}

TEST_CASE("rooted summands count each constant on a linear tree twice") {
    auto trees = shared_trees(3, 5);
    for (const auto& r : trees)
        for (const auto& s : trees) {
            std::size_t total = 0;
            for (auto n : rooted_summand_sizes(r, s)) total += n;
            std::size_t homs = enumerate_homs_structured(r, s).size();
            std::size_t doubled = is_linear(*r) && !r->is_eta() ? s->num_edges() : 0;
            REQUIRE(total == homs + doubled);
        }
}

TEST_CASE("structured enumeration agrees with brute force on small trees") {
    auto trees = shared_trees(3, 5);
    for (const auto& r : trees)
        for (const auto& s : trees) {
            auto a = enumerate_homs_structured(r, s);
            auto b = enumerate_homs_bruteforce(r, s);
            REQUIRE(a.size() == b.size());
            for (std::size_t i = 0; i < a.size(); ++i) REQUIRE(same_maps(a[i], b[i]));
        }
}

#include <doctest.h>

#include <random>
#include <set>

#include "cdend/morphism.hpp"
#include "cdend/factorization.hpp"
#include "fixtures.hpp"

using namespace cdend;
using namespace cdend::fixtures;

namespace {

std::string kind_of(const Morphism& m) {
    try {
        validate_morphism(m);
    } catch (const Error& e) {
        return e.kind();
    }
    return "";
}

long factorial(int n) { return n <= 1 ? 1 : n * factorial(n - 1); }

} // namespace

TEST_CASE("invalid morphisms report their defect") {
    auto s3 = corolla(3);
    SubGraph whole = whole_subgraph(*s3);
    CHECK(kind_of(Morphism{s3, s3, {0, 1}, {whole}}) == "BadMap");
    CHECK(kind_of(Morphism{s3, s3, {0, 0, 1}, {whole}}) == "NonInjectiveAtVertex");

    auto l1 = L(1), l2 = L(2);
    CHECK(kind_of(Morphism{l1, l2, {0, 2}, {star_subgraph(*l2, 0)}}) == "LegMismatch");
    SubGraph all1 = whole_subgraph(*l1);
    CHECK(kind_of(Morphism{l2, l1, {0, 1, 0}, {all1, all1}}) == "VertexOverlap");
    CHECK(kind_of(Morphism{l1, l2, {0, 1}, {star_subgraph(*l2, 0)}}) == "");
}

TEST_CASE("L1 has exactly four endomorphisms") {
    auto l1 = L(1);
    auto homs = enumerate_homs_bruteforce(l1, l1);
    CHECK(homs.size() == 4);
    std::set<std::vector<int>> edge_maps;
    for (const auto& m : homs) edge_maps.insert(m.phi0);
    CHECK(edge_maps.size() == 4);
}

TEST_CASE("maps out of eta pick an edge") {
    for (const auto& s : shared_trees(3, 5)) {
        auto homs = enumerate_homs_bruteforce(unit_tree(), s);
        REQUIRE(static_cast<int>(homs.size()) == s->num_edges());
    }
}

TEST_CASE("maps between corollas") {
    // a vertex of star(n) lands on the whole corolla or, when n = 2, on an edge
    for (int n = 1; n <= 5; ++n)
        for (int k = 1; k <= 5; ++k) {
            long want = (n == k ? factorial(n) : 0) + (n == 2 ? k : 0);
            CHECK(static_cast<long>(enumerate_homs_bruteforce(corolla(n), corolla(k)).size()) == want);
        }
}

TEST_CASE("automorphisms of three_vertex_tree swap legs at u and at v") {
    auto s = three_vertex_tree();
    auto homs = enumerate_homs_bruteforce(s, s);
    int isos = 0;
    for (const auto& m : homs) isos += is_isomorphism(m);
    CHECK(isos == 4);
}

TEST_CASE("identity, composition and inverses") {
    auto trees = shared_trees(2, 4);
    std::mt19937_64 rng(11);
    for (const auto& r : trees)
        for (const auto& s : trees) {
            auto homs = enumerate_homs_bruteforce(r, s);
            for (const auto& m : homs) {
                REQUIRE(same_maps(compose(identity(s), m), m));
                REQUIRE(same_maps(compose(m, identity(r)), m));
                if (is_isomorphism(m)) REQUIRE(same_maps(compose(inverse(m), m), identity(r)));
            }
        }
    // associativity on random composable triples
    for (int trial = 0; trial < 300; ++trial) {
        auto pick = [&] { return trees[rng() % trees.size()]; };
        TreePtr a = pick(), b = pick(), c = pick(), d = pick();
        auto f = enumerate_homs_bruteforce(a, b), g = enumerate_homs_bruteforce(b, c), h = enumerate_homs_bruteforce(c, d);
        if (f.empty() || g.empty() || h.empty()) continue;
        const auto& x = f[rng() % f.size()];
        const auto& y = g[rng() % g.size()];
        const auto& z = h[rng() % h.size()];
        Morphism lhs = compose(compose(z, y), x), rhs = compose(z, compose(y, x));
        REQUIRE(same_maps(lhs, rhs));
        validate_morphism(lhs);
    }
}

TEST_CASE("compose rejects mismatched domains") {
    auto l1 = L(1), l2 = L(2);
    bool threw = false;
    try {
        compose(identity(l1), identity(l2));
    } catch (const ValidationError& e) {
        threw = e.kind() == "DomainMismatch";
    }
    CHECK(threw);
}

TEST_CASE("complete morphisms correspond to morphisms") {
    for (const auto& r : shared_trees(3, 5))
        for (const auto& s : shared_trees(3, 4))
            for (const auto& m : enumerate_homs_bruteforce(r, s)) {
                CompleteMorphism c = to_complete(m);
                validate_complete(c);
                REQUIRE(c.alpha1.size() == all_subgraphs(*r).size());
                REQUIRE(same_maps(from_complete(c), m));
                for (const auto& [g, h] : c.alpha1) REQUIRE(boundary(*s, h).size() == boundary(*r, g).size());
            }
}

TEST_CASE("complete composition matches composition") {
    auto trees = shared_trees(2, 4);
    for (const auto& a : trees)
        for (const auto& b : trees)
            for (const auto& c : trees) {
                auto f = enumerate_homs_bruteforce(a, b);
                auto g = enumerate_homs_bruteforce(b, c);
                if (f.empty() || g.empty()) continue;
                const auto& x = f.back();
                const auto& y = g.back();
                REQUIRE(same_maps(from_complete(compose_complete(to_complete(y), to_complete(x))), compose(y, x)));
            }
}

TEST_CASE("a broken lattice map is rejected") {
    auto l2 = L(2);
    CompleteMorphism c = to_complete(identity(l2));
    c.alpha1[whole_subgraph(*l2)] = star_subgraph(*l2, 0);
    CHECK_THROWS_AS(validate_complete(c), ValidationError);
}

TEST_CASE("a codegeneracy after the matching inner coface is invertible") {
    auto l2 = L(2);
    Coface d = inner_coface(l2, 1);
    for (const auto& s : codegeneracies(l2)) {
        Morphism comp = compose(s, d.map);
        CHECK(is_isomorphism(comp));
        CHECK(degree(*s.cod) + 1 == degree(*l2));
    }
    CHECK(codegeneracies(l2).size() == 2);
}

TEST_CASE("constant maps") {
    auto l2 = L(2), s3 = corolla(3);
    int constants = 0;
    for (const auto& m : enumerate_homs_bruteforce(l2, s3)) constants += is_constant(m);
    CHECK(constants == 3);
    for (const auto& m : enumerate_homs_bruteforce(s3, s3)) CHECK_FALSE(is_constant(m));
}

TEST_CASE("search cap is enforced") {
    CHECK_THROWS_AS(enumerate_homs_bruteforce(corolla(5), corolla(5), 5), SizeBoundExceeded);
}

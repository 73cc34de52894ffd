#include <doctest.h>

#include <algorithm>
#include <random>

#include "cdend/nerve.hpp"
#include "cdend/rooting.hpp"
#include "fixtures.hpp"

using namespace cdend;
using namespace cdend::fixtures;

namespace {

std::vector<std::string> nbhd_ids(const Tree& t, const std::string& v) {
    std::vector<std::string> out;
    for (int e : t.nbhd[t.vertex_index(v)]) out.push_back(t.edge_ids[e]);
    return out;
}

std::vector<std::string> edge_ids_of(const Morphism& m) {
    std::vector<std::string> out;
    for (int e : m.phi0) out.push_back(m.cod->edge_ids[e]);
    return out;
}

std::size_t ipow(std::size_t b, int e) { return e == 0 ? 1 : b * ipow(b, e - 1); }

void check_functorial(const Presheaf& x, const std::vector<TreePtr>& trees, std::mt19937_64& rng, int trials) {
    for (int t = 0; t < trials; ++t) {
        TreePtr a = trees[rng() % trees.size()], b = trees[rng() % trees.size()], c = trees[rng() % trees.size()];
        auto f = enumerate_homs_structured(a, b), g = enumerate_homs_structured(b, c);
        if (f.empty() || g.empty()) continue;
        const auto& phi = f[rng() % f.size()];
        const auto& psi = g[rng() % g.size()];
        auto vals = x.value(c);
        if (vals.empty()) continue;
        const auto& el = vals[rng() % vals.size()];
        REQUIRE(x.restrict(identity(c), el) == el);
        auto lhs = x.restrict(compose(psi, phi), el);
        auto rhs = x.restrict(phi, x.restrict(psi, el));
        REQUIRE(lhs == rhs);
        auto va = x.value(a);
        REQUIRE(std::binary_search(va.begin(), va.end(), lhs));
    }
}

} // namespace

TEST_CASE("nerve counts on linear trees") {
    auto c = nerve(example_C()), cp = nerve(example_Cprime()), a = nerve(example_A());
    for (int m = 0; m <= 4; ++m) {
        CHECK(c->value(L(m)).size() == ipow(4, m));
        CHECK(cp->value(L(m)).size() == ipow(4, m));
        CHECK(a->value(L(m)).size() == ipow(2, m));
    }
    CHECK(c->value(unit_tree()).size() == 1);
    CHECK(c->value(corolla(3)).empty());
    auto ass = nerve(builtin_operad("Ass"));
    for (int n = 1; n <= 5; ++n) {
        std::size_t f = 1;
        for (int k = 2; k < n; ++k) f *= k;
        CHECK(ass->value(corolla(n)).size() == f);
    }
}

TEST_CASE("encode and decode nerve elements") {
    auto ass = nerve(builtin_operad("Ass"));
    auto s = three_vertex_tree();
    auto vals = ass->value(s);
    CHECK(vals.size() == 2 * 6 * 1);
    for (const auto& x : vals) {
        NerveElement n = ass->decode(*s, x);
        CHECK(n.vertex_ops.size() == 3);
        CHECK(ass->encode(*s, n) == x);
    }
}

TEST_CASE("representables count morphisms") {
    auto l1 = L(1);
    auto r = representable(l1);
    CHECK(r->value(l1).size() == 4);
    for (const auto& t : shared_trees(2, 4)) CHECK(r->value(t).size() == enumerate_homs_bruteforce(t, l1).size());
    for (const auto& m : enumerate_homs_bruteforce(l1, l1))
        CHECK(same_maps(decode_morphism(l1, l1, encode_morphism(m)), m));
}

TEST_CASE("presheaves are functorial") {
    std::mt19937_64 rng(2);
    auto trees = shared_trees(3, 4);
    check_functorial(*nerve(example_C()), trees, rng, 300);
    check_functorial(*nerve(builtin_operad("Ass")), trees, rng, 300);
    check_functorial(*representable(three_vertex_tree()), trees, rng, 200);
    check_functorial(*doubled_representable(L(2)), trees, rng, 200);
}

TEST_CASE("Segal core of a linear tree") {
    auto c = nerve(example_C());
    auto l3 = L(3);
    CHECK(segal_core_homs(*c, l3).size() == 64);
    for (const auto& x : c->value(l3)) CHECK(segal_map(*c, l3, x).size() == 3);
    CHECK(segal_check_tree(*c, three_vertex_tree()).pass);
}

TEST_CASE("nerves of the example operads are Segal and fill inner horns") {
    for (auto name : {"C", "Cprime", "A"}) {
        auto n = nerve(builtin_operad(name));
        CheckReport s = is_segal(*n, 4, 6);
        CHECK(s.pass);
        CHECK(s.trees_checked > 0);
        CheckReport h = check_inner_horns(*n, 3, 6);
        CHECK(h.pass);
        CHECK(h.instances_checked > 0);
    }
    auto ass = nerve(builtin_operad("Ass"));
    CHECK(is_segal(*ass, 3, 5).pass);
    CHECK(check_inner_horns(*ass, 2, 5).pass);
}

TEST_CASE("the doubled representable is not Segal") {
    auto d = doubled_representable(L(2));
    CheckReport s = is_segal(*d, 4, 6);
    CHECK_FALSE(s.pass);
    CHECK_FALSE(s.witness.empty());
    CheckReport h = check_inner_horns(*d, 3, 6);
    CHECK_FALSE(h.pass);
    CHECK_FALSE(h.witness.empty());
    std::string w;
    CHECK_FALSE(unique_inner_filler(*d, L(2), inner_coface(L(2), 1), &w));
    CHECK_FALSE(w.empty());
}

TEST_CASE("a representable on a corolla is not Segal") {
    CheckReport r = is_segal(*representable(corolla(3)), 2, 6);
    CHECK_FALSE(r.pass);
    CHECK(r.witness.find("surjective") != std::string::npos);
}

TEST_CASE("inner horn of L2") {
    auto l2 = L(2);
    Coface d = inner_coface(l2, 1);
    Horn h = inner_horn(l2, d);
    CHECK(h.faces.size() == 2); // the two outer faces
    auto c = nerve(example_C());
    CHECK(inner_horn_homs(*c, l2, d).size() == 16);
    CHECK(unique_inner_filler(*c, l2, d));
    CHECK_THROWS_AS(inner_horn(l2, cofaces(l2)[0]), ValidationError);
}

TEST_CASE("graft tree neighbourhoods") {
    auto z1 = graft_tree(2, 3, 1);
    CHECK(nbhd_ids(*z1, "a") == std::vector<std::string>{"0", "e", "4"});
    CHECK(nbhd_ids(*z1, "b") == std::vector<std::string>{"e", "1", "2", "3"});
    auto z2 = graft_tree(2, 3, 2);
    CHECK(nbhd_ids(*z2, "a") == std::vector<std::string>{"0", "1", "e"});
    CHECK(nbhd_ids(*z2, "b") == std::vector<std::string>{"e", "2", "3", "4"});
    auto z3 = graft_tree(3, 2, 1);
    CHECK(nbhd_ids(*z3, "a") == std::vector<std::string>{"0", "e", "3", "4"});
    CHECK(nbhd_ids(*z3, "b") == std::vector<std::string>{"e", "1", "2"});
    for (auto z : {z1, z2, z3}) CHECK(is_rooted(*z));
    CHECK_THROWS_AS(graft_tree(2, 3, 3), ValidationError);
    CHECK_THROWS_AS(graft_tree(0, 3, 1), ValidationError);
}

TEST_CASE("graft tree cofaces") {
    GraftMaps g = graft_maps(3, 2, 2);
    CHECK(edge_ids_of(g.delta_e) == std::vector<std::string>{"0", "1", "2", "3", "4"});
    CHECK(edge_ids_of(g.delta_a) == std::vector<std::string>{"e", "2", "3"});
    CHECK(edge_ids_of(g.delta_b) == std::vector<std::string>{"0", "1", "e", "4"});
    for (const auto* m : {&g.delta_a, &g.delta_b, &g.delta_e}) {
        validate_morphism(*m);
        CHECK(is_oriented(*m));
        CHECK(in_xi_plus(*m));
    }
}

TEST_CASE("inner face of a graft tree computes o_i") {
    AssociativeCyclicOperad ass_op;
    auto ass = nerve(builtin_operad("Ass"));
    auto c = nerve(example_C());
    for (int m = 1; m <= 3; ++m)
        for (int n = 0; m + n <= 4; ++n)
            for (int i = 1; i <= m; ++i) {
                GraftMaps g = graft_maps(m, n, i);
                int a = g.z->vertex_index("a"), b = g.z->vertex_index("b");
                for (auto nv : {ass, c}) {
                    for (const auto& x : nv->value(g.z)) {
                        NerveElement el = nv->decode(*g.z, x);
                        NerveElement de = nv->decode(*g.delta_e.dom, nv->restrict(g.delta_e, x));
                        REQUIRE(de.vertex_ops[0] == nv->operad().circ(el.vertex_ops[a], i, el.vertex_ops[b]));
                    }
                }
            }
}

TEST_CASE("restricting along psi_sigma is the symmetric action") {
    for (auto name : {"Ass", "C"}) {
        auto nv = nerve(builtin_operad(name));
        for (int q = 1; q <= 4; ++q) {
            auto s = corolla(q);
            for (const auto& sigma : all_perms(q)) {
                Morphism psi = psi_map(sigma);
                for (const auto& x : nv->value(s)) {
                    Op o = nv->decode(*s, x).vertex_ops[0];
                    Op r = nv->decode(*s, nv->restrict(psi, x)).vertex_ops[0];
                    REQUIRE(r == nv->operad().act(o, sigma));
                }
            }
        }
    }
}

TEST_CASE("phi maps rotate legs") {
    Morphism p = phi_map(2, 3, 1);
    validate_morphism(p);
    CHECK(edge_ids_of(p) == std::vector<std::string>{"1", "2", "3", "4", "0", "e"});
    Morphism q = phi_map(2, 3, 2);
    validate_morphism(q);
    CHECK(q.cod->num_vertices() == 2);
    CHECK(nbhd_ids(*q.cod, "a").size() == 4); // Z^1_{3,2}
}

TEST_CASE("psi and phi squares on C and Ass") {
    auto ass = builtin_operad("Ass");
    auto c = builtin_operad("C");
    for (int m = 1; m <= 4; ++m)
        for (int n = 0; m + n <= 5; ++n)
            for (int i = 1; i <= m; ++i) {
                if (i == m && n == 0) continue;
                std::string w;
                CHECK_MESSAGE(verify_psi_phi_squares(*c, m, n, i, &w), w);
                CHECK_MESSAGE(verify_psi_phi_squares(*ass, m, n, i, &w), w);
            }
}

#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "cdend/operad.hpp"
#include "cdend/rooting.hpp"
#include "fixtures.hpp"

using namespace cdend;
using namespace cdend::fixtures;

namespace {

std::string validation_kind(const CyclicOperad& o, int bound = -1, std::string* witness = nullptr) {
    try {
        validate_operad(o, bound);
    } catch (const Error& e) {
        if (witness) *witness = e.witness();
        return e.kind();
    }
    return "";
}

// 2x2 matrices over F2 packed as bits (a b; c d) -> a | b<<1 | c<<2 | d<<3,
// with transpose as the anti-involution.
struct MatrixMonoid {
    std::vector<std::string> names;
    std::vector<std::vector<int>> mult;
    std::vector<int> transpose;
    int identity = 0;

    MatrixMonoid() {
        auto get = [](int m, int r, int c) { return (m >> (2 * r + c)) & 1; };
        mult.assign(16, std::vector<int>(16));
        transpose.assign(16, 0);
        for (int x = 0; x < 16; ++x) {
            names.push_back("m" + std::to_string(x));
            transpose[x] = get(x, 0, 0) | get(x, 1, 0) << 1 | get(x, 0, 1) << 2 | get(x, 1, 1) << 3;
            for (int y = 0; y < 16; ++y) {
                int z = 0;
                for (int r = 0; r < 2; ++r)
                    for (int c = 0; c < 2; ++c)
                        z |= ((get(x, r, 0) & get(y, 0, c)) ^ (get(x, r, 1) & get(y, 1, c))) << (2 * r + c);
                mult[x][y] = z;
            }
        }
        identity = 1 | 8;
    }
};

// The boundary walk of a planar tree whose vertices carry cyclic orders on
// their neighbourhood positions; returns the word after 0 on leg positions.
std::vector<int> boundary_walk(const Tree& t, const std::vector<Op>& labels) {
    std::vector<int> leg_pos(t.num_edges(), -1);
    for (std::size_t k = 0; k < t.leg_order.size(); ++k) leg_pos[t.leg_order[k]] = static_cast<int>(k);
    auto succ = [&](int v, int e) {
        std::vector<int> cyc{0};
        cyc.insert(cyc.end(), labels[v].data.begin(), labels[v].data.end());
        int p = t.position_in_nbhd(v, e);
        auto it = std::find(cyc.begin(), cyc.end(), p);
        ++it;
        return t.nbhd[v][it == cyc.end() ? cyc[0] : *it];
    };
    int start = t.leg_order[0];
    int v = t.ends(start)[0];
    int e = start;
    std::vector<int> word;
    for (;;) {
        int f = succ(v, e);
        while (!t.is_leg(f)) {
            v = t.across(f, v);
            f = succ(v, f);
        }
        if (f == start) break;
        word.push_back(leg_pos[f]);
        e = f;
    }
    return word;
}

std::multiset<std::size_t> orbit_sizes_arity_one(const CyclicOperad& o) {
    std::set<Op> seen;
    std::multiset<std::size_t> out;
    for (const auto& x : o.all_ops(1)) {
        if (x.arity() != 1 || seen.count(x)) continue;
        std::set<Op> orbit{x, o.act(x, {1, 0})};
        seen.insert(orbit.begin(), orbit.end());
        out.insert(orbit.size());
    }
    return out;
}

// Maps out of A pick y with y o_1 y = 1 and y . tau = y.
std::size_t maps_from_A_oracle(const CyclicOperad& b) {
    std::size_t n = 0;
    for (const auto& y : b.all_ops(1))
        if (y.arity() == 1 && b.circ(y, 1, y) == b.unit(y.profile[0]) && b.act(y, {1, 0}) == y) ++n;
    return n;
}

} // namespace

TEST_CASE("built-in operads satisfy the axioms") {
    for (auto name : {"C", "Cprime", "A"}) CHECK(validation_kind(*builtin_operad(name)).empty());
    AssociativeCyclicOperad ass;
    CHECK(validation_kind(ass, 4).empty());
}

TEST_CASE("permutation helpers") {
    CHECK(tau_perm(3) == Perm{1, 2, 0});
    CHECK(perm_power(tau_perm(5), 5) == identity_perm(5));
    Perm p{2, 0, 3, 1};
    CHECK(perm_compose(p, perm_inverse(p)) == identity_perm(4));
    CHECK(all_perms(4).size() == 24);
}

TEST_CASE("involutive monoids: the matrix monoid is accepted") {
    MatrixMonoid m;
    auto o = from_involutive_monoid("M", m.names, m.mult, m.transpose);
    CHECK(validation_kind(*o).empty());
}

TEST_CASE("involutive monoid errors") {
    MatrixMonoid m;
    auto kind = [](auto&& f) {
        try {
            f();
        } catch (const Error& e) {
            return e.kind();
        }
        return std::string();
    };
    // no unit
    CHECK(kind([] { from_involutive_monoid("X", {"a", "b"}, {{0, 0}, {0, 0}}, {0, 1}); }) == "NotAMonoid");
    // not associative: a unit 0 and 1*1 = 2, 2*1 = 1, 1*2 = 0
    CHECK(kind([] {
              from_involutive_monoid("X", {"e", "p", "q"}, {{0, 1, 2}, {1, 2, 0}, {2, 1, 0}}, {0, 1, 2});
          }) == "NotAMonoid");
    // dagger not an involution
    CHECK(kind([] { from_involutive_monoid("X", {"00", "01", "10", "11"}, {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1},
                                                                              {3, 2, 1, 0}},
                                           {0, 2, 3, 1}); }) == "NotAnInvolution");
    // identity on matrices is an involution but does not reverse products
    std::vector<int> id(16);
    std::iota(id.begin(), id.end(), 0);
    CHECK(kind([&] { from_involutive_monoid("X", m.names, m.mult, id); }) == "NotAnInvolution");
}

TEST_CASE("mutating the transposition action of C breaks the axioms") {
    auto c = example_C();
    auto ops = c->ops({0, 0});
    REQUIRE(ops.size() == 4);
    for (int x = 0; x < 4; ++x)
        for (int y = 0; y < 4; ++y) {
            Op old = c->act(ops[x], {1, 0});
            if (ops[y] == old) continue;
            FiniteCyclicOperad mutated = *c;
            mutated.set_act(ops[x], {1, 0}, ops[y]);
            std::string witness;
            CHECK_FALSE(validation_kind(mutated, -1, &witness).empty());
            CHECK_FALSE(witness.empty());
        }
}

TEST_CASE("a broken composition table is rejected") {
    auto c = example_C();
    auto ops = c->ops({0, 0});
    FiniteCyclicOperad broken = *c;
    broken.set_circ(ops[1], 1, ops[1], ops[1]);
    CHECK(validation_kind(broken) == "OperadAxiomViolation");
}

TEST_CASE("orbits of the transposition on unary operations") {
    CHECK(orbit_sizes_arity_one(*example_C()) == std::multiset<std::size_t>{1, 1, 2});
    CHECK(orbit_sizes_arity_one(*example_Cprime()) == std::multiset<std::size_t>{1, 1, 1, 1});
}

TEST_CASE("maps of cyclic operads out of A") {
    auto a = example_A();
    for (auto target : {"A", "C", "Cprime"}) {
        auto b = builtin_operad(target);
        auto maps = enumerate_cyc_maps(*a, *b);
        CHECK(maps.size() == maps_from_A_oracle(*b));
        for (const auto& m : maps) CHECK(is_cyc_map(*a, *b, m));
    }
    CHECK(enumerate_cyc_maps(*a, *example_C()).size() == 2);
    CHECK(enumerate_cyc_maps(*a, *example_Cprime()).size() == 4);
}

TEST_CASE("evaluating a single vertex returns its label") {
    AssociativeCyclicOperad ass;
    auto s = corolla(4);
    for (const auto& o : ass.ops({0, 0, 0, 0})) CHECK(evaluate_decorated_tree(ass, {s, {0, 0, 0, 0}, {o}}) == o);
}

TEST_CASE("evaluating L2 multiplies, and reversing the legs applies the involution") {
    MatrixMonoid m;
    auto o = from_involutive_monoid("M", m.names, m.mult, m.transpose);
    auto ops = o->ops({0, 0});
    auto l2 = L(2);
    auto l2r = share(make_tree(l2->edge_ids, l2->vertex_ids, l2->nbhd, {2, 0}));
    for (int x = 0; x < 16; ++x)
        for (int y = 0; y < 16; ++y) {
            int xy = m.mult[x][y];
            REQUIRE(evaluate_decorated_tree(*o, {l2, {0, 0, 0}, {ops[x], ops[y]}}) == ops[xy]);
            REQUIRE(evaluate_decorated_tree(*o, {l2r, {0, 0, 0}, {ops[x], ops[y]}}) == ops[m.transpose[xy]]);
        }
}

TEST_CASE("associative evaluation is the boundary walk of the planar tree") {
    AssociativeCyclicOperad ass;
    std::mt19937_64 rng(5);
    auto trees = shared_trees(3, 5);
    trees.push_back(three_vertex_tree());
    for (const auto& t : trees) {
        if (t->is_eta()) continue;
        std::vector<int> coloring(t->num_edges(), 0);
        for (int trial = 0; trial < 5; ++trial) {
            std::vector<Op> labels;
            for (int v = 0; v < t->num_vertices(); ++v) {
                auto choices = ass.ops(Profile(t->valence(v), 0));
                labels.push_back(choices[rng() % choices.size()]);
            }
            Op r = evaluate_decorated_tree(ass, {t, coloring, labels});
            REQUIRE(r.data == boundary_walk(*t, labels));
        }
    }
}

TEST_CASE("rotating the leg order rotates the composite") {
    AssociativeCyclicOperad ass;
    auto s = three_vertex_tree();
    std::vector<int> coloring(s->num_edges(), 0);
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<Op> labels;
        for (int v = 0; v < s->num_vertices(); ++v) {
            auto choices = ass.ops(Profile(s->valence(v), 0));
            labels.push_back(choices[rng() % choices.size()]);
        }
        Op a = evaluate_decorated_tree(ass, {s, coloring, labels});
        auto lo = s->leg_order;
        std::rotate(lo.begin(), lo.begin() + 1, lo.end());
        auto rotated = share(make_tree(s->edge_ids, s->vertex_ids, s->nbhd, lo));
        Op b = evaluate_decorated_tree(ass, {rotated, coloring, labels});
        REQUIRE(b == ass.act(a, tau_perm(4)));
    }
}

TEST_CASE("evaluation rejects mismatched colours") {
    auto c = example_C();
    auto l1 = L(1);
    Op bad{{0, 0, 0}, {0}};
    CHECK_THROWS_AS(evaluate_decorated_tree(*c, {l1, {0, 0}, {bad}}), ValidationError);
}

TEST_CASE("elements of the free operad on three_vertex_tree") {
    auto s = three_vertex_tree();
    auto col = [&](std::initializer_list<const char*> ids) {
        Profile p;
        for (auto id : ids) p.push_back(s->edge_index(id));
        return p;
    };
    FreeElement u = free_generator(s, s->vertex_index("u"));
    FreeElement v = free_generator(s, s->vertex_index("v"));
    FreeElement w = free_generator(s, s->vertex_index("w"));
    CHECK(free_profile(u) == col({"c", "b", "a"}));
    CHECK(free_profile(v) == col({"c", "d", "e", "f"}));
    CHECK(free_profile(free_circ(s, v, 1, w)) == col({"c", "e", "f"}));

    FreeElement vt = free_act(s, v, tau_perm(4));
    CHECK(free_profile(vt) == col({"d", "e", "f", "c"}));
    FreeElement x = free_circ(s, vt, 3, u);
    CHECK(free_profile(x) == col({"d", "e", "f", "b", "a"}));
    CHECK(is_free_element(s, x));

    FreeElement vt2 = free_act(s, v, perm_power(tau_perm(4), 2));
    FreeElement y = free_circ(s, free_circ(s, vt2, 2, u), 4, w);
    CHECK(free_profile(y) == col({"e", "f", "b", "a"}));

    FreeElement z = free_circ(s, u, 1, free_act(s, u, tau_perm(3)));
    CHECK(free_profile(z) == col({"c", "a", "c", "a"}));

    std::set<std::string> keys;
    for (const auto& e : free_elements(s, 2)) keys.insert(free_key(s, e));
    CHECK(keys.count(free_key(s, x)) == 1);
    CHECK(keys.count(free_key(s, z)) == 1);
    CHECK(keys.count(free_key(s, y)) == 0); // three vertices
    CHECK(free_key(s, free_act(s, vt, perm_power(tau_perm(4), 3))) == free_key(s, v));
}

TEST_CASE("the free operad on L1 grows without bound") {
    auto l1 = L(1);
    std::size_t prev = 0;
    for (int k = 0; k <= 3; ++k) {
        std::size_t n = free_elements(l1, k).size();
        CHECK(n > prev);
        prev = n;
    }
}

TEST_CASE("C is faithful on small hom-sets") {
    auto trees = shared_trees(3, 5);
    for (const auto& r : trees)
        for (const auto& s : trees) {
            std::set<std::string> keys;
            auto homs = enumerate_homs_structured(r, s);
            for (const auto& m : homs) {
                REQUIRE(is_free_map(r, s, apply_functor_C(m)));
                keys.insert(functor_image_key(m));
            }
            REQUIRE(keys.size() == homs.size());
        }
}

TEST_CASE("v o_1 (v . tau) on C(L1) is a map of cyclic operads not in the image of C") {
    auto l1 = L(1);
    FreeElement v = free_generator(l1, 0);
    FreeElement f_v = free_circ(l1, v, 1, free_act(l1, v, tau_perm(2)));
    CHECK(free_profile(f_v) == Profile{0, 0});
    FunctorImage f{{0, 0}, {f_v}};
    CHECK(is_free_map(l1, l1, f));
    for (const auto& phi : enumerate_homs_structured(l1, l1)) {
        FunctorImage g = apply_functor_C(phi);
        bool same = g.on_colors == f.on_colors && free_key(l1, g.on_generators[0]) == free_key(l1, f_v);
        CHECK_FALSE(same);
    }
}

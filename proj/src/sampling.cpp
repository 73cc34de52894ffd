#include "cdend/sampling.hpp"

#include <map>
#include <random>

#include "cdend/factorization.hpp"
#include "cdend/nerve.hpp"
#include "cdend/rooting.hpp"

namespace cdend {

Morphism inert_inclusion(const TreePtr& b, const SubGraph& h) {
    if (h.is_edge()) return Morphism{share(eta(b->edge_ids[h.single_edge()])), b, {h.single_edge()}, {}};
    SubTree st = subgraph_tree(*b, h);
    Morphism m{share(st.tree), b, st.edge_to_host, {}};
    for (int v : st.vertex_to_host) m.phi1.push_back(star_subgraph(*b, v));
    return m;
}

std::vector<LiftingSquare> random_lifting_squares(std::size_t count, std::uint64_t seed, int max_vertices,
                                                  int max_legs) {
    std::vector<TreePtr> trees;
    for (auto& t : trees_up_to(max_vertices, max_legs)) trees.push_back(share(std::move(t)));
    std::map<std::pair<std::size_t, std::size_t>, std::vector<Morphism>> homs;
    auto hom = [&](std::size_t a, std::size_t b) -> const std::vector<Morphism>& {
        auto it = homs.find({a, b});
        if (it == homs.end()) it = homs.emplace(std::make_pair(a, b), enumerate_homs_structured(trees[a], trees[b])).first;
        return it->second;
    };
    std::mt19937_64 rng(seed);
    auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
    std::vector<LiftingSquare> out;
    while (out.size() < count) {
        std::size_t r = pick(trees.size()), s = pick(trees.size()), b = pick(trees.size());
        const auto& sb = hom(s, b);
        std::vector<const Morphism*> active;
        for (const auto& f : hom(r, s))
            if (is_active(f)) active.push_back(&f);
        if (sb.empty() || active.empty()) continue;
        const Morphism& beta = sb[pick(sb.size())];
        const Morphism& phi = *active[pick(active.size())];
        Morphism k = compose(beta, phi);
        SubGraph img = image(k);
        std::vector<SubGraph> over;
        for (const auto& h : all_subgraphs(*trees[b]))
            if (subgraph_contains(h, img)) over.push_back(h);
        Morphism psi = inert_inclusion(trees[b], over[pick(over.size())]);
        auto alpha = factor_through(k, psi);
        if (!alpha) continue;
        out.push_back({phi, psi, *alpha, beta});
    }
    return out;
}

std::vector<Morphism> all_lifts(const LiftingSquare& sq) {
    std::vector<Morphism> out;
    for (auto& g : enumerate_homs_structured(sq.phi.cod, sq.psi.dom))
        if (same_maps(compose(g, sq.phi), sq.alpha) && same_maps(compose(sq.psi, g), sq.beta))
            out.push_back(std::move(g));
    return out;
}

} // namespace cdend

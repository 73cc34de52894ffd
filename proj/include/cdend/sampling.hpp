#pragma once

#include <cstdint>
#include <vector>

#include "cdend/morphism.hpp"

namespace cdend {

// R -phi-> S over A -psi-> B with psi . alpha = beta . phi; phi active and
// psi inert.
struct LiftingSquare {
    Morphism phi;
    Morphism psi;
    Morphism alpha;
    Morphism beta;
};

// The inert inclusion of a subgraph, as a map out of its subtree.
Morphism inert_inclusion(const TreePtr& b, const SubGraph& h);

// Commuting active/inert squares drawn from trees of bounded size.
std::vector<LiftingSquare> random_lifting_squares(std::size_t count, std::uint64_t seed, int max_vertices = 3,
                                                  int max_legs = 5);

// Every gamma : S -> A with gamma . phi = alpha and psi . gamma = beta.
std::vector<Morphism> all_lifts(const LiftingSquare& sq);

} // namespace cdend

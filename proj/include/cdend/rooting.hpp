#pragma once

#include <cstdint>
#include <vector>

#include "cdend/morphism.hpp"

namespace cdend {

// leg_order[0] is a root: every vertex's position-0 edge is the unique
// neighbour closest to it.
bool is_rooted(const Tree& t);
// Both ends rooted and phi0 never moves an output further from the root
// than an input.
bool is_oriented(const Morphism& m);

struct RootingResult {
    TreePtr rooted;
    Morphism iso; // rooted -> original, phi0 the identity
};

// Rotates every nbhd so the edge closest to s0 comes first and the leg
// order so s0 comes first; indices and ids are unchanged.  NotALeg.
RootingResult rootify(const TreePtr& s, int s0);

// The leg of dom whose image is closest to s0.  ConstantMorphism.
int find_root(const Morphism& phi, int s0);

// phi viewed as an oriented map between rooted trees.  ConstantMorphism.
Morphism lift(const Morphism& phi, int s0);

// Transports an oriented map between rootings of r and s back to r -> s.
// NotOriented when omega is not oriented or its ends are not rootings of r, s.
Morphism amalgamate(const Morphism& omega, const TreePtr& r, const TreePtr& s);

// Every oriented map between rooted trees, sorted canonically.
std::vector<Morphism> enumerate_omega_homs(const TreePtr& t, const TreePtr& u, std::uint64_t cap = kDefaultCap,
                                           bool isos_only = false);

// Xi(R, S) assembled from rooted hom-sets over every leg of R.  s0 = -1
// means S.leg_order[0].
std::vector<Morphism> enumerate_homs_structured(const TreePtr& r, const TreePtr& s, int s0 = -1,
                                                std::uint64_t cap = kDefaultCap);

// |Omega(T(R,r), T(S,s0))| for each leg r in leg order.
std::vector<std::size_t> rooted_summand_sizes(const TreePtr& r, const TreePtr& s, int s0 = -1,
                                              std::uint64_t cap = kDefaultCap);

std::vector<Morphism> automorphisms(const TreePtr& s, std::uint64_t cap = kDefaultCap);

} // namespace cdend

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "cdend/tree.hpp"

namespace cdend {

// A morphism of Xi: phi0 on edges and phi1 sending each vertex of dom to a
// subgraph of cod.
struct Morphism {
    TreePtr dom;
    TreePtr cod;
    std::vector<int> phi0;
    std::vector<SubGraph> phi1;
};

// Equality and ordering on (phi0, phi1); dom and cod are assumed shared.
bool same_maps(const Morphism& a, const Morphism& b);
bool maps_less(const Morphism& a, const Morphism& b);
void sort_canonical(std::vector<Morphism>& homs);

// Throws ValidationError: BadMap, NonInjectiveAtVertex, LegMismatch, VertexOverlap.
void validate_morphism(const Morphism& m);
bool is_morphism(const Morphism& m);

Morphism identity(const TreePtr& t);
SubGraph image(const Morphism& m);
// Image of m restricted to a subgraph of its domain.
SubGraph image_of(const Morphism& m, const SubGraph& g);
// psi after phi.  Throws ValidationError(DomainMismatch).
Morphism compose(const Morphism& psi, const Morphism& phi);

bool is_isomorphism(const Morphism& m);
bool is_constant(const Morphism& m);
Morphism inverse(const Morphism& iso);

// The lattice form: alpha1 is defined on every subgraph of dom.
struct CompleteMorphism {
    TreePtr dom;
    TreePtr cod;
    std::vector<int> alpha0;
    std::map<SubGraph, SubGraph> alpha1;
};

CompleteMorphism to_complete(const Morphism& m);
Morphism from_complete(const CompleteMorphism& a);
// Throws ValidationError: BoundaryMismatch, LatticeViolation, BadMap.
void validate_complete(const CompleteMorphism& a);
CompleteMorphism compose_complete(const CompleteMorphism& b, const CompleteMorphism& a);

inline constexpr std::uint64_t kDefaultCap = 10'000'000;

// Every morphism R -> S, sorted canonically.  The cap bounds the number of
// search nodes visited; SizeBoundExceeded when it is reached.
std::vector<Morphism> enumerate_homs_bruteforce(const TreePtr& r, const TreePtr& s,
                                                std::uint64_t cap = kDefaultCap);

std::string describe(const Morphism& m);

} // namespace cdend

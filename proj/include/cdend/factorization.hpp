#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cdend/morphism.hpp"

namespace cdend {

inline int degree(const Tree& t) { return t.num_vertices(); }
// phi0 injective.
bool in_xi_plus(const Morphism& m);
// phi0 surjective and every codomain vertex lies in some phi1(w).
bool in_xi_minus(const Morphism& m);

enum class FactorKind { Reedy, ActiveInert };

struct Factorization {
    TreePtr mid;
    Morphism first;  // dom -> mid
    Morphism second; // mid -> cod
    FactorKind kind;
};

// first in Xi-, second in Xi+.
Factorization reedy_factor(const Morphism& m);

bool is_active(const Morphism& m);
bool is_inert(const Morphism& m);
// first active onto the image, second the inert inclusion of the image.
Factorization active_inert_factor(const Morphism& m);

// Moves a subgraph of a host tree into a subtree's indexing, and back.
SubGraph to_subtree(const SubTree& st, const SubGraph& g);
SubGraph to_host(const SubTree& st, const SubGraph& g);

// theta: mid(a) -> mid(b) with theta . a.first = b.first and
// b.second . theta = a.second, when one exists.
std::optional<Morphism> compare_factorizations(const Factorization& a, const Factorization& b);

// Isomorphism theta: dom(d1) -> dom(d2) with d2 . theta = d1, for
// edge-injective d2.
std::optional<Morphism> iso_over(const Morphism& d1, const Morphism& d2);

// Square  R -phi-> S, R -alpha-> A, S -beta-> B, A -psi-> B  with
// psi.alpha = beta.phi.  Returns gamma: S -> A with gamma.phi = alpha and
// psi.gamma = beta.  NotActive, NotInert, SquareDoesNotCommute.
Morphism lift_square(const Morphism& phi, const Morphism& psi, const Morphism& alpha, const Morphism& beta);

enum class CofaceKind { Inner, Outer, LegInclusion };
const char* coface_kind_name(CofaceKind k);

struct Coface {
    CofaceKind kind;
    std::string witness; // contracted edge, deleted vertex, or leg position
    Morphism map;        // face -> S
};

// Every coface into s, one per iso class over s.
std::vector<Coface> cofaces(const TreePtr& s);
// Every codegeneracy out of s, one per bivalent vertex.
std::vector<Morphism> codegeneracies(const TreePtr& s);

// The tree obtained by contracting the interior edge e, and the inner
// coface into s.
Coface inner_coface(const TreePtr& s, int e);

} // namespace cdend

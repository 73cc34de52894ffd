#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "cdend/morphism.hpp"

namespace cdend {

// Colours listed output first: (c0, c1, ..., cn).
using Profile = std::vector<int>;
// A permutation of {0, ..., n}; sigma[j] is the image of j.
using Perm = std::vector<int>;

Perm identity_perm(int size);
// tau_q on {0, ..., q-1}: k -> k + 1 mod q.
Perm tau_perm(int q);
Perm perm_compose(const Perm& a, const Perm& b); // a after b
Perm perm_power(const Perm& p, int k);
Perm perm_inverse(const Perm& p);
std::vector<Perm> all_perms(int size);

struct Op {
    Profile profile;
    std::vector<int> data;
    int arity() const { return static_cast<int>(profile.size()) - 1; }
    auto operator<=>(const Op&) const = default;
};

// A coloured cyclic operad presented through its operations.  The action is
// a right action: profile(o.sigma)[j] = profile(o)[sigma[j]], and
// (o.sigma).rho = o.(sigma after rho).
class CyclicOperad {
public:
    virtual ~CyclicOperad() = default;
    virtual std::string name() const = 0;
    virtual int num_colors() const = 0;
    virtual std::string color_name(int c) const = 0;
    virtual std::vector<Op> ops(const Profile& p) const = 0;
    virtual Op unit(int c) const = 0;
    virtual Op act(const Op& o, const Perm& sigma) const = 0;
    // g o_i f, 1 <= i <= arity(g).
    virtual Op circ(const Op& g, int i, const Op& f) const = 0;
    virtual std::string op_name(const Op& o) const = 0;
    // Every operation of arity at most max_arity.
    virtual std::vector<Op> all_ops(int max_arity) const = 0;
    // Largest arity carrying operations, or -1 when unbounded.
    virtual int max_arity() const = 0;

    int color_index(const std::string& name) const;
};

using OperadPtr = std::shared_ptr<const CyclicOperad>;

// Table-driven finite operad.  Missing action or composition entries are
// reported by the validator.
class FiniteCyclicOperad : public CyclicOperad {
public:
    FiniteCyclicOperad(std::string name, std::vector<std::string> colors);

    Op add_op(const Profile& p, const std::string& name);
    void set_unit(int color, const Op& o);
    void set_act(const Op& o, const Perm& sigma, const Op& result);
    void set_circ(const Op& g, int i, const Op& f, const Op& result);
    std::optional<Op> find_op(const Profile& p, const std::string& name) const;
    std::vector<Profile> profiles() const;

    std::string name() const override { return name_; }
    int num_colors() const override { return static_cast<int>(colors_.size()); }
    std::string color_name(int c) const override { return colors_.at(c); }
    std::vector<Op> ops(const Profile& p) const override;
    Op unit(int c) const override;
    Op act(const Op& o, const Perm& sigma) const override;
    Op circ(const Op& g, int i, const Op& f) const override;
    std::string op_name(const Op& o) const override;
    std::vector<Op> all_ops(int max_arity) const override;
    int max_arity() const override;

    // Raw tables, for serialisation and mutation.
    const std::map<std::pair<Op, Perm>, Op>& act_table() const { return act_; }
    const std::map<std::tuple<Op, int, Op>, Op>& circ_table() const { return circ_; }

private:
    std::string name_;
    std::vector<std::string> colors_;
    std::map<Profile, std::vector<std::string>> names_;
    std::map<int, Op> units_;
    std::map<std::pair<Op, Perm>, Op> act_;
    std::map<std::tuple<Op, int, Op>, Op> circ_;
};

// The monochrome associative cyclic operad: an operation of arity n is a
// cyclic order on {0, ..., n}, stored as the word read after 0.
class AssociativeCyclicOperad : public CyclicOperad {
public:
    std::string name() const override { return "Ass"; }
    int num_colors() const override { return 1; }
    std::string color_name(int) const override { return "*"; }
    std::vector<Op> ops(const Profile& p) const override;
    Op unit(int c) const override;
    Op act(const Op& o, const Perm& sigma) const override;
    Op circ(const Op& g, int i, const Op& f) const override;
    std::string op_name(const Op& o) const override;
    std::vector<Op> all_ops(int max_arity) const override;
    int max_arity() const override { return -1; }
};

// Checks profiles, the group action, units, associativity, equivariance and
// the cyclic law on every operation up to max_arity (defaults to the
// operad's own bound, or 3).  Throws ValidationError with kinds
// ActionNotGroupAction, OperadAxiomViolation, CyclicCompatibilityViolation.
void validate_operad(const CyclicOperad& o, int max_arity = -1);

// Degree-one operad from a monoid with anti-involution; g o_1 f = mult(g, f)
// and the transposition acts by dagger.  NotAMonoid, NotAnInvolution.
std::shared_ptr<FiniteCyclicOperad> from_involutive_monoid(const std::string& name,
                                                           const std::vector<std::string>& elements,
                                                           const std::vector<std::vector<int>>& mult,
                                                           const std::vector<int>& dagger);

std::shared_ptr<FiniteCyclicOperad> example_C();
std::shared_ptr<FiniteCyclicOperad> example_Cprime();
std::shared_ptr<FiniteCyclicOperad> example_A();
// By name: C, Cprime, A, Ass.
OperadPtr builtin_operad(const std::string& name);

// ---- decorated trees and evaluation --------------------------------------

struct DecoratedTree {
    TreePtr shape;
    std::vector<int> coloring; // edge -> colour
    std::vector<Op> labels;    // vertex -> operation with profile coloring . nbhd
};

// Composite of the labels, with inputs in leg order.  ColorMismatch.
Op evaluate_decorated_tree(const CyclicOperad& o, const DecoratedTree& d);

// ---- the free cyclic operad C(S) -----------------------------------------

// An element of C(S): a tree whose edges are coloured by edges of S and whose
// vertices are labelled by vertices of S, each vertex's neighbourhood
// coloured bijectively onto the neighbourhood of its label.
struct FreeElement {
    TreePtr shape;
    std::vector<int> coloring;
    std::vector<int> labels;
};

FreeElement free_unit(const TreePtr& s, int color);
FreeElement free_generator(const TreePtr& s, int v);
FreeElement free_act(const TreePtr& s, const FreeElement& x, const Perm& sigma);
FreeElement free_circ(const TreePtr& s, const FreeElement& g, int i, const FreeElement& f);
Profile free_profile(const FreeElement& x);
bool is_free_element(const TreePtr& s, const FreeElement& x);
// Equal keys exactly for equal elements of C(S).
std::string free_key(const TreePtr& s, const FreeElement& x);
// Elements with at most max_vertices vertices, sorted by key.
std::vector<FreeElement> free_elements(const TreePtr& s, int max_vertices, std::size_t cap = 1'000'000);

// The free element of a pinned subgraph; a unit when g is an edge.
FreeElement subgraph_element(const TreePtr& s, const SubGraph& g, const std::vector<int>& leg_order);

// C(phi): colour map phi0 and the image of each generator.
struct FunctorImage {
    std::vector<int> on_colors;
    std::vector<FreeElement> on_generators;
};
FunctorImage apply_functor_C(const Morphism& phi);
std::string functor_image_key(const Morphism& phi);

// A map of cyclic operads out of C(R): colour map plus generator images in
// C(S).  Valid when each generator lands in the profile prescribed by the
// colour map.
bool is_free_map(const TreePtr& r, const TreePtr& s, const FunctorImage& f);

// ---- maps between finite operads -----------------------------------------

struct CycMap {
    std::vector<int> on_colors;
    std::map<Op, Op> on_ops;
};

std::vector<CycMap> enumerate_cyc_maps(const CyclicOperad& a, const CyclicOperad& b, int max_arity = -1,
                                       std::uint64_t cap = kDefaultCap);
bool is_cyc_map(const CyclicOperad& a, const CyclicOperad& b, const CycMap& m, int max_arity = -1);

} // namespace cdend

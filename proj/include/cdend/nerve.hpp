#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cdend/factorization.hpp"
#include "cdend/operad.hpp"

namespace cdend {

// An element of X(S), encoded as a flat integer vector whose meaning depends
// on the presheaf.
using Element = std::vector<std::int64_t>;

// A presheaf on Xi, evaluated lazily.
class Presheaf {
public:
    virtual ~Presheaf() = default;
    virtual std::string name() const = 0;
    // Sorted and duplicate free.
    virtual std::vector<Element> value(const TreePtr& s) const = 0;
    // X(phi) : X(cod phi) -> X(dom phi).
    virtual Element restrict(const Morphism& phi, const Element& x) const = 0;
    virtual std::string describe(const TreePtr& s, const Element& x) const;
};

using PresheafPtr = std::shared_ptr<const Presheaf>;

// ---- the nerve -----------------------------------------------------------

struct NerveElement {
    std::vector<int> coloring; // edge -> colour
    std::vector<Op> vertex_ops;
};

class NervePresheaf : public Presheaf {
public:
    explicit NervePresheaf(OperadPtr o, std::uint64_t cap = kDefaultCap) : O_(std::move(o)), cap_(cap) {}

    std::string name() const override { return "nerve(" + O_->name() + ")"; }
    std::vector<Element> value(const TreePtr& s) const override;
    Element restrict(const Morphism& phi, const Element& x) const override;
    std::string describe(const TreePtr& s, const Element& x) const override;

    const CyclicOperad& operad() const { return *O_; }
    NerveElement decode(const Tree& s, const Element& x) const;
    Element encode(const Tree& s, const NerveElement& n) const;

private:
    OperadPtr O_;
    std::uint64_t cap_;
};

std::shared_ptr<const NervePresheaf> nerve(OperadPtr o, std::uint64_t cap = kDefaultCap);

// ---- representables ------------------------------------------------------

// Xi[S] = hom(-, S).
PresheafPtr representable(const TreePtr& s, std::uint64_t cap = kDefaultCap);
// Two copies of Xi[S] glued along its Segal core: a map is doubled unless its
// image lies in a single star or edge of S.  Not Segal once S has an
// interior edge.
PresheafPtr doubled_representable(const TreePtr& s, std::uint64_t cap = kDefaultCap);

Element encode_morphism(const Morphism& m);
Morphism decode_morphism(const TreePtr& dom, const TreePtr& cod, const Element& x);

// ---- Segal cores ---------------------------------------------------------

// The inclusion of the corolla at v, with S's ids and orderings.
Morphism star_inclusion(const TreePtr& s, int v);
// eta -> t with image the edge e.
Morphism edge_inclusion(const TreePtr& t, int e);

// Families (x_v in X(star_v)) agreeing on interior edges; X(eta) for S = eta.
std::vector<std::vector<Element>> segal_core_homs(const Presheaf& x, const TreePtr& s);
std::vector<Element> segal_map(const Presheaf& x, const TreePtr& s, const Element& e);

struct CheckReport {
    bool pass = true;
    std::string check;
    std::string tree;    // first failing tree
    std::string witness; // why it fails
    std::size_t trees_checked = 0;
    std::size_t instances_checked = 0;
};

// Segal map bijective on one tree.
CheckReport segal_check_tree(const Presheaf& x, const TreePtr& s);
// Segal map bijective on every iso class with bounded size.
CheckReport is_segal(const Presheaf& x, int max_vertices = 4, int max_legs = 6);

// ---- inner horns ---------------------------------------------------------

struct Horn {
    std::vector<Coface> faces; // all faces of S except delta, up to iso over S
    // Each constraint lists (face index, map into that face's domain); the
    // restrictions along them must agree.
    std::vector<std::vector<std::pair<int, Morphism>>> constraints;
};

Horn inner_horn(const TreePtr& s, const Coface& delta);
// a with f . a = k for edge-injective f, when it exists.
std::optional<Morphism> factor_through(const Morphism& k, const Morphism& f);

std::vector<std::vector<Element>> inner_horn_homs(const Presheaf& x, const TreePtr& s, const Coface& delta,
                                                  std::uint64_t cap = kDefaultCap);
// X(S) -> horn homs is a bijection.
bool unique_inner_filler(const Presheaf& x, const TreePtr& s, const Coface& delta, std::string* witness = nullptr,
                         std::uint64_t cap = kDefaultCap);
// Every inner horn of every iso class with bounded size has a unique filler.
CheckReport check_inner_horns(const Presheaf& x, int max_vertices = 3, int max_legs = 6);

// ---- graft trees ---------------------------------------------------------

// Z^i_{m,n}: legs 0..m+n-1, vertices a, b, interior edge e.  BadIndices.
TreePtr graft_tree(int m, int n, int i);

struct GraftMaps {
    TreePtr z;
    Morphism delta_a; // star(n+1) -> z
    Morphism delta_b; // star(m+1) -> z
    Morphism delta_e; // star(m+n) -> z
};
GraftMaps graft_maps(int m, int n, int i);

// psi_sigma : star(q) -> star(q) with sigma on edges.
Morphism psi_map(const Perm& sigma);
// Z^i_{m,n} -> Z^{i+1}_{m,n} for i < m, Z^m_{m,n} -> Z^1_{n,m} for i = m.
Morphism phi_map(int m, int n, int i);

// The three squares commute in Xi, and on nerve(O) restriction along them
// realises the rotation law for o_i.  BadIndices.
bool verify_psi_phi_squares(const CyclicOperad& o, int m, int n, int i, std::string* witness = nullptr);

} // namespace cdend

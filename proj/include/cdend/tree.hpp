#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cdend/errors.hpp"

namespace cdend {

using Mask = std::uint64_t;
inline constexpr int kMaxTreeSize = 64;

inline Mask bit(int i) { return Mask{1} << i; }
inline bool has_bit(Mask m, int i) { return (m >> i) & 1u; }
int popcount(Mask m);
std::vector<int> mask_members(Mask m);

struct RawVertex {
    std::string id;
    std::vector<std::string> nbhd;
};

// Untyped tree data as read from JSON.
struct RawTree {
    std::vector<std::string> edges;
    std::vector<RawVertex> vertices;
    std::vector<std::string> leg_order;
};

// A pinned unrooted tree with legs.  Edges and vertices are addressed by
// index; ids are kept only for I/O.  nbhd[v][k] is ord^v(k) and leg_order[k]
// is ord(k).  For eta the single edge is listed once in leg_order.
//
// Instances are only produced by make_tree / validate_tree, which fill the
// derived tables, and are immutable afterwards.
class Tree {
public:
    std::vector<std::string> edge_ids;
    std::vector<std::string> vertex_ids;
    std::vector<std::vector<int>> nbhd;
    std::vector<int> leg_order;

    int num_edges() const { return static_cast<int>(edge_ids.size()); }
    int num_vertices() const { return static_cast<int>(vertex_ids.size()); }
    bool is_eta() const { return vertex_ids.empty(); }

    bool is_leg(int e) const { return has_bit(legs_, e); }
    Mask legs_mask() const { return legs_; }
    Mask all_edges() const;
    Mask all_vertices() const;
    int num_legs() const { return popcount(legs_); }
    int valence(int v) const { return static_cast<int>(nbhd[v].size()); }

    // Vertices at the two ends of e, -1 for a dangling end.
    const std::array<int, 2>& ends(int e) const { return ends_[e]; }
    // The vertex across e from v, or -1.
    int across(int e, int v) const;
    int position_in_nbhd(int v, int e) const;

    int edge_index(const std::string& id) const;
    int vertex_index(const std::string& id) const;

    // Distances in the rwb graph divided by two.
    int edge_distance(int e, int f) const { return dist_[e * nodes_ + f] / 2; }
    int vertex_distance(int v, int w) const;
    // Raw rwb distance between nodes; nodes are edges 0..E-1 then vertices.
    int node_distance(int a, int b) const { return dist_[a * nodes_ + b]; }
    int rwb_parent(int from, int to) const { return parent_[from * nodes_ + to]; }

    // Structural equality including ids and all orderings.
    bool operator==(const Tree& o) const;

private:
    Mask legs_ = 0;
    std::vector<std::array<int, 2>> ends_;
    int nodes_ = 0;
    std::vector<int> dist_;
    std::vector<int> parent_;

    friend Tree make_tree(std::vector<std::string>, std::vector<std::string>, std::vector<std::vector<int>>,
                          std::vector<int>);
};

using TreePtr = std::shared_ptr<const Tree>;
inline TreePtr share(Tree t) { return std::make_shared<const Tree>(std::move(t)); }

// Builds and validates.  Throws ValidationError with kinds IncidenceViolation,
// NotContractible, NoLegs, BadOrdering, DuplicateId, TooLarge.
Tree make_tree(std::vector<std::string> edge_ids, std::vector<std::string> vertex_ids,
               std::vector<std::vector<int>> nbhd, std::vector<int> leg_order);
Tree validate_tree(const RawTree& raw);
RawTree to_raw(const Tree& t);

Tree eta(const std::string& edge_id = "e");
Tree star(int n);
Tree linear(int n);
bool is_linear(const Tree& t);

// ---- subgraphs -----------------------------------------------------------

struct SubGraph {
    Mask verts = 0;
    Mask edges = 0;

    bool is_edge() const { return verts == 0; }
    int single_edge() const;
    auto operator<=>(const SubGraph&) const = default;
};

SubGraph edge_subgraph(int e);
SubGraph star_subgraph(const Tree& t, int v);
SubGraph whole_subgraph(const Tree& t);
// Subgraph spanned by a connected nonempty vertex set; throws
// ValidationError(NotContractible) when disconnected.
SubGraph vertex_span(const Tree& t, Mask verts);
bool is_valid_subgraph(const Tree& t, const SubGraph& g);

Mask subgraph_legs(const Tree& t, const SubGraph& g);
Mask subgraph_interior(const Tree& t, const SubGraph& g);
// Sorted multiset of edges: e,e for an edge subgraph, else the legs.
std::vector<int> boundary(const Tree& t, const SubGraph& g);

std::optional<SubGraph> subgraph_intersection(const Tree& t, const SubGraph& a, const SubGraph& b);
std::optional<SubGraph> subgraph_union(const Tree& t, const SubGraph& a, const SubGraph& b);
bool subgraph_contains(const SubGraph& big, const SubGraph& small);

// Every subgraph, edges first (by index) then vertex spans by mask.
std::vector<SubGraph> all_subgraphs(const Tree& t);

// A subgraph as a standalone tree with the host's ids and inherited vertex
// orders.  host_leg_order lists the legs (host indices) in the desired
// order; when empty, legs are taken in host index order.
struct SubTree {
    Tree tree;
    std::vector<int> edge_to_host;
    std::vector<int> vertex_to_host;
    std::vector<int> host_to_edge;   // -1 outside
    std::vector<int> host_to_vertex; // -1 outside
};
SubTree subgraph_tree(const Tree& host, const SubGraph& g, const std::vector<int>& host_leg_order = {});

// ---- distance and paths --------------------------------------------------

struct Elem {
    bool is_vertex = false;
    int index = 0;
    auto operator<=>(const Elem&) const = default;
};
using Path = std::vector<Elem>;

int distance(const Tree& t, Elem x, Elem y);
Path minimal_path(const Tree& t, Elem x, Elem y);
std::string path_to_string(const Tree& t, const Path& p);

// ---- rwb graph -----------------------------------------------------------

struct RwbGraph {
    std::vector<std::string> names;
    std::vector<char> color; // 'r', 'w', 'b'
    std::vector<std::pair<int, int>> links;
};

RwbGraph to_rwb(const Tree& t);
// Rebuilds a tree from an rwb graph; orderings are not recoverable and are
// chosen by node order.
Tree from_rwb(const RwbGraph& g);
std::string to_dot(const Tree& t);

// ---- canonical forms and isomorphism -------------------------------------

struct CanonOptions {
    bool pin_legs = true;     // respect leg_order
    bool pin_vertices = true; // respect each nbhd order
    const std::vector<std::string>* edge_labels = nullptr;
    const std::vector<std::string>* vertex_labels = nullptr;
};

std::string canonical_form(const Tree& t, const CanonOptions& opt = {});
// Isomorphism class in Xi: all orderings ignored.
std::string canonical_form_unpinned(const Tree& t);

struct Relabeling {
    std::vector<int> edge_map;   // a-edge -> b-edge
    std::vector<int> vertex_map; // a-vertex -> b-vertex
};
// Options apply to both trees; label pointers must then be meaningful for both.
std::optional<Relabeling> find_isomorphism(const Tree& a, const Tree& b, const CanonOptions& opt = {});
// Separate options per tree, for matching labelled trees.
std::optional<Relabeling> find_isomorphism(const Tree& a, const Tree& b, const CanonOptions& oa,
                                           const CanonOptions& ob);

// All trees with at most max_vertices vertices and between 1 and max_legs
// legs, one per isomorphism class in Xi, sorted by (vertices, legs, form).
std::vector<Tree> trees_up_to(int max_vertices, int max_legs);

std::string tree_summary(const Tree& t);

} // namespace cdend

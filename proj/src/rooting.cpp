#include "cdend/rooting.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <map>
#include <numeric>

namespace cdend {

namespace {

[[noreturn]] void invalid(const std::string& kind, const std::string& msg, const std::string& witness = {}) {
    throw ValidationError(kind, msg, witness.empty() ? msg : witness);
}

// Same edges, vertices and neighbourhood sets, orderings aside.
bool same_up_to_order(const Tree& a, const Tree& b) {
    if (a.edge_ids != b.edge_ids || a.vertex_ids != b.vertex_ids) return false;
    for (int v = 0; v < a.num_vertices(); ++v) {
        auto x = a.nbhd[v], y = b.nbhd[v];
        std::sort(x.begin(), x.end());
        std::sort(y.begin(), y.end());
        if (x != y) return false;
    }
    return true;
}

// The identity-on-edges isomorphism between two orderings of one tree.
Morphism reorder_iso(const TreePtr& from, const TreePtr& to) {
    Morphism m{from, to, {}, {}};
    for (int e = 0; e < from->num_edges(); ++e) m.phi0.push_back(e);
    for (int v = 0; v < from->num_vertices(); ++v) m.phi1.push_back(star_subgraph(*to, v));
    return m;
}

} // namespace

bool is_rooted(const Tree& t) {
    if (t.is_eta()) return true;
    int r0 = t.leg_order[0];
    for (int v = 0; v < t.num_vertices(); ++v) {
        const auto& nb = t.nbhd[v];
        int d0 = t.edge_distance(nb[0], r0);
        for (std::size_t k = 1; k < nb.size(); ++k)
            if (!(d0 < t.edge_distance(nb[k], r0))) return false;
    }
    return true;
}

bool is_oriented(const Morphism& m) {
    if (!is_rooted(*m.dom) || !is_rooted(*m.cod)) return false;
    const Tree& R = *m.dom;
    const Tree& S = *m.cod;
    int s0 = S.leg_order[0];
    for (int v = 0; v < R.num_vertices(); ++v) {
        const auto& nb = R.nbhd[v];
        int d0 = S.edge_distance(m.phi0[nb[0]], s0);
        for (std::size_t k = 1; k < nb.size(); ++k)
            if (d0 > S.edge_distance(m.phi0[nb[k]], s0)) return false;
    }
    return true;
}

RootingResult rootify(const TreePtr& s, int s0) {
    const Tree& S = *s;
    if (s0 < 0 || s0 >= S.num_edges() || !S.is_leg(s0))
        invalid("NotALeg", "root must be a leg", s0 >= 0 && s0 < S.num_edges() ? S.edge_ids[s0] : "?");
    if (S.is_eta()) return {s, identity(s)};
    auto nb = S.nbhd;
    for (int v = 0; v < S.num_vertices(); ++v) {
        auto& l = nb[v];
        int best = 0;
        bool tie = false;
        for (int k = 1; k < static_cast<int>(l.size()); ++k) {
            int dk = S.edge_distance(l[k], s0), db = S.edge_distance(l[best], s0);
            if (dk < db) {
                best = k;
                tie = false;
            } else if (dk == db) {
                tie = true;
            }
        }
        if (tie) throw Error("InvariantViolation", "two neighbours at equal distance from the root");
        std::rotate(l.begin(), l.begin() + best, l.end());
    }
    auto order = S.leg_order;
    auto it = std::find(order.begin(), order.end(), s0);
    std::rotate(order.begin(), it, order.end());
    TreePtr t = share(make_tree(S.edge_ids, S.vertex_ids, std::move(nb), std::move(order)));
    return {t, reorder_iso(t, s)};
}

int find_root(const Morphism& phi, int s0) {
    if (is_constant(phi)) invalid("ConstantMorphism", "find_root is undefined on constant maps");
    const Tree& R = *phi.dom;
    const Tree& S = *phi.cod;
    int best = -1, bestd = 0;
    bool tie = false;
    for (int r : R.leg_order) {
        int d = S.edge_distance(phi.phi0[r], s0);
        if (best < 0 || d < bestd) {
            best = r;
            bestd = d;
            tie = false;
        } else if (d == bestd) {
            tie = true;
        }
    }
    if (tie) throw Error("InvariantViolation", "several legs minimise the distance to the root");
    return best;
}

Morphism lift(const Morphism& phi, int s0) {
    int r = find_root(phi, s0);
    Morphism out = phi;
    out.dom = rootify(phi.dom, r).rooted;
    out.cod = rootify(phi.cod, s0).rooted;
    if (!is_oriented(out)) throw Error("InvariantViolation", "lifted map is not oriented");
    return out;
}

Morphism amalgamate(const Morphism& omega, const TreePtr& r, const TreePtr& s) {
    if (!is_oriented(omega)) invalid("NotOriented", "amalgamate needs an oriented map");
    if (!same_up_to_order(*omega.dom, *r) || !same_up_to_order(*omega.cod, *s))
        invalid("NotOriented", "oriented map is not between rootings of the given trees");
    Morphism f_r_inv = reorder_iso(r, omega.dom);
    Morphism f_s = reorder_iso(omega.cod, s);
    return compose(f_s, compose(omega, f_r_inv));
}

// ---- rooted enumeration --------------------------------------------------

namespace {

struct Candidate {
    SubGraph g;
    std::vector<int> inputs;
};

class OmegaSearch {
public:
    OmegaSearch(const TreePtr& t, const TreePtr& u, std::uint64_t cap, bool isos_only)
        : T_(*t), U_(*u), cap_(cap), isos_only_(isos_only) {
        proto_.dom = t;
        proto_.cod = u;
        if (!is_rooted(T_) || !is_rooted(U_)) invalid("NotOriented", "rooted enumeration needs rooted trees");
        int s0 = U_.leg_order[0];
        for (const auto& g : all_subgraphs(U_)) {
            if (g.is_edge()) continue;
            if (isos_only && popcount(g.verts) != 1) continue;
            auto legs = mask_members(subgraph_legs(U_, g));
            int out = *std::min_element(legs.begin(), legs.end(), [&](int a, int b) {
                return U_.edge_distance(a, s0) < U_.edge_distance(b, s0);
            });
            Candidate c{g, {}};
            for (int l : legs)
                if (l != out) c.inputs.push_back(l);
            int k = static_cast<int>(c.inputs.size());
            cands_[{out, k}].push_back(std::move(c));
        }
        if (!T_.is_eta()) {
            int r0 = T_.leg_order[0];
            std::vector<char> seen(T_.num_vertices(), 0);
            std::deque<int> q{T_.ends(r0)[0]};
            seen[q.front()] = 1;
            while (!q.empty()) {
                int x = q.front();
                q.pop_front();
                order_.push_back(x);
                for (int e : T_.nbhd[x]) {
                    int w = T_.across(e, x);
                    if (w >= 0 && !seen[w]) {
                        seen[w] = 1;
                        q.push_back(w);
                    }
                }
            }
        }
    }

    std::vector<Morphism> run() {
        proto_.phi0.assign(T_.num_edges(), -1);
        proto_.phi1.assign(T_.num_vertices(), SubGraph{});
        int r0 = T_.leg_order[0];
        for (int x = 0; x < U_.num_edges(); ++x) {
            if (isos_only_ && !U_.is_leg(x)) continue;
            proto_.phi0[r0] = x;
            step(0, 0);
        }
        std::sort(out_.begin(), out_.end(), maps_less);
        return out_;
    }

private:
    void tick() {
        if (++visited_ > cap_)
            throw SizeBoundExceeded("rooted enumeration visited more than " + std::to_string(cap_) + " search nodes");
    }

    void step(std::size_t i, Mask used) {
        tick();
        if (i == order_.size()) {
            out_.push_back(proto_);
            return;
        }
        int x = order_[i];
        const auto& nb = T_.nbhd[x];
        int t = proto_.phi0[nb[0]];
        int k = static_cast<int>(nb.size()) - 1;
        if (k == 1 && !isos_only_) {
            proto_.phi1[x] = edge_subgraph(t);
            proto_.phi0[nb[1]] = t;
            step(i + 1, used);
        }
        auto it = cands_.find({t, k});
        if (it == cands_.end()) return;
        for (const auto& c : it->second) {
            if (c.g.verts & used) continue;
            proto_.phi1[x] = c.g;
            std::vector<int> perm(k);
            std::iota(perm.begin(), perm.end(), 0);
            do {
                for (int j = 0; j < k; ++j) proto_.phi0[nb[j + 1]] = c.inputs[perm[j]];
                step(i + 1, used | c.g.verts);
            } while (std::next_permutation(perm.begin(), perm.end()));
        }
    }

    const Tree& T_;
    const Tree& U_;
    std::uint64_t cap_;
    bool isos_only_;
    std::uint64_t visited_ = 0;
    std::map<std::pair<int, int>, std::vector<Candidate>> cands_;
    std::vector<int> order_;
    Morphism proto_;
    std::vector<Morphism> out_;
};

std::vector<Morphism> structured(const TreePtr& r, const TreePtr& s, int s0, std::uint64_t cap, bool isos_only,
                                 std::vector<std::size_t>* sizes) {
    if (s0 < 0) s0 = s->leg_order[0];
    TreePtr ts = rootify(s, s0).rooted;
    std::vector<Morphism> out;
    for (std::size_t k = 0; k < r->leg_order.size(); ++k) {
        TreePtr tr = rootify(r, r->leg_order[k]).rooted;
        auto omega = OmegaSearch(tr, ts, cap, isos_only).run();
        if (sizes) sizes->push_back(omega.size());
        for (const auto& w : omega) {
            // Constants appear once per extremal leg; keep the first copy.
            if (k > 0 && is_constant(w)) continue;
            out.push_back(amalgamate(w, r, s));
        }
    }
    std::sort(out.begin(), out.end(), maps_less);
    return out;
}

} // namespace

std::vector<Morphism> enumerate_omega_homs(const TreePtr& t, const TreePtr& u, std::uint64_t cap, bool isos_only) {
    return OmegaSearch(t, u, cap, isos_only).run();
}

std::vector<Morphism> enumerate_homs_structured(const TreePtr& r, const TreePtr& s, int s0, std::uint64_t cap) {
    return structured(r, s, s0, cap, false, nullptr);
}

std::vector<std::size_t> rooted_summand_sizes(const TreePtr& r, const TreePtr& s, int s0, std::uint64_t cap) {
    std::vector<std::size_t> sizes;
    structured(r, s, s0, cap, false, &sizes);
    return sizes;
}

std::vector<Morphism> automorphisms(const TreePtr& s, std::uint64_t cap) {
    std::vector<Morphism> out;
    for (auto& m : structured(s, s, -1, cap, true, nullptr))
        if (is_isomorphism(m)) out.push_back(std::move(m));
    return out;
}

} // namespace cdend

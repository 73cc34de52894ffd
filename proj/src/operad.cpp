#include "cdend/operad.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "cdend/rooting.hpp"

namespace cdend {

namespace {

[[noreturn]] void invalid(const std::string& kind, const std::string& msg, const std::string& witness = {}) {
    throw ValidationError(kind, msg, witness.empty() ? msg : witness);
}

std::string perm_text(const Perm& p) {
    std::string s = "[";
    for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + std::to_string(p[i]);
    return s + "]";
}

std::string profile_text(const CyclicOperad& o, const Profile& p) {
    std::string s = "(";
    for (std::size_t i = 1; i < p.size(); ++i) s += (i > 1 ? "," : "") + o.color_name(p[i]);
    return s + ";" + (p.empty() ? std::string("?") : o.color_name(p[0])) + ")";
}

std::string op_text(const CyclicOperad& o, const Op& x) { return o.op_name(x) + profile_text(o, x.profile); }

Profile act_profile(const Profile& p, const Perm& s) {
    Profile out(p.size());
    for (std::size_t j = 0; j < p.size(); ++j) out[j] = p[s[j]];
    return out;
}

Profile circ_profile(const Profile& g, int i, const Profile& f) {
    Profile out(g.begin(), g.begin() + i);
    out.insert(out.end(), f.begin() + 1, f.end());
    out.insert(out.end(), g.begin() + i + 1, g.end());
    return out;
}

void check_circ_args(const CyclicOperad& o, const Op& g, int i, const Op& f) {
    if (i < 1 || i > g.arity()) invalid("OperadAxiomViolation", "composition slot out of range", op_text(o, g));
    if (g.profile[i] != f.profile[0])
        invalid("ColorMismatch", "composition colours differ", op_text(o, g) + " o_" + std::to_string(i) + " " +
                                                                  op_text(o, f));
}

} // namespace

// ---- permutations --------------------------------------------------------

Perm identity_perm(int size) {
    Perm p(size);
    std::iota(p.begin(), p.end(), 0);
    return p;
}

Perm tau_perm(int q) {
    Perm p(q);
    for (int k = 0; k < q; ++k) p[k] = (k + 1) % q;
    return p;
}

Perm perm_compose(const Perm& a, const Perm& b) {
    Perm p(b.size());
    for (std::size_t j = 0; j < b.size(); ++j) p[j] = a[b[j]];
    return p;
}

Perm perm_power(const Perm& p, int k) {
    Perm out = identity_perm(static_cast<int>(p.size()));
    for (int i = 0; i < k; ++i) out = perm_compose(p, out);
    return out;
}

Perm perm_inverse(const Perm& p) {
    Perm out(p.size());
    for (std::size_t j = 0; j < p.size(); ++j) out[p[j]] = static_cast<int>(j);
    return out;
}

std::vector<Perm> all_perms(int size) {
    std::vector<Perm> out;
    Perm p = identity_perm(size);
    do out.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    return out;
}

int CyclicOperad::color_index(const std::string& name) const {
    for (int c = 0; c < num_colors(); ++c)
        if (color_name(c) == name) return c;
    return -1;
}

// ---- finite operads ------------------------------------------------------

FiniteCyclicOperad::FiniteCyclicOperad(std::string name, std::vector<std::string> colors)
    : name_(std::move(name)), colors_(std::move(colors)) {}

Op FiniteCyclicOperad::add_op(const Profile& p, const std::string& name) {
    if (p.empty()) throw MalformedInput("operation profile needs an output colour");
    for (int c : p)
        if (c < 0 || c >= num_colors()) throw MalformedInput("operation profile uses an unknown colour");
    auto& l = names_[p];
    if (std::find(l.begin(), l.end(), name) != l.end()) throw MalformedInput("duplicate operation '" + name + "'");
    l.push_back(name);
    return Op{p, {static_cast<int>(l.size()) - 1}};
}

void FiniteCyclicOperad::set_unit(int color, const Op& o) { units_[color] = o; }
void FiniteCyclicOperad::set_act(const Op& o, const Perm& sigma, const Op& result) { act_[{o, sigma}] = result; }
void FiniteCyclicOperad::set_circ(const Op& g, int i, const Op& f, const Op& result) { circ_[{g, i, f}] = result; }

std::optional<Op> FiniteCyclicOperad::find_op(const Profile& p, const std::string& name) const {
    auto it = names_.find(p);
    if (it == names_.end()) return std::nullopt;
    for (std::size_t k = 0; k < it->second.size(); ++k)
        if (it->second[k] == name) return Op{p, {static_cast<int>(k)}};
    return std::nullopt;
}

std::vector<Profile> FiniteCyclicOperad::profiles() const {
    std::vector<Profile> out;
    for (const auto& [p, l] : names_) out.push_back(p);
    return out;
}

std::vector<Op> FiniteCyclicOperad::ops(const Profile& p) const {
    std::vector<Op> out;
    auto it = names_.find(p);
    if (it == names_.end()) return out;
    for (std::size_t k = 0; k < it->second.size(); ++k) out.push_back(Op{p, {static_cast<int>(k)}});
    return out;
}

Op FiniteCyclicOperad::unit(int c) const {
    auto it = units_.find(c);
    if (it == units_.end()) invalid("OperadAxiomViolation", "no unit for colour " + color_name(c));
    return it->second;
}

Op FiniteCyclicOperad::act(const Op& o, const Perm& sigma) const {
    if (static_cast<int>(sigma.size()) != o.arity() + 1)
        invalid("ActionNotGroupAction", "permutation size differs from arity + 1", op_text(*this, o));
    auto it = act_.find({o, sigma});
    if (it != act_.end()) return it->second;
    if (sigma == identity_perm(o.arity() + 1)) return o;
    invalid("ActionNotGroupAction", "action undefined", op_text(*this, o) + " . " + perm_text(sigma));
}

Op FiniteCyclicOperad::circ(const Op& g, int i, const Op& f) const {
    check_circ_args(*this, g, i, f);
    auto it = circ_.find({g, i, f});
    if (it == circ_.end())
        invalid("OperadAxiomViolation", "composition undefined",
                op_text(*this, g) + " o_" + std::to_string(i) + " " + op_text(*this, f));
    return it->second;
}

std::string FiniteCyclicOperad::op_name(const Op& o) const {
    auto it = names_.find(o.profile);
    if (it == names_.end() || o.data.size() != 1 || o.data[0] < 0 ||
        o.data[0] >= static_cast<int>(it->second.size()))
        return "?";
    return it->second[o.data[0]];
}

std::vector<Op> FiniteCyclicOperad::all_ops(int max_arity) const {
    std::vector<Op> out;
    for (const auto& [p, l] : names_)
        if (static_cast<int>(p.size()) - 1 <= max_arity)
            for (std::size_t k = 0; k < l.size(); ++k) out.push_back(Op{p, {static_cast<int>(k)}});
    return out;
}

int FiniteCyclicOperad::max_arity() const {
    int m = 0;
    for (const auto& [p, l] : names_) m = std::max(m, static_cast<int>(p.size()) - 1);
    return m;
}

// ---- the associative cyclic operad ---------------------------------------

std::vector<Op> AssociativeCyclicOperad::ops(const Profile& p) const {
    std::vector<Op> out;
    for (int c : p)
        if (c != 0) return out;
    int n = static_cast<int>(p.size()) - 1;
    if (n < 0) return out;
    std::vector<int> w(n);
    std::iota(w.begin(), w.end(), 1);
    do out.push_back(Op{p, w});
    while (std::next_permutation(w.begin(), w.end()));
    return out;
}

Op AssociativeCyclicOperad::unit(int) const { return Op{{0, 0}, {1}}; }

Op AssociativeCyclicOperad::act(const Op& o, const Perm& sigma) const {
    int n = o.arity();
    if (static_cast<int>(sigma.size()) != n + 1) invalid("ActionNotGroupAction", "permutation size mismatch");
    Perm inv = perm_inverse(sigma);
    std::vector<int> cyc{0};
    cyc.insert(cyc.end(), o.data.begin(), o.data.end());
    for (int& x : cyc) x = inv[x];
    auto it = std::find(cyc.begin(), cyc.end(), 0);
    std::rotate(cyc.begin(), it, cyc.end());
    return Op{act_profile(o.profile, sigma), std::vector<int>(cyc.begin() + 1, cyc.end())};
}

Op AssociativeCyclicOperad::circ(const Op& g, int i, const Op& f) const {
    check_circ_args(*this, g, i, f);
    int l = f.arity();
    std::vector<int> w;
    for (int q : g.data) {
        if (q < i) w.push_back(q);
        else if (q > i) w.push_back(q + l - 1);
        else
            for (int r : f.data) w.push_back(i + r - 1);
    }
    return Op{circ_profile(g.profile, i, f.profile), w};
}

std::string AssociativeCyclicOperad::op_name(const Op& o) const {
    std::string s = "<0";
    for (int x : o.data) s += " " + std::to_string(x);
    return s + ">";
}

std::vector<Op> AssociativeCyclicOperad::all_ops(int max_arity) const {
    std::vector<Op> out;
    for (int n = 0; n <= max_arity; ++n) {
        auto l = ops(Profile(n + 1, 0));
        out.insert(out.end(), l.begin(), l.end());
    }
    return out;
}

// ---- validation ----------------------------------------------------------

namespace {

// Permutations of {0..size-1} used in checks: all of them when small,
// otherwise a generating set.
std::vector<Perm> test_perms(int size) {
    if (size <= 4) return all_perms(size);
    std::vector<Perm> out{identity_perm(size), tau_perm(size)};
    for (int a = 0; a + 1 < size; ++a) {
        Perm p = identity_perm(size);
        std::swap(p[a], p[a + 1]);
        out.push_back(p);
    }
    return out;
}

std::vector<Perm> test_perms_fixing_zero(int size) {
    std::vector<Perm> out;
    for (const auto& p : test_perms(size))
        if (p[0] == 0) out.push_back(p);
    if (size > 4)
        for (int a = 1; a + 1 < size; ++a) {
            Perm p = identity_perm(size);
            std::swap(p[a], p[a + 1]);
            out.push_back(p);
        }
    return out;
}

// sigma' with (g.sigma) o_i f = (g o_{sigma(i)} f) . sigma'.
Perm block_left(const Perm& sigma, int i, int l) {
    int k = static_cast<int>(sigma.size()) - 1;
    int p = sigma[i];
    auto pos = [&](int q) { return q < p ? q : q + l - 1; };
    Perm out(k + l);
    out[0] = 0;
    for (int j = 1; j < k + l; ++j) {
        if (j < i) out[j] = pos(sigma[j]);
        else if (j < i + l) out[j] = p + (j - i);
        else out[j] = pos(sigma[j - l + 1]);
    }
    return out;
}

// rho' with g o_i (f.rho) = (g o_i f) . rho'.
Perm block_right(const Perm& rho, int i, int k) {
    int l = static_cast<int>(rho.size()) - 1;
    Perm out = identity_perm(k + l);
    for (int j = i; j < i + l; ++j) out[j] = i + rho[j - i + 1] - 1;
    return out;
}

class Validator {
public:
    Validator(const CyclicOperad& o, int bound) : O_(o), ops_(o.all_ops(bound)) {}

    void run() {
        profiles();
        action();
        units();
        associativity();
        equivariance();
        cyclic();
    }

private:
    void expect(bool ok, const char* kind, const std::string& msg, const std::string& witness) {
        if (!ok) invalid(kind, msg, witness);
    }

    std::string t(const Op& x) const { return op_text(O_, x); }

    void profiles() {
        for (int c = 0; c < O_.num_colors(); ++c)
            expect(O_.unit(c).profile == Profile{c, c}, "OperadAxiomViolation", "unit has the wrong profile",
                   O_.color_name(c));
        for (const auto& x : ops_) {
            auto l = O_.ops(x.profile);
            expect(std::find(l.begin(), l.end(), x) != l.end(), "OperadAxiomViolation",
                   "operation missing from its profile", t(x));
        }
    }

    void action() {
        for (const auto& x : ops_) {
            int n = x.arity() + 1;
            auto perms = test_perms(n);
            expect(O_.act(x, identity_perm(n)) == x, "ActionNotGroupAction", "identity acts non-trivially", t(x));
            for (const auto& s : perms) {
                Op y = O_.act(x, s);
                expect(y.profile == act_profile(x.profile, s), "ActionNotGroupAction", "action has the wrong profile",
                       t(x) + " . " + perm_text(s));
                for (const auto& r : perms) {
                    Op lhs = O_.act(y, r);
                    Op rhs = O_.act(x, perm_compose(s, r));
                    expect(lhs == rhs, "ActionNotGroupAction", "(x.s).r differs from x.(s r)",
                           t(x) + " s=" + perm_text(s) + " r=" + perm_text(r) + ": " + t(lhs) + " vs " + t(rhs));
                }
            }
        }
    }

    void units() {
        for (int c = 0; c < O_.num_colors(); ++c) {
            Op u = O_.unit(c);
            expect(O_.act(u, tau_perm(2)) == u, "OperadAxiomViolation", "unit is not fixed by the transposition",
                   t(u));
        }
        for (const auto& x : ops_) {
            Op left = O_.circ(O_.unit(x.profile[0]), 1, x);
            expect(left == x, "OperadAxiomViolation", "left unit law fails", t(x));
            for (int i = 1; i <= x.arity(); ++i) {
                Op right = O_.circ(x, i, O_.unit(x.profile[i]));
                expect(right == x, "OperadAxiomViolation", "right unit law fails", t(x) + " at " + std::to_string(i));
            }
        }
    }

    void associativity() {
        for (const auto& h : ops_)
            for (const auto& g : ops_)
                for (const auto& f : ops_) {
                    int k = h.arity(), lg = g.arity();
                    for (int i = 1; i <= k; ++i) {
                        if (h.profile[i] != g.profile[0]) continue;
                        Op hg = O_.circ(h, i, g);
                        for (int j = 1; j <= lg; ++j) {
                            if (g.profile[j] != f.profile[0]) continue;
                            Op lhs = O_.circ(hg, i + j - 1, f);
                            Op rhs = O_.circ(h, i, O_.circ(g, j, f));
                            expect(lhs == rhs, "OperadAxiomViolation", "sequential associativity fails",
                                   t(h) + "," + t(g) + "," + t(f) + " i=" + std::to_string(i) +
                                       " j=" + std::to_string(j));
                        }
                        for (int j = i + 1; j <= k; ++j) {
                            if (h.profile[j] != f.profile[0]) continue;
                            Op lhs = O_.circ(hg, j + lg - 1, f);
                            Op rhs = O_.circ(O_.circ(h, j, f), i, g);
                            expect(lhs == rhs, "OperadAxiomViolation", "parallel associativity fails",
                                   t(h) + "," + t(g) + "," + t(f) + " i=" + std::to_string(i) +
                                       " j=" + std::to_string(j));
                        }
                    }
                }
    }

    void equivariance() {
        for (const auto& g : ops_)
            for (const auto& f : ops_) {
                int k = g.arity(), l = f.arity();
                if (k < 1) continue;
                for (const auto& s : test_perms_fixing_zero(k + 1)) {
                    Op gs = O_.act(g, s);
                    for (int i = 1; i <= k; ++i) {
                        if (gs.profile[i] != f.profile[0]) continue;
                        Op lhs = O_.circ(gs, i, f);
                        Op rhs = O_.act(O_.circ(g, s[i], f), block_left(s, i, l));
                        expect(lhs == rhs, "OperadAxiomViolation", "equivariance in the first argument fails",
                               t(g) + " s=" + perm_text(s) + " i=" + std::to_string(i) + " " + t(f));
                    }
                }
                for (int i = 1; i <= k; ++i) {
                    if (g.profile[i] != f.profile[0]) continue;
                    Op gf = O_.circ(g, i, f);
                    for (const auto& r : test_perms_fixing_zero(l + 1)) {
                        Op lhs = O_.circ(g, i, O_.act(f, r));
                        Op rhs = O_.act(gf, block_right(r, i, k));
                        expect(lhs == rhs, "OperadAxiomViolation", "equivariance in the second argument fails",
                               t(g) + " i=" + std::to_string(i) + " " + t(f) + " r=" + perm_text(r));
                    }
                }
            }
    }

    void cyclic() {
        for (const auto& g : ops_)
            for (const auto& f : ops_) {
                int k = g.arity(), l = f.arity();
                for (int i = 1; i <= k; ++i) {
                    if (g.profile[i] != f.profile[0]) continue;
                    Op lhs = O_.act(O_.circ(g, i, f), tau_perm(k + l));
                    Op rhs;
                    const char* branch;
                    if (i >= 2) {
                        rhs = O_.circ(O_.act(g, tau_perm(k + 1)), i - 1, f);
                        branch = "interior slot";
                    } else if (l != 0) {
                        rhs = O_.circ(O_.act(f, tau_perm(l + 1)), l, O_.act(g, tau_perm(k + 1)));
                        branch = "first slot";
                    } else {
                        rhs = O_.circ(O_.act(g, perm_power(tau_perm(k + 1), 2)), k, f);
                        branch = "first slot, nullary";
                    }
                    expect(lhs == rhs, "CyclicCompatibilityViolation",
                           std::string("rotation law fails (") + branch + ")",
                           "g=" + t(g) + " i=" + std::to_string(i) + " f=" + t(f) + ": " + t(lhs) + " vs " + t(rhs));
                }
            }
    }

    const CyclicOperad& O_;
    std::vector<Op> ops_;
};

} // namespace

void validate_operad(const CyclicOperad& o, int max_arity) {
    if (max_arity < 0) max_arity = o.max_arity() >= 0 ? o.max_arity() : 3;
    Validator(o, max_arity).run();
}

// ---- monoids with involution ---------------------------------------------

std::shared_ptr<FiniteCyclicOperad> from_involutive_monoid(const std::string& name,
                                                           const std::vector<std::string>& elements,
                                                           const std::vector<std::vector<int>>& mult,
                                                           const std::vector<int>& dagger) {
    const int n = static_cast<int>(elements.size());
    if (n == 0) invalid("NotAMonoid", "a monoid has at least one element");
    if (static_cast<int>(mult.size()) != n || static_cast<int>(dagger.size()) != n)
        throw MalformedInput("multiplication or involution table has the wrong size");
    for (const auto& row : mult) {
        if (static_cast<int>(row.size()) != n) throw MalformedInput("multiplication table is not square");
        for (int x : row)
            if (x < 0 || x >= n) throw MalformedInput("multiplication leaves the monoid");
    }
    for (int x : dagger)
        if (x < 0 || x >= n) throw MalformedInput("involution leaves the monoid");
    int e = -1;
    for (int u = 0; u < n && e < 0; ++u) {
        bool ok = true;
        for (int x = 0; x < n; ++x) ok = ok && mult[u][x] == x && mult[x][u] == x;
        if (ok) e = u;
    }
    if (e < 0) invalid("NotAMonoid", "no two-sided unit");
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z)
                if (mult[mult[x][y]][z] != mult[x][mult[y][z]])
                    invalid("NotAMonoid", "multiplication is not associative",
                            elements[x] + "," + elements[y] + "," + elements[z]);
    for (int x = 0; x < n; ++x) {
        if (dagger[dagger[x]] != x) invalid("NotAnInvolution", "dagger is not an involution", elements[x]);
        for (int y = 0; y < n; ++y)
            if (dagger[mult[x][y]] != mult[dagger[y]][dagger[x]])
                invalid("NotAnInvolution", "dagger does not reverse products", elements[x] + "," + elements[y]);
    }
    auto o = std::make_shared<FiniteCyclicOperad>(name, std::vector<std::string>{"*"});
    std::vector<Op> ops;
    for (const auto& el : elements) ops.push_back(o->add_op({0, 0}, el));
    o->set_unit(0, ops[e]);
    for (int x = 0; x < n; ++x) {
        o->set_act(ops[x], {0, 1}, ops[x]);
        o->set_act(ops[x], {1, 0}, ops[dagger[x]]);
        for (int y = 0; y < n; ++y) o->set_circ(ops[x], 1, ops[y], ops[mult[x][y]]);
    }
    return o;
}

namespace {

std::vector<std::vector<int>> xor_table(int n) {
    std::vector<std::vector<int>> m(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) m[a][b] = a ^ b;
    return m;
}

} // namespace

std::shared_ptr<FiniteCyclicOperad> example_C() {
    return from_involutive_monoid("C", {"00", "01", "10", "11"}, xor_table(4), {0, 2, 1, 3});
}

std::shared_ptr<FiniteCyclicOperad> example_Cprime() {
    return from_involutive_monoid("Cprime", {"00", "01", "10", "11"}, xor_table(4), {0, 1, 2, 3});
}

std::shared_ptr<FiniteCyclicOperad> example_A() { return from_involutive_monoid("A", {"e", "x"}, xor_table(2), {0, 1}); }

OperadPtr builtin_operad(const std::string& name) {
    if (name == "C") return example_C();
    if (name == "Cprime" || name == "C'") return example_Cprime();
    if (name == "A") return example_A();
    if (name == "Ass") return std::make_shared<AssociativeCyclicOperad>();
    throw MalformedInput("unknown operad '" + name + "'");
}

// ---- evaluation ----------------------------------------------------------

namespace {

struct Folded {
    Op op;
    std::vector<int> leaves; // legs in input order
};

Folded fold(const CyclicOperad& O, const Tree& T, const std::vector<Op>& rotated, int x) {
    Folded out{rotated[x], {}};
    const auto& nb = T.nbhd[x];
    int n = static_cast<int>(nb.size());
    std::vector<std::vector<int>> slot_leaves(n);
    std::vector<std::optional<Folded>> kids(n);
    for (int j = 1; j < n; ++j) {
        int y = T.across(nb[j], x);
        if (y < 0) {
            slot_leaves[j] = {nb[j]};
        } else {
            kids[j] = fold(O, T, rotated, y);
            slot_leaves[j] = kids[j]->leaves;
        }
    }
    for (int j = n - 1; j >= 1; --j)
        if (kids[j]) out.op = O.circ(out.op, j, kids[j]->op);
    for (int j = 1; j < n; ++j) out.leaves.insert(out.leaves.end(), slot_leaves[j].begin(), slot_leaves[j].end());
    return out;
}

} // namespace

Op evaluate_decorated_tree(const CyclicOperad& O, const DecoratedTree& d) {
    const Tree& S = *d.shape;
    if (static_cast<int>(d.coloring.size()) != S.num_edges() ||
        static_cast<int>(d.labels.size()) != S.num_vertices())
        invalid("ColorMismatch", "decoration does not cover the tree");
    for (int v = 0; v < S.num_vertices(); ++v) {
        Profile p;
        for (int e : S.nbhd[v]) p.push_back(d.coloring[e]);
        if (d.labels[v].profile != p)
            invalid("ColorMismatch", "label profile differs from the colouring", S.vertex_ids[v]);
    }
    if (S.is_eta()) return O.unit(d.coloring[0]);
    int r0 = S.leg_order[0];
    TreePtr T = rootify(d.shape, r0).rooted;
    std::vector<Op> rotated;
    for (int v = 0; v < S.num_vertices(); ++v) {
        int n = S.valence(v);
        int k = S.position_in_nbhd(v, T->nbhd[v][0]);
        rotated.push_back(O.act(d.labels[v], perm_power(tau_perm(n), k)));
    }
    Folded f = fold(O, *T, rotated, T->ends(r0)[0]);
    Perm sigma(S.leg_order.size());
    sigma[0] = 0;
    for (std::size_t j = 1; j < S.leg_order.size(); ++j) {
        auto it = std::find(f.leaves.begin(), f.leaves.end(), S.leg_order[j]);
        sigma[j] = static_cast<int>(it - f.leaves.begin()) + 1;
    }
    return O.act(f.op, sigma);
}

// ---- the free operad -----------------------------------------------------

FreeElement free_unit(const TreePtr&, int color) { return {share(eta("e")), {color}, {}}; }

FreeElement free_generator(const TreePtr& s, int v) {
    const auto& nb = s->nbhd[v];
    int n = static_cast<int>(nb.size());
    std::vector<std::string> eids;
    std::vector<int> order;
    for (int j = 0; j < n; ++j) {
        eids.push_back("e" + std::to_string(j));
        order.push_back(j);
    }
    return {share(make_tree(eids, {"x0"}, {order}, order)), nb, {v}};
}

Profile free_profile(const FreeElement& x) {
    if (x.shape->is_eta()) return {x.coloring[0], x.coloring[0]};
    Profile p;
    for (int e : x.shape->leg_order) p.push_back(x.coloring[e]);
    return p;
}

FreeElement free_act(const TreePtr&, const FreeElement& x, const Perm& sigma) {
    const Tree& T = *x.shape;
    if (T.is_eta()) return x;
    if (sigma.size() != T.leg_order.size()) invalid("ActionNotGroupAction", "permutation size mismatch");
    std::vector<int> order(sigma.size());
    for (std::size_t j = 0; j < sigma.size(); ++j) order[j] = T.leg_order[sigma[j]];
    return {share(make_tree(T.edge_ids, T.vertex_ids, T.nbhd, order)), x.coloring, x.labels};
}

FreeElement free_circ(const TreePtr&, const FreeElement& g, int i, const FreeElement& f) {
    Profile pg = free_profile(g), pf = free_profile(f);
    if (i < 1 || i >= static_cast<int>(pg.size())) invalid("OperadAxiomViolation", "composition slot out of range");
    if (pg[i] != pf[0]) invalid("ColorMismatch", "composition colours differ");
    if (g.shape->is_eta()) return f;
    if (f.shape->is_eta()) return g;
    const Tree& G = *g.shape;
    const Tree& F = *f.shape;
    int glue = G.leg_order[i];
    int froot = F.leg_order[0];
    std::vector<int> fmap(F.num_edges());
    int E = G.num_edges();
    for (int e = 0; e < F.num_edges(); ++e) fmap[e] = e == froot ? glue : (e < froot ? E + e : E + e - 1);
    int total = E + F.num_edges() - 1;
    std::vector<std::string> eids, vids;
    for (int e = 0; e < total; ++e) eids.push_back("e" + std::to_string(e));
    for (int v = 0; v < G.num_vertices() + F.num_vertices(); ++v) vids.push_back("x" + std::to_string(v));
    std::vector<std::vector<int>> nb = G.nbhd;
    for (int v = 0; v < F.num_vertices(); ++v) {
        std::vector<int> l;
        for (int e : F.nbhd[v]) l.push_back(fmap[e]);
        nb.push_back(std::move(l));
    }
    std::vector<int> order(G.leg_order.begin(), G.leg_order.begin() + i);
    for (std::size_t k = 1; k < F.leg_order.size(); ++k) order.push_back(fmap[F.leg_order[k]]);
    order.insert(order.end(), G.leg_order.begin() + i + 1, G.leg_order.end());
    std::vector<int> coloring(total);
    for (int e = 0; e < E; ++e) coloring[e] = g.coloring[e];
    for (int e = 0; e < F.num_edges(); ++e) coloring[fmap[e]] = f.coloring[e];
    std::vector<int> labels = g.labels;
    labels.insert(labels.end(), f.labels.begin(), f.labels.end());
    return {share(make_tree(eids, vids, nb, order)), coloring, labels};
}

bool is_free_element(const TreePtr& s, const FreeElement& x) {
    const Tree& T = *x.shape;
    const Tree& S = *s;
    if (static_cast<int>(x.coloring.size()) != T.num_edges() ||
        static_cast<int>(x.labels.size()) != T.num_vertices())
        return false;
    for (int c : x.coloring)
        if (c < 0 || c >= S.num_edges()) return false;
    for (int v = 0; v < T.num_vertices(); ++v) {
        int l = x.labels[v];
        if (l < 0 || l >= S.num_vertices()) return false;
        std::vector<int> a, b = S.nbhd[l];
        for (int e : T.nbhd[v]) a.push_back(x.coloring[e]);
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        if (a != b) return false;
    }
    return true;
}

std::string free_key(const TreePtr& s, const FreeElement& x) {
    std::vector<std::string> el, vl;
    for (int c : x.coloring) el.push_back(s->edge_ids[c]);
    for (int v : x.labels) vl.push_back(s->vertex_ids[v]);
    return canonical_form(*x.shape, {true, false, &el, &vl});
}

std::vector<FreeElement> free_elements(const TreePtr& s, int max_vertices, std::size_t cap) {
    std::map<std::string, FreeElement> found;
    auto add = [&](FreeElement x) {
        if (found.size() >= cap) throw SizeBoundExceeded("free operad enumeration exceeded " + std::to_string(cap));
        std::string k = free_key(s, x);
        return found.emplace(std::move(k), std::move(x)).second;
    };
    for (int c = 0; c < s->num_edges(); ++c) add(free_unit(s, c));
    std::vector<FreeElement> gens;
    if (max_vertices >= 1)
        for (int v = 0; v < s->num_vertices(); ++v) {
            FreeElement g = free_generator(s, v);
            for (const auto& p : all_perms(s->valence(v))) {
                FreeElement x = free_act(s, g, p);
                if (add(x)) gens.push_back(x);
            }
        }
    std::vector<FreeElement> layer = gens;
    for (int n = 1; n < max_vertices; ++n) {
        std::vector<FreeElement> next;
        for (const auto& x : layer) {
            Profile px = free_profile(x);
            for (const auto& y : gens) {
                Profile py = free_profile(y);
                for (int i = 1; i < static_cast<int>(px.size()); ++i) {
                    if (px[i] != py[0]) continue;
                    FreeElement z = free_circ(s, x, i, y);
                    for (const auto& p : all_perms(static_cast<int>(z.shape->leg_order.size()))) {
                        FreeElement w = free_act(s, z, p);
                        if (add(w)) next.push_back(std::move(w));
                    }
                }
            }
        }
        layer = std::move(next);
    }
    std::vector<FreeElement> out;
    for (auto& [k, x] : found) out.push_back(std::move(x));
    return out;
}

FreeElement subgraph_element(const TreePtr& s, const SubGraph& g, const std::vector<int>& leg_order) {
    if (g.is_edge()) return free_unit(s, g.single_edge());
    SubTree st = subgraph_tree(*s, g, leg_order);
    return {share(st.tree), st.edge_to_host, st.vertex_to_host};
}

FunctorImage apply_functor_C(const Morphism& phi) {
    FunctorImage out{phi.phi0, {}};
    const Tree& R = *phi.dom;
    for (int v = 0; v < R.num_vertices(); ++v) {
        std::vector<int> order;
        for (int e : R.nbhd[v]) order.push_back(phi.phi0[e]);
        out.on_generators.push_back(subgraph_element(phi.cod, phi.phi1[v], order));
    }
    return out;
}

std::string functor_image_key(const Morphism& phi) {
    FunctorImage f = apply_functor_C(phi);
    std::string k;
    for (int c : f.on_colors) k += std::to_string(c) + ",";
    for (const auto& x : f.on_generators) k += "|" + free_key(phi.cod, x);
    return k;
}

bool is_free_map(const TreePtr& r, const TreePtr& s, const FunctorImage& f) {
    const Tree& R = *r;
    if (static_cast<int>(f.on_colors.size()) != R.num_edges() ||
        static_cast<int>(f.on_generators.size()) != R.num_vertices())
        return false;
    for (int v = 0; v < R.num_vertices(); ++v) {
        if (!is_free_element(s, f.on_generators[v])) return false;
        Profile want;
        for (int e : R.nbhd[v]) want.push_back(f.on_colors[e]);
        if (free_profile(f.on_generators[v]) != want) return false;
    }
    return true;
}

// ---- maps of finite operads ----------------------------------------------

namespace {

Profile map_profile(const std::vector<int>& colors, const Profile& p) {
    Profile out;
    for (int c : p) out.push_back(colors[c]);
    return out;
}

int resolve_bound(const CyclicOperad& a, int max_arity) {
    if (max_arity >= 0) return max_arity;
    if (a.max_arity() < 0) throw SizeBoundExceeded("source operad is unbounded; pass an arity bound");
    return a.max_arity();
}

class CycMapSearch {
public:
    CycMapSearch(const CyclicOperad& a, const CyclicOperad& b, int bound, std::uint64_t cap)
        : A_(a), B_(b), cap_(cap), ops_(a.all_ops(bound)) {
        for (std::size_t k = 0; k < ops_.size(); ++k) index_[ops_[k]] = static_cast<int>(k);
    }

    std::vector<CycMap> run() {
        colors_.assign(A_.num_colors(), 0);
        color_step(0);
        return out_;
    }

private:
    void tick() {
        if (++visited_ > cap_) throw SizeBoundExceeded("operad map search exceeded " + std::to_string(cap_));
    }

    void color_step(int c) {
        if (c == A_.num_colors()) {
            image_.assign(ops_.size(), Op{});
            op_step(0);
            return;
        }
        for (int d = 0; d < B_.num_colors(); ++d) {
            colors_[c] = d;
            color_step(c + 1);
        }
    }

    // Constraints among ops_[0..t] that involve ops_[t].
    bool consistent(int t) {
        const Op& x = ops_[t];
        for (int c = 0; c < A_.num_colors(); ++c)
            if (A_.unit(c) == x && image_[t] != B_.unit(colors_[c])) return false;
        for (const auto& s : test_perms(x.arity() + 1)) {
            auto it = index_.find(A_.act(x, s));
            if (it == index_.end() || it->second > t) continue;
            if (image_[it->second] != B_.act(image_[t], s)) return false;
        }
        for (int u = 0; u <= t; ++u) {
            const Op& y = ops_[u];
            for (int pass = 0; pass < 2; ++pass) {
                const Op& g = pass ? x : y;
                const Op& f = pass ? y : x;
                int gi = pass ? t : u, fi = pass ? u : t;
                for (int i = 1; i <= g.arity(); ++i) {
                    if (g.profile[i] != f.profile[0]) continue;
                    auto it = index_.find(A_.circ(g, i, f));
                    if (it == index_.end() || it->second > t) continue;
                    if (image_[it->second] != B_.circ(image_[gi], i, image_[fi])) return false;
                }
            }
        }
        return true;
    }

    void op_step(int t) {
        tick();
        if (t == static_cast<int>(ops_.size())) {
            CycMap m{colors_, {}};
            for (std::size_t k = 0; k < ops_.size(); ++k) m.on_ops.emplace(ops_[k], image_[k]);
            out_.push_back(std::move(m));
            return;
        }
        for (const auto& y : B_.ops(map_profile(colors_, ops_[t].profile))) {
            image_[t] = y;
            if (consistent(t)) op_step(t + 1);
        }
    }

    const CyclicOperad& A_;
    const CyclicOperad& B_;
    std::uint64_t cap_;
    std::uint64_t visited_ = 0;
    std::vector<Op> ops_;
    std::map<Op, int> index_;
    std::vector<int> colors_;
    std::vector<Op> image_;
    std::vector<CycMap> out_;
};

} // namespace

std::vector<CycMap> enumerate_cyc_maps(const CyclicOperad& a, const CyclicOperad& b, int max_arity,
                                       std::uint64_t cap) {
    return CycMapSearch(a, b, resolve_bound(a, max_arity), cap).run();
}

bool is_cyc_map(const CyclicOperad& a, const CyclicOperad& b, const CycMap& m, int max_arity) {
    int bound = resolve_bound(a, max_arity);
    auto ops = a.all_ops(bound);
    auto img = [&](const Op& x) -> std::optional<Op> {
        auto it = m.on_ops.find(x);
        if (it == m.on_ops.end()) return std::nullopt;
        return it->second;
    };
    for (int c = 0; c < a.num_colors(); ++c)
        if (img(a.unit(c)) != b.unit(m.on_colors[c])) return false;
    for (const auto& x : ops) {
        auto fx = img(x);
        if (!fx || fx->profile != map_profile(m.on_colors, x.profile)) return false;
        for (const auto& s : test_perms(x.arity() + 1)) {
            auto y = img(a.act(x, s));
            if (y && *y != b.act(*fx, s)) return false;
        }
        for (const auto& f : ops)
            for (int i = 1; i <= x.arity(); ++i) {
                if (x.profile[i] != f.profile[0]) continue;
                auto y = img(a.circ(x, i, f));
                if (y && *y != b.circ(*fx, i, *img(f))) return false;
            }
    }
    return true;
}

} // namespace cdend

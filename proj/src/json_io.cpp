#include "cdend/json_io.hpp"

#include <fstream>
#include <regex>
#include <sstream>

namespace cdend {

namespace {

template <class T>
T get(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw MalformedInput(std::string("missing field '") + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw MalformedInput(std::string("field '") + key + "': " + e.what());
    }
}

int edge_of(const Tree& t, const std::string& id) {
    int e = t.edge_index(id);
    if (e < 0) throw MalformedInput("unknown edge '" + id + "'");
    return e;
}

int vertex_of(const Tree& t, const std::string& id) {
    int v = t.vertex_index(id);
    if (v < 0) throw MalformedInput("unknown vertex '" + id + "'");
    return v;
}

std::string join(const std::vector<std::string>& parts, const char* sep) {
    std::string s;
    for (std::size_t k = 0; k < parts.size(); ++k) s += (k ? sep : "") + parts[k];
    return s;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream in(s);
    std::string part;
    while (std::getline(in, part, sep)) out.push_back(part);
    if (!s.empty() && s.back() == sep) out.emplace_back();
    return out;
}

std::string profile_key(const CyclicOperad& o, const Profile& p) {
    std::vector<std::string> names;
    for (int c : p) names.push_back(o.color_name(c));
    return join(names, "|");
}

Profile parse_profile(const CyclicOperad& o, const std::string& key) {
    Profile p;
    for (const auto& name : split(key, '|')) {
        int c = o.color_index(name);
        if (c < 0) throw MalformedInput("unknown colour '" + name + "'");
        p.push_back(c);
    }
    if (p.empty()) throw MalformedInput("empty profile");
    return p;
}

std::string op_ref(const CyclicOperad& o, const Op& x) { return profile_key(o, x.profile) + "/" + o.op_name(x); }

Op parse_op_ref(const FiniteCyclicOperad& o, const std::string& ref) {
    auto slash = ref.rfind('/');
    if (slash == std::string::npos) throw MalformedInput("operation reference '" + ref + "' needs profile/id");
    Profile p = parse_profile(o, ref.substr(0, slash));
    auto x = o.find_op(p, ref.substr(slash + 1));
    if (!x) throw MalformedInput("unknown operation '" + ref + "'");
    return *x;
}

Op named_op(const FiniteCyclicOperad& o, const Profile& p, const std::string& name) {
    auto x = o.find_op(p, name);
    if (!x) throw MalformedInput("no operation '" + name + "' with profile " + profile_key(o, p));
    return *x;
}

} // namespace

Json load_json_arg(const std::string& arg) {
    std::string text = arg;
    auto first = arg.find_first_not_of(" \t\n");
    if (first == std::string::npos || (arg[first] != '{' && arg[first] != '[')) {
        std::ifstream in(arg);
        if (!in) throw MalformedInput("cannot read '" + arg + "'");
        std::stringstream buf;
        buf << in.rdbuf();
        text = buf.str();
    }
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw MalformedInput(std::string("invalid JSON: ") + e.what());
    }
}

// ---- trees ---------------------------------------------------------------

Json tree_to_json(const Tree& t) {
    RawTree r = to_raw(t);
    Json j;
    j["edges"] = r.edges;
    j["vertices"] = Json::array();
    for (const auto& v : r.vertices) j["vertices"].push_back({{"id", v.id}, {"nbhd", v.nbhd}});
    j["legOrder"] = r.leg_order;
    return j;
}

Tree tree_from_json(const Json& j) {
    RawTree r;
    r.edges = get<std::vector<std::string>>(j, "edges");
    if (!j.contains("vertices") || !j.at("vertices").is_array()) throw MalformedInput("missing field 'vertices'");
    for (const auto& v : j.at("vertices"))
        r.vertices.push_back({get<std::string>(v, "id"), get<std::vector<std::string>>(v, "nbhd")});
    r.leg_order = get<std::vector<std::string>>(j, "legOrder");
    return validate_tree(r);
}

TreePtr tree_from_arg(const std::string& arg) {
    std::smatch m;
    if (arg == "eta") return share(eta());
    if (std::regex_match(arg, m, std::regex(R"(L(\d+))"))) return share(linear(std::stoi(m[1])));
    if (std::regex_match(arg, m, std::regex(R"(star(\d+))"))) return share(star(std::stoi(m[1])));
    if (std::regex_match(arg, m, std::regex(R"(graft(\d+),(\d+),(\d+))")))
        return graft_tree(std::stoi(m[1]), std::stoi(m[2]), std::stoi(m[3]));
    return share(tree_from_json(load_json_arg(arg)));
}

Json subgraph_to_json(const Tree& t, const SubGraph& g) {
    Json v = Json::array(), e = Json::array();
    for (int x : mask_members(g.verts)) v.push_back(t.vertex_ids[x]);
    for (int x : mask_members(g.edges)) e.push_back(t.edge_ids[x]);
    return {{"vertices", v}, {"edges", e}};
}

SubGraph subgraph_from_json(const Tree& t, const Json& j) {
    SubGraph g;
    for (const auto& v : get<std::vector<std::string>>(j, "vertices")) g.verts |= bit(vertex_of(t, v));
    for (const auto& e : get<std::vector<std::string>>(j, "edges")) g.edges |= bit(edge_of(t, e));
    if (!is_valid_subgraph(t, g)) throw ValidationError("BadMap", "not a subgraph", subgraph_to_json(t, g).dump());
    return g;
}

// ---- morphisms -----------------------------------------------------------

Json morphism_to_json(const Morphism& m, bool with_trees) {
    const Tree& R = *m.dom;
    const Tree& S = *m.cod;
    Json j;
    if (with_trees) {
        j["dom"] = tree_to_json(R);
        j["cod"] = tree_to_json(S);
    }
    Json p0 = Json::object(), p1 = Json::object();
    for (int e = 0; e < R.num_edges(); ++e) p0[R.edge_ids[e]] = S.edge_ids[m.phi0[e]];
    for (int v = 0; v < R.num_vertices(); ++v) p1[R.vertex_ids[v]] = subgraph_to_json(S, m.phi1[v]);
    j["phi0"] = p0;
    j["phi1"] = p1;
    return j;
}

Morphism morphism_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("dom") || !j.contains("cod")) throw MalformedInput("morphism needs dom and cod");
    auto tree = [](const Json& t) { return t.is_string() ? tree_from_arg(t.get<std::string>()) : share(tree_from_json(t)); };
    Morphism m{tree(j.at("dom")), tree(j.at("cod")), {}, {}};
    const Tree& R = *m.dom;
    const Tree& S = *m.cod;
    auto p0 = get<std::map<std::string, std::string>>(j, "phi0");
    for (int e = 0; e < R.num_edges(); ++e) {
        auto it = p0.find(R.edge_ids[e]);
        if (it == p0.end()) throw MalformedInput("phi0 misses edge '" + R.edge_ids[e] + "'");
        m.phi0.push_back(edge_of(S, it->second));
    }
    if (R.num_vertices() > 0 && !j.contains("phi1")) throw MalformedInput("missing field 'phi1'");
    for (int v = 0; v < R.num_vertices(); ++v) {
        const auto& p1 = j.at("phi1");
        if (!p1.contains(R.vertex_ids[v])) throw MalformedInput("phi1 misses vertex '" + R.vertex_ids[v] + "'");
        m.phi1.push_back(subgraph_from_json(S, p1.at(R.vertex_ids[v])));
    }
    return m;
}

// ---- operads -------------------------------------------------------------

Json operad_to_json(const FiniteCyclicOperad& o) {
    Json j;
    j["name"] = o.name();
    std::vector<std::string> colors;
    for (int c = 0; c < o.num_colors(); ++c) colors.push_back(o.color_name(c));
    j["colors"] = colors;
    Json ops = Json::object();
    for (const auto& p : o.profiles()) {
        Json ids = Json::array();
        for (const auto& x : o.ops(p)) ids.push_back(o.op_name(x));
        ops[profile_key(o, p)] = ids;
    }
    j["ops"] = ops;
    Json units = Json::object();
    for (int c = 0; c < o.num_colors(); ++c) units[o.color_name(c)] = o.op_name(o.unit(c));
    j["units"] = units;
    Json act = Json::object();
    for (const auto& [key, res] : o.act_table()) {
        std::vector<std::string> s;
        for (int k : key.second) s.push_back(std::to_string(k));
        act[op_ref(o, key.first)][join(s, ",")] = o.op_name(res);
    }
    j["act"] = act;
    Json circ = Json::object();
    for (const auto& [key, res] : o.circ_table()) {
        const auto& [g, i, f] = key;
        circ[op_ref(o, g)][std::to_string(i)][op_ref(o, f)] = o.op_name(res);
    }
    j["circ"] = circ;
    return j;
}

std::shared_ptr<FiniteCyclicOperad> operad_from_json(const Json& j) {
    if (j.is_object() && j.contains("builtin")) {
        auto name = get<std::string>(j, "builtin");
        if (name == "C") return example_C();
        if (name == "Cprime" || name == "C'") return example_Cprime();
        if (name == "A") return example_A();
        throw MalformedInput("no finite built-in operad '" + name + "'");
    }
    auto o = std::make_shared<FiniteCyclicOperad>(j.value("name", std::string("O")),
                                                  get<std::vector<std::string>>(j, "colors"));
    for (const auto& [key, ids] : get<std::map<std::string, std::vector<std::string>>>(j, "ops")) {
        Profile p = parse_profile(*o, key);
        for (const auto& id : ids) o->add_op(p, id);
    }
    for (const auto& [color, id] : get<std::map<std::string, std::string>>(j, "units")) {
        int c = o->color_index(color);
        if (c < 0) throw MalformedInput("unknown colour '" + color + "'");
        o->set_unit(c, named_op(*o, {c, c}, id));
    }
    if (j.contains("act"))
        for (const auto& [ref, table] : j.at("act").items()) {
            Op x = parse_op_ref(*o, ref);
            for (const auto& [perm, id] : table.items()) {
                Perm s;
                try {
                    for (const auto& k : split(perm, ',')) s.push_back(std::stoi(k));
                } catch (const std::exception&) {
                    throw MalformedInput("bad permutation '" + perm + "'");
                }
                auto sorted = s;
                std::sort(sorted.begin(), sorted.end());
                if (sorted != identity_perm(x.arity() + 1))
                    throw MalformedInput("'" + perm + "' is not a permutation of the inputs of " + ref);
                Profile p(s.size());
                for (std::size_t k = 0; k < s.size(); ++k) p[k] = x.profile[s[k]];
                o->set_act(x, s, named_op(*o, p, id.get<std::string>()));
            }
        }
    if (j.contains("circ"))
        for (const auto& [gref, slots] : j.at("circ").items()) {
            Op g = parse_op_ref(*o, gref);
            for (const auto& [slot, table] : slots.items()) {
                int i = 0;
                try {
                    i = std::stoi(slot);
                } catch (const std::exception&) {
                    throw MalformedInput("bad slot '" + slot + "'");
                }
                if (i < 1 || i > g.arity()) throw MalformedInput("slot " + slot + " out of range for " + gref);
                for (const auto& [fref, id] : table.items()) {
                    Op f = parse_op_ref(*o, fref);
                    if (g.profile[i] != f.profile[0]) throw MalformedInput("colours differ in " + gref + " o_" + slot + " " + fref);
                    Profile p(g.profile.begin(), g.profile.begin() + i);
                    p.insert(p.end(), f.profile.begin() + 1, f.profile.end());
                    p.insert(p.end(), g.profile.begin() + i + 1, g.profile.end());
                    o->set_circ(g, i, f, named_op(*o, p, id.get<std::string>()));
                }
            }
        }
    return o;
}

OperadPtr operad_from_arg(const std::string& arg) {
    if (arg == "C" || arg == "Cprime" || arg == "C'" || arg == "A" || arg == "Ass") return builtin_operad(arg);
    return operad_from_json(load_json_arg(arg));
}

Json op_to_json(const CyclicOperad& o, const Op& x) {
    std::vector<std::string> p;
    for (int c : x.profile) p.push_back(o.color_name(c));
    return {{"id", o.op_name(x)}, {"profile", p}};
}

// ---- reports -------------------------------------------------------------

Json coface_to_json(const Coface& c) {
    return {{"kind", coface_kind_name(c.kind)}, {"witness", c.witness}, {"map", morphism_to_json(c.map)}};
}

Json factorization_to_json(const Factorization& f) {
    return {{"kind", f.kind == FactorKind::Reedy ? "reedy" : "active-inert"},
            {"mid", tree_to_json(*f.mid)},
            {"first", morphism_to_json(f.first, false)},
            {"second", morphism_to_json(f.second, false)}};
}

Json nerve_element_to_json(const NervePresheaf& n, const Tree& s, const Element& x) {
    NerveElement d = n.decode(s, x);
    Json col = Json::object(), ops = Json::object();
    for (int e = 0; e < s.num_edges(); ++e) col[s.edge_ids[e]] = n.operad().color_name(d.coloring[e]);
    for (int v = 0; v < s.num_vertices(); ++v) ops[s.vertex_ids[v]] = n.operad().op_name(d.vertex_ops[v]);
    return {{"coloring", col}, {"ops", ops}};
}

Json report_to_json(const CheckReport& r) {
    Json j{{"tree", r.tree}, {"check", r.check}, {"pass", r.pass}};
    if (!r.pass) j["witness"] = r.witness;
    j["trees_checked"] = r.trees_checked;
    j["instances_checked"] = r.instances_checked;
    return j;
}

Json error_to_json(const Error& e) {
    Json j{{"error", e.kind()}, {"message", e.what()}};
    if (!e.witness().empty()) j["witness"] = e.witness();
    return j;
}

} // namespace cdend

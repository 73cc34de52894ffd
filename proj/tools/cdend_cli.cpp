#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cdend/factorization.hpp"
#include "cdend/json_io.hpp"
#include "cdend/nerve.hpp"
#include "cdend/rooting.hpp"
#include "cdend/sampling.hpp"

using namespace cdend;

namespace {

struct Options {
    int bound = 4;
    int legs = 6;
    std::uint64_t cap = kDefaultCap;
    std::uint64_t seed = 1;
    std::string format = "json";
};

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

Json homs_json(const TreePtr& r, const TreePtr& s, const std::vector<Morphism>& homs) {
    Json list = Json::array();
    for (const auto& m : homs) list.push_back(morphism_to_json(m, false));
    return {{"dom", tree_to_json(*r)}, {"cod", tree_to_json(*s)}, {"count", homs.size()}, {"morphisms", list}};
}

// Operad name or JSON gives its nerve; doubled:<tree> and representable:<tree>
// give the corresponding presheaves.
PresheafPtr presheaf_from_arg(const std::string& arg, std::uint64_t cap) {
    auto colon = arg.find(':');
    if (colon != std::string::npos && arg[0] != '{') {
        std::string kind = arg.substr(0, colon);
        TreePtr s = tree_from_arg(arg.substr(colon + 1));
        if (kind == "doubled") return doubled_representable(s, cap);
        if (kind == "representable") return representable(s, cap);
        throw MalformedInput("unknown presheaf kind '" + kind + "'");
    }
    return nerve(operad_from_arg(arg), cap);
}

Elem parse_elem(const Tree& t, const std::string& id) {
    std::string name = id;
    bool want_v = false, want_e = false;
    if (id.rfind("v:", 0) == 0) want_v = true, name = id.substr(2);
    else if (id.rfind("e:", 0) == 0) want_e = true, name = id.substr(2);
    int e = want_v ? -1 : t.edge_index(name);
    int v = want_e ? -1 : t.vertex_index(name);
    if (e >= 0 && v >= 0) throw MalformedInput("'" + name + "' names an edge and a vertex; prefix with e: or v:");
    if (e >= 0) return Elem{false, e};
    if (v >= 0) return Elem{true, v};
    throw MalformedInput("unknown edge or vertex '" + id + "'");
}

int run(int argc, char** argv) {
    CLI::App app{"Trees with legs, cyclic operads and their nerves"};
    app.require_subcommand(1);
    app.fallthrough();
    Options opt;
    app.add_option("--bound", opt.bound, "vertex bound for checks")->capture_default_str();
    app.add_option("--legs", opt.legs, "leg bound for checks")->capture_default_str();
    app.add_option("--cap", opt.cap, "search cap")->capture_default_str();
    app.add_option("--seed", opt.seed, "seed for sampled checks")->capture_default_str();
    app.add_option("--format", opt.format, "json or dot")->check(CLI::IsMember({"json", "dot"}))->capture_default_str();

    std::string a1, a2, a3, via = "rooting", kind = "reedy";
    std::size_t samples = 500;

    auto* validate = app.add_subcommand("validate", "validate a tree, morphism or operad");
    validate->add_option("what", a1)->required()->check(CLI::IsMember({"tree", "morphism", "operad"}));
    validate->add_option("input", a2)->required();

    auto* homs = app.add_subcommand("homs", "list every morphism R -> S");
    homs->add_option("R", a1)->required();
    homs->add_option("S", a2)->required();
    homs->add_option("--via", via)->check(CLI::IsMember({"rooting", "bruteforce"}))->capture_default_str();

    auto* aut = app.add_subcommand("aut", "automorphisms of S");
    aut->add_option("S", a1)->required();

    auto* factor = app.add_subcommand("factor", "factor a morphism");
    factor->add_option("phi", a1)->required();
    factor->add_option("--kind", kind)->check(CLI::IsMember({"reedy", "active-inert"}))->capture_default_str();

    auto* root = app.add_subcommand("root", "root S at a leg");
    root->add_option("S", a1)->required();
    root->add_option("leg", a2)->required();

    auto* dist = app.add_subcommand("distance", "distance and minimal path between edges or vertices");
    dist->add_option("S", a1)->required();
    dist->add_option("x", a2)->required();
    dist->add_option("y", a3)->required();

    auto* cof = app.add_subcommand("cofaces", "cofaces into S");
    cof->add_option("S", a1)->required();

    auto* ner = app.add_subcommand("nerve", "elements of the nerve of O at S");
    ner->add_option("O", a1)->required();
    ner->add_option("S", a2)->required();

    auto* segal = app.add_subcommand("segal-check", "Segal condition up to --bound vertices");
    segal->add_option("X", a1)->required();

    auto* horn = app.add_subcommand("horn-check", "unique fillers for inner horns of S");
    horn->add_option("X", a1)->required();
    horn->add_option("S", a2)->required();
    horn->add_option("edge", a3, "interior edge; every inner horn when omitted");

    auto* cyc = app.add_subcommand("cyc-homs", "maps of cyclic operads A -> B");
    cyc->add_option("A", a1)->required();
    cyc->add_option("B", a2)->required();

    auto* example = app.add_subcommand("example", "print a built-in operad");
    example->add_option("name", a1)->required()->check(CLI::IsMember({"C", "Cprime", "A"}));

    auto* dot = app.add_subcommand("dot", "render S as a DOT graph");
    dot->add_option("S", a1)->required();

    auto* lift = app.add_subcommand("lift-check", "lift random active/inert squares");
    lift->add_option("--samples", samples)->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 3;
    }

    if (*validate) {
        if (a1 == "tree") emit({{"valid", true}, {"tree", tree_to_json(*tree_from_arg(a2))}});
        else if (a1 == "morphism") {
            Morphism m = morphism_from_json(load_json_arg(a2));
            validate_morphism(m);
            emit({{"valid", true}});
        } else {
            OperadPtr o = operad_from_arg(a2);
            validate_operad(*o);
            emit({{"valid", true}, {"operad", o->name()}});
        }
    } else if (*homs) {
        TreePtr r = tree_from_arg(a1), s = tree_from_arg(a2);
        auto l = via == "rooting" ? enumerate_homs_structured(r, s, -1, opt.cap) : enumerate_homs_bruteforce(r, s, opt.cap);
        emit(homs_json(r, s, l));
    } else if (*aut) {
        TreePtr s = tree_from_arg(a1);
        emit(homs_json(s, s, automorphisms(s, opt.cap)));
    } else if (*factor) {
        Morphism m = morphism_from_json(load_json_arg(a1));
        validate_morphism(m);
        emit(factorization_to_json(kind == "reedy" ? reedy_factor(m) : active_inert_factor(m)));
    } else if (*root) {
        TreePtr s = tree_from_arg(a1);
        int leg = s->edge_index(a2);
        if (leg < 0) throw MalformedInput("unknown edge '" + a2 + "'");
        TreePtr t = rootify(s, leg).rooted;
        if (opt.format == "dot") std::cout << to_dot(*t);
        else {
            Json j = tree_to_json(*t);
            j["root"] = a2;
            emit(j);
        }
    } else if (*dist) {
        TreePtr s = tree_from_arg(a1);
        Elem x = parse_elem(*s, a2), y = parse_elem(*s, a3);
        emit({{"distance", distance(*s, x, y)}, {"path", path_to_string(*s, minimal_path(*s, x, y))}});
    } else if (*cof) {
        Json list = Json::array();
        for (const auto& c : cofaces(tree_from_arg(a1))) list.push_back(coface_to_json(c));
        emit(list);
    } else if (*ner) {
        auto n = nerve(operad_from_arg(a1), opt.cap);
        TreePtr s = tree_from_arg(a2);
        Json list = Json::array();
        auto vals = n->value(s);
        for (const auto& x : vals) list.push_back(nerve_element_to_json(*n, *s, x));
        emit({{"operad", n->operad().name()}, {"tree", tree_to_json(*s)}, {"count", vals.size()}, {"elements", list}});
    } else if (*segal) {
        CheckReport r = is_segal(*presheaf_from_arg(a1, opt.cap), opt.bound, opt.legs);
        emit(report_to_json(r));
        return r.pass ? 0 : 1;
    } else if (*horn) {
        PresheafPtr x = presheaf_from_arg(a1, opt.cap);
        TreePtr s = tree_from_arg(a2);
        std::vector<Coface> deltas;
        if (a3.empty()) {
            for (auto& c : cofaces(s))
                if (c.kind == CofaceKind::Inner) deltas.push_back(std::move(c));
        } else {
            int e = s->edge_index(a3);
            if (e < 0) throw MalformedInput("unknown edge '" + a3 + "'");
            deltas.push_back(inner_coface(s, e));
        }
        Json list = Json::array();
        bool all = true;
        for (const auto& d : deltas) {
            std::string w;
            bool ok = unique_inner_filler(*x, s, d, &w, opt.cap);
            all = all && ok;
            Json j{{"tree", tree_summary(*s)}, {"check", "inner-horn " + d.witness}, {"pass", ok}};
            if (!ok) j["witness"] = w;
            j["horn_size"] = inner_horn_homs(*x, s, d, opt.cap).size();
            list.push_back(j);
        }
        emit(list);
        return all ? 0 : 1;
    } else if (*cyc) {
        OperadPtr a = operad_from_arg(a1), b = operad_from_arg(a2);
        auto maps = enumerate_cyc_maps(*a, *b, -1, opt.cap);
        Json list = Json::array();
        for (const auto& m : maps) {
            Json ops = Json::object();
            for (const auto& [x, y] : m.on_ops) ops[a->op_name(x)] = b->op_name(y);
            Json colors = Json::object();
            for (int c = 0; c < a->num_colors(); ++c) colors[a->color_name(c)] = b->color_name(m.on_colors[c]);
            list.push_back({{"colors", colors}, {"ops", ops}});
        }
        emit({{"source", a->name()}, {"target", b->name()}, {"count", maps.size()}, {"maps", list}});
    } else if (*example) {
        emit(operad_to_json(*std::static_pointer_cast<const FiniteCyclicOperad>(builtin_operad(a1))));
    } else if (*dot) {
        std::cout << to_dot(*tree_from_arg(a1));
    } else if (*lift) {
        std::size_t unique = 0;
        Json failures = Json::array();
        auto squares = random_lifting_squares(samples, opt.seed);
        for (const auto& sq : squares) {
            Morphism g = lift_square(sq.phi, sq.psi, sq.alpha, sq.beta);
            auto all = all_lifts(sq);
            if (all.size() == 1 && same_maps(all[0], g)) ++unique;
            else if (failures.size() < 5) failures.push_back(describe(sq.phi) + " / " + describe(sq.psi));
        }
        emit({{"check", "lift"}, {"samples", squares.size()}, {"unique", unique}, {"pass", unique == squares.size()},
              {"failures", failures}});
        return unique == squares.size() ? 0 : 1;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const SizeBoundExceeded& e) {
        emit(error_to_json(e));
        return 2;
    } catch (const MalformedInput& e) {
        emit(error_to_json(e));
        return 3;
    } catch (const Error& e) {
        emit(error_to_json(e));
        return 1;
    }
}

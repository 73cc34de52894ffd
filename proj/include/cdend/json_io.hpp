#pragma once

#include <string>

#include <json.hpp>

#include "cdend/factorization.hpp"
#include "cdend/nerve.hpp"
#include "cdend/operad.hpp"

namespace cdend {

using Json = nlohmann::ordered_json;

// An argument that is either inline JSON or a path to a JSON file.
// MalformedInput on parse failure.
Json load_json_arg(const std::string& arg);

// {"edges":[...],"vertices":[{"id":..,"nbhd":[...]}],"legOrder":[...]}
Json tree_to_json(const Tree& t);
Tree tree_from_json(const Json& j);
// Names: eta, L<n>, star<n>, graft<m>,<n>,<i>; anything else is parsed as
// JSON or read from a file.
TreePtr tree_from_arg(const std::string& arg);

Json subgraph_to_json(const Tree& t, const SubGraph& g);
SubGraph subgraph_from_json(const Tree& t, const Json& j);

// {"dom":Tree,"cod":Tree,"phi0":{edge:edge},"phi1":{vertex:{"vertices":[..],"edges":[..]}}}
Json morphism_to_json(const Morphism& m, bool with_trees = true);
Morphism morphism_from_json(const Json& j);

// {"name":..,"colors":[..],"ops":{"c0|c1|..":[ids]},"units":{colour:id},
//  "act":{"c0|..|cn/id":{"s0,..,sn":id}},"circ":{"g/id":{"i":{"f/id":id}}}}
// or {"builtin":"C"}.
Json operad_to_json(const FiniteCyclicOperad& o);
std::shared_ptr<FiniteCyclicOperad> operad_from_json(const Json& j);
// Built-in name (C, Cprime, A, Ass), inline JSON or a file.
OperadPtr operad_from_arg(const std::string& arg);

Json op_to_json(const CyclicOperad& o, const Op& x);
Json coface_to_json(const Coface& c);
Json factorization_to_json(const Factorization& f);
Json nerve_element_to_json(const NervePresheaf& n, const Tree& s, const Element& x);
Json report_to_json(const CheckReport& r);
Json error_to_json(const Error& e);

} // namespace cdend

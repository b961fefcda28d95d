#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "ctree/coding_tree.hpp"
#include "ctree/points.hpp"

namespace ctree {

// Tree schema:
//   { "vertices": [ {"id": int, "label": "Z"|"w*"|"Q"|"Qd"|{"Qn":n}|{"QnDot":n}|"1",
//                    "level": int, "children": [int], "right_child": int|null } ],
//     "root": int }
nlohmann::json to_json(const CodingTree& t);
/// Rejects malformed documents, unknown ids, shared children and cycles (DecodeError).
CodingTree tree_from_json(const nlohmann::json& j);

std::string to_json_text(const CodingTree& t);
CodingTree tree_from_json_text(std::string_view text);

/// Graphviz digraph, one node per vertex labelled "<label> @<level>";
/// right-child edges are drawn bold.
std::string to_dot(const CodingTree& t);

// Point schema: { "values": [ {"int": k} | {"rat": "p/q"} | {"top": true} ] }, root first.
nlohmann::json to_json(const Value& v);
Value value_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Point& p);
Point point_from_json(const nlohmann::json& j);

}  // namespace ctree

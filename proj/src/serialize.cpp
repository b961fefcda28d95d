#include "ctree/serialize.hpp"

#include <map>
#include <sstream>

#include "ctree/error.hpp"

namespace ctree {

using nlohmann::json;

namespace {

json label_to_json(const Label& label) {
    switch (label.kind) {
        case LabelKind::Qn: return json{{"Qn", label.n}};
        case LabelKind::QnDot: return json{{"QnDot", label.n}};
        default: return to_string(label);
    }
}

Label label_from_json(const json& j) {
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "1") return Label::singleton();
        if (s == "Z") return Label::z();
        if (s == "w*") return Label::wstar();
        if (s == "Q") return Label::q();
        if (s == "Qd") return Label::qdot();
        throw Error(ErrorCode::Decode, "unknown label '" + s + "'");
    }
    if (j.is_object() && j.size() == 1) {
        try {
            if (j.contains("Qn")) return Label::qn(j.at("Qn").get<int>());
            if (j.contains("QnDot")) return Label::qndot(j.at("QnDot").get<int>());
        } catch (const Error& e) {
            throw Error(ErrorCode::Decode, e.what());
        }
    }
    throw Error(ErrorCode::Decode, "malformed label " + j.dump());
}

}  // namespace

json to_json(const CodingTree& t) {
    json vertices = json::array();
    for (VertexId v = 0; v < t.size(); ++v) {
        const Vertex& x = t.vertex(v);
        vertices.push_back({{"id", v},
                            {"label", label_to_json(x.label)},
                            {"level", x.level},
                            {"children", x.children},
                            {"right_child", x.right_child ? json(*x.right_child) : json(nullptr)}});
    }
    return {{"vertices", vertices}, {"root", t.root()}};
}

CodingTree tree_from_json(const json& j) {
    try {
        if (!j.is_object() || !j.contains("vertices") || !j.contains("root"))
            throw Error(ErrorCode::Decode, "expected an object with 'vertices' and 'root'");
        const json& vs = j.at("vertices");
        if (!vs.is_array()) throw Error(ErrorCode::Decode, "'vertices' must be an array");

        std::map<std::int64_t, VertexId> index;
        for (const json& v : vs) {
            const auto id = v.at("id").get<std::int64_t>();
            if (!index.emplace(id, index.size()).second)
                throw Error(ErrorCode::Decode, "duplicate vertex id " + std::to_string(id));
        }
        auto lookup = [&](std::int64_t id) {
            auto it = index.find(id);
            if (it == index.end()) throw Error(ErrorCode::Decode, "unknown vertex id " + std::to_string(id));
            return it->second;
        };

        std::vector<Vertex> vertices;
        std::vector<int> parent_count(index.size(), 0);
        for (const json& v : vs) {
            Vertex x;
            x.label = label_from_json(v.at("label"));
            x.level = v.at("level").get<int>();
            for (const json& c : v.at("children")) {
                const VertexId cid = lookup(c.get<std::int64_t>());
                if (++parent_count[cid] > 1)
                    throw Error(ErrorCode::Decode, "vertex " + std::to_string(c.get<std::int64_t>()) +
                                                       " has more than one parent");
                x.children.push_back(cid);
            }
            if (v.contains("right_child") && !v.at("right_child").is_null()) {
                const VertexId r = lookup(v.at("right_child").get<std::int64_t>());
                if (x.children.empty() || x.children.back() != r)
                    throw Error(ErrorCode::Decode, "right_child must be the last child");
                x.right_child = r;
            }
            vertices.push_back(std::move(x));
        }
        const VertexId root = lookup(j.at("root").get<std::int64_t>());
        if (parent_count[root] != 0) throw Error(ErrorCode::Decode, "root has a parent");
        for (VertexId v = 0; v < parent_count.size(); ++v)
            if (v != root && parent_count[v] == 0)
                throw Error(ErrorCode::Decode, "vertex unreachable from the root");
        try {
            return CodingTree(std::move(vertices), root);
        } catch (const Error& e) {
            throw Error(ErrorCode::Decode, e.what());
        }
    } catch (const json::exception& e) {
        throw Error(ErrorCode::Decode, e.what());
    }
}

std::string to_json_text(const CodingTree& t) { return to_json(t).dump(2) + "\n"; }

CodingTree tree_from_json_text(std::string_view text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw Error(ErrorCode::Decode, "not valid JSON");
    return tree_from_json(j);
}

std::string to_dot(const CodingTree& t) {
    std::ostringstream out;
    out << "digraph coding_tree {\n";
    for (VertexId v = 0; v < t.size(); ++v)
        out << "  n" << v << " [label=\"" << to_string(t.label(v)) << " @" << t.level(v) << "\"];\n";
    for (VertexId v = 0; v < t.size(); ++v) {
        const Vertex& x = t.vertex(v);
        for (VertexId c : x.children) {
            out << "  n" << v << " -> n" << c;
            if (x.right_child && *x.right_child == c) out << " [style=bold]";
            out << ";\n";
        }
    }
    out << "}\n";
    return out.str();
}

json to_json(const Value& v) {
    if (v.is_top()) return {{"top", true}};
    if (v.is_int()) return {{"int", v.as_int()}};
    return {{"rat", to_string(v.as_rational())}};
}

Value value_from_json(const json& j) {
    try {
        if (j.is_object() && j.size() == 1) {
            if (j.contains("int")) return j.at("int").get<std::int64_t>();
            if (j.contains("rat")) return parse_rational(j.at("rat").get<std::string>());
            if (j.contains("top") && j.at("top").get<bool>()) return Top{};
        }
    } catch (const json::exception& e) {
        throw Error(ErrorCode::Decode, e.what());
    }
    throw Error(ErrorCode::Decode, "malformed value " + j.dump());
}

json to_json(const Point& p) {
    json values = json::array();
    for (const Value& v : p.values) values.push_back(to_json(v));
    return {{"values", values}};
}

Point point_from_json(const json& j) {
    if (!j.is_object() || !j.contains("values") || !j.at("values").is_array())
        throw Error(ErrorCode::Decode, "expected an object with a 'values' array");
    Point p;
    for (const json& v : j.at("values")) p.values.push_back(value_from_json(v));
    return p;
}

}  // namespace ctree

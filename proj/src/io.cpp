#include "pcirc/io.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <map>
#include <sstream>

namespace pcirc {

using Json = nlohmann::ordered_json;

const char* kind_name(CircuitKind k) {
    switch (k) {
        case CircuitKind::General: return "general";
        case CircuitKind::Standard: return "standard";
        case CircuitKind::Reduced: return "reduced";
        case CircuitKind::Normal: return "normal";
    }
    return "general";
}

namespace {

int sign_of(const Json& j, const char* what) {
    if (!j.is_number_integer()) throw FormatError(std::string(what) + ": sign must be 1 or -1");
    int s = j.get<int>();
    if (s != 1 && s != -1) throw FormatError(std::string(what) + ": sign must be 1 or -1");
    return s;
}

std::int64_t id_of(const Json& j, const char* what) {
    if (!j.is_number_integer()) throw FormatError(std::string(what) + " must be an integer");
    return j.get<std::int64_t>();
}

const Json& field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw FormatError(std::string("missing field '") + key + "'");
    return j.at(key);
}

}  // namespace

Circuit circuit_from_json(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw FormatError("top level must be an object");
    Circuit c;
    std::map<std::int64_t, VertexId> ids;
    const Json& vs = field(j, "vertices");
    if (!vs.is_array()) throw FormatError("'vertices' must be an array");
    for (const auto& vj : vs) {
        std::int64_t id = id_of(field(vj, "id"), "vertex id");
        if (ids.count(id)) throw FormatError("duplicate vertex id " + std::to_string(id));
        VertexId x = c.add_vertex();
        ids[id] = x;
        if (vj.contains("leaf")) {
            const Json& lf = vj.at("leaf");
            if (lf.is_null()) {
            } else if (lf.is_string() && lf.get<std::string>() == "zero") {
                c.v[x].leaf = LeafKind::Zero;
            } else if (lf.is_object() && lf.contains("var") && lf.at("var").is_string()) {
                c.v[x].leaf = LeafKind::Var;
                c.v[x].var = lf.at("var").get<std::string>();
            } else {
                throw FormatError("vertex " + std::to_string(id) + ": bad leaf label");
            }
        }
    }
    auto lookup = [&](std::int64_t id) {
        auto it = ids.find(id);
        if (it == ids.end()) throw FormatError("unknown vertex id " + std::to_string(id));
        return it->second;
    };
    if (j.contains("edges")) {
        const Json& es = j.at("edges");
        if (!es.is_array()) throw FormatError("'edges' must be an array");
        for (const auto& ej : es) {
            VertexId from = lookup(id_of(field(ej, "from"), "edge origin"));
            VertexId to = lookup(id_of(field(ej, "to"), "edge target"));
            int s = sign_of(field(ej, "sign"), "edge");
            try {
                c.add_edge(from, to, s);
            } catch (const CircuitError& e) {
                throw FormatError(e.what());
            }
        }
    }
    const Json& ms = field(j, "marks");
    if (!ms.is_array()) throw FormatError("'marks' must be an array");
    for (const auto& mj : ms) {
        VertexId x = lookup(id_of(field(mj, "vertex"), "mark vertex"));
        if (c.v[x].mark != 0) throw FormatError("vertex marked twice");
        c.set_mark(x, sign_of(field(mj, "sign"), "mark"));
    }
    try {
        c.validate();
    } catch (const CircuitError& e) {
        throw FormatError(e.what());
    }
    if (j.contains("certificate")) {
        const Json& cj = j.at("certificate");
        Certificate cert;
        const Json& order = field(cj, "order");
        if (!order.is_array()) throw FormatError("certificate order must be an array");
        for (const auto& o : order) cert.order.push_back(lookup(id_of(o, "certificate entry")));
        const Json& dbl = field(cj, "doubles");
        if (!dbl.is_string()) throw FormatError("certificate doubles must be a bit string");
        for (char ch : dbl.get<std::string>()) {
            if (ch != '0' && ch != '1') throw FormatError("certificate doubles must be a bit string");
            cert.doubles.push_back(ch == '1');
        }
        std::vector<VertexId> sorted = cert.order;
        std::sort(sorted.begin(), sorted.end());
        if (sorted.size() != c.num_vertices() || std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end() ||
            cert.doubles.size() + 1 != cert.order.size())
            throw FormatError("certificate does not match the vertex set");
        c.cert = std::move(cert);
    }
    if (j.contains("kind")) {
        const Json& k = j.at("kind");
        std::string s = k.is_string() ? k.get<std::string>() : "";
        if (s == "general")
            c.kind = CircuitKind::General;
        else if (s == "standard")
            c.kind = CircuitKind::Standard;
        else if (s == "reduced")
            c.kind = CircuitKind::Reduced;
        else if (s == "normal")
            c.kind = CircuitKind::Normal;
        else
            throw FormatError("unknown kind");
        if ((c.kind == CircuitKind::Reduced || c.kind == CircuitKind::Normal) && !c.cert)
            throw FormatError("reduced and normal circuits need a certificate");
    }
    return c;
}

std::string circuit_to_json(const Circuit& in) {
    Circuit c = in;
    c.compact();
    Json j;
    Json vs = Json::array();
    Json es = Json::array();
    Json ms = Json::array();
    for (VertexId i = 0; i < static_cast<VertexId>(c.size()); ++i) {
        Json vj;
        vj["id"] = i;
        switch (c.v[i].leaf) {
            case LeafKind::None: vj["leaf"] = nullptr; break;
            case LeafKind::Zero: vj["leaf"] = "zero"; break;
            case LeafKind::Var: vj["leaf"] = Json{{"var", c.v[i].var}}; break;
        }
        vs.push_back(vj);
        std::vector<Edge> out = c.v[i].out;
        std::sort(out.begin(), out.end(), [](const Edge& a, const Edge& b) { return a.to < b.to; });
        for (const auto& e : out) es.push_back(Json{{"from", i}, {"to", e.to}, {"sign", e.sign}});
        if (c.v[i].mark != 0) ms.push_back(Json{{"vertex", i}, {"sign", c.v[i].mark}});
    }
    j["vertices"] = vs;
    j["edges"] = es;
    j["marks"] = ms;
    j["kind"] = kind_name(c.kind);
    if (c.cert) {
        std::string bits;
        for (bool b : c.cert->doubles) bits += b ? '1' : '0';
        j["certificate"] = Json{{"order", c.cert->order}, {"doubles", bits}};
    }
    return j.dump(2) + "\n";
}

std::string circuit_to_dot(const Circuit& in) {
    Circuit c = in;
    c.compact();
    std::ostringstream o;
    o << "digraph circuit {\n";
    o << "  node [shape=circle, style=filled, fillcolor=white, fixedsize=true, width=0.4, label=\"\"];\n";
    for (VertexId i = 0; i < static_cast<VertexId>(c.size()); ++i) {
        const Vertex& x = c.v[i];
        o << "  v" << i << " [";
        std::vector<std::string> attrs;
        if (x.leaf == LeafKind::Zero) attrs.push_back("label=\"0\"");
        if (x.leaf == LeafKind::Var) attrs.push_back("label=\"" + x.var + "\"");
        if (x.mark != 0) {
            attrs.push_back("fillcolor=black");
            attrs.push_back("fontcolor=white");
            attrs.push_back(std::string("xlabel=\"") + (x.mark > 0 ? "+1" : "-1") + "\"");
        }
        for (std::size_t k = 0; k < attrs.size(); ++k) o << (k ? ", " : "") << attrs[k];
        o << "];\n";
    }
    for (VertexId i = 0; i < static_cast<VertexId>(c.size()); ++i) {
        std::vector<Edge> out = c.v[i].out;
        std::sort(out.begin(), out.end(), [](const Edge& a, const Edge& b) { return a.to < b.to; });
        for (const auto& e : out)
            o << "  v" << i << " -> v" << e.to << " [label=\"" << (e.sign > 0 ? "+1" : "-1") << "\"];\n";
    }
    o << "}\n";
    return o.str();
}

std::string hash_hex(std::uint64_t h) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace pcirc

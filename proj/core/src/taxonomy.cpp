#include "taxo/taxonomy.hpp"

#include "taxo/common.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

namespace taxo {

using json = nlohmann::json;

namespace {

std::string csv_quote(const std::string& field) {
    if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += "\"";
    return out;
}

std::vector<std::string> csv_split(const std::string& line, size_t lineno) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (quoted) throw DataError("line " + std::to_string(lineno) + ": unterminated quote");
    fields.push_back(cur);
    return fields;
}

std::string format_score(double score) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", score);
    return buf;
}

double parse_score(const std::string& s, size_t lineno) {
    try {
        size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw DataError("line " + std::to_string(lineno) + ": bad score \"" + s + "\"");
    }
}

} // namespace

void validate(const Taxonomy& t) {
    for (const auto& [name, node] : t.classes) {
        if (node.name != name)
            throw DataError("class map key \"" + name + "\" disagrees with node name");
        if (t.entities.count(name))
            throw DataError("\"" + name + "\" is both a class and an entity");
    }
    for (const auto& [edge, _] : t.subclass_edges) {
        if (!t.classes.count(edge.first))
            throw DataError("subclass edge child \"" + edge.first + "\" is not a class");
        if (!t.classes.count(edge.second))
            throw DataError("subclass edge parent \"" + edge.second + "\" is not a class");
        if (edge.first == edge.second)
            throw DataError("subclass self-loop on \"" + edge.first + "\"");
    }
    for (const auto& [edge, _] : t.instance_edges) {
        if (!t.entities.count(edge.first))
            throw DataError("instance edge source \"" + edge.first + "\" is not an entity");
        if (!t.classes.count(edge.second))
            throw DataError("instance edge target \"" + edge.second + "\" is not a class");
    }

    // DAG check with cycle reporting
    std::map<std::string, std::vector<std::string>> parents;
    for (const auto& [edge, _] : t.subclass_edges) parents[edge.first].push_back(edge.second);
    std::map<std::string, int> color;
    std::vector<std::string> path;
    auto dfs = [&](auto&& self, const std::string& u) -> void {
        color[u] = 1;
        path.push_back(u);
        for (const auto& p : parents[u]) {
            if (color[p] == 1) {
                auto start = std::find(path.begin(), path.end(), p);
                std::vector<std::string> cycle(start, path.end());
                cycle.push_back(p);
                throw DataError("taxonomy contains a cycle: " + join(cycle, " -> "));
            }
            if (color[p] == 0) self(self, p);
        }
        path.pop_back();
        color[u] = 2;
    };
    for (const auto& [name, _] : t.classes)
        if (color[name] == 0) dfs(dfs, name);
}

void serialize(const Taxonomy& t, std::ostream& out, TaxonomyFormat format) {
    if (format == TaxonomyFormat::csv) {
        out << "kind,child,parent,score\n";
        for (const auto& [name, node] : t.classes) {
            out << "class," << csv_quote(name) << ","
                << (node.origin == ClassOrigin::original ? "original" : "wordnet") << ","
                << csv_quote(node.synset_id.value_or("")) << "\n";
        }
        for (const auto& e : t.entities) out << "entity," << csv_quote(e) << ",,\n";
        for (const auto& [edge, score] : t.subclass_edges)
            out << "subclass," << csv_quote(edge.first) << "," << csv_quote(edge.second) << ","
                << format_score(score) << "\n";
        for (const auto& [edge, score] : t.instance_edges)
            out << "instance," << csv_quote(edge.first) << "," << csv_quote(edge.second) << ","
                << format_score(score) << "\n";
        return;
    }

    json j;
    j["classes"] = json::array();
    for (const auto& [name, node] : t.classes) {
        json c{{"name", name},
               {"origin", node.origin == ClassOrigin::original ? "original" : "wordnet"}};
        if (node.synset_id) c["synset"] = *node.synset_id;
        j["classes"].push_back(std::move(c));
    }
    j["entities"] = json::array();
    for (const auto& e : t.entities) j["entities"].push_back(e);
    j["subclass"] = json::array();
    for (const auto& [edge, score] : t.subclass_edges)
        j["subclass"].push_back(json{{"child", edge.first}, {"parent", edge.second}, {"score", score}});
    j["instance"] = json::array();
    for (const auto& [edge, score] : t.instance_edges)
        j["instance"].push_back(json{{"entity", edge.first}, {"class", edge.second}, {"score", score}});
    out << j.dump(2) << "\n";
}

Taxonomy deserialize(std::istream& in, TaxonomyFormat format) {
    Taxonomy t;
    if (format == TaxonomyFormat::csv) {
        std::string line;
        size_t lineno = 0;
        bool header_seen = false;
        while (std::getline(in, line)) {
            ++lineno;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (trim(line).empty()) continue;
            if (!header_seen) {
                header_seen = true;
                if (line == "kind,child,parent,score") continue;
                // header is optional; fall through and parse as a record
            }
            const std::vector<std::string> f = csv_split(line, lineno);
            if (f.size() != 4)
                throw DataError("line " + std::to_string(lineno) + ": expected 4 fields");
            const std::string& kind = f[0];
            if (kind == "class") {
                ClassNode node;
                node.name = f[1];
                if (f[2] == "original") node.origin = ClassOrigin::original;
                else if (f[2] == "wordnet") node.origin = ClassOrigin::wordnet_derived;
                else throw DataError("line " + std::to_string(lineno) + ": bad origin \"" + f[2] + "\"");
                if (!f[3].empty()) node.synset_id = f[3];
                t.classes[node.name] = std::move(node);
            } else if (kind == "entity") {
                t.entities.insert(f[1]);
            } else if (kind == "subclass") {
                t.subclass_edges[{f[1], f[2]}] = parse_score(f[3], lineno);
            } else if (kind == "instance") {
                t.instance_edges[{f[1], f[2]}] = parse_score(f[3], lineno);
            } else {
                throw DataError("line " + std::to_string(lineno) + ": unknown kind \"" + kind + "\"");
            }
        }
    } else {
        json j;
        try {
            j = json::parse(in);
        } catch (const json::exception& e) {
            throw DataError(std::string("bad taxonomy JSON: ") + e.what());
        }
        try {
            for (const auto& c : j.at("classes")) {
                ClassNode node;
                node.name = c.at("name").get<std::string>();
                const std::string origin = c.at("origin").get<std::string>();
                if (origin == "original") node.origin = ClassOrigin::original;
                else if (origin == "wordnet") node.origin = ClassOrigin::wordnet_derived;
                else throw DataError("bad origin \"" + origin + "\"");
                if (c.contains("synset")) node.synset_id = c.at("synset").get<std::string>();
                t.classes[node.name] = std::move(node);
            }
            for (const auto& e : j.at("entities")) t.entities.insert(e.get<std::string>());
            for (const auto& s : j.at("subclass"))
                t.subclass_edges[{s.at("child").get<std::string>(),
                                  s.at("parent").get<std::string>()}] = s.at("score").get<double>();
            for (const auto& i : j.at("instance"))
                t.instance_edges[{i.at("entity").get<std::string>(),
                                  i.at("class").get<std::string>()}] = i.at("score").get<double>();
        } catch (const json::exception& e) {
            throw DataError(std::string("bad taxonomy JSON: ") + e.what());
        }
    }
    validate(t);
    return t;
}

} // namespace taxo

#include "taxo/category_network.hpp"

#include "taxo/common.hpp"

#include <nlohmann/json.hpp>

#include <istream>
#include <ostream>
#include <sstream>

namespace taxo {

namespace {

using json = nlohmann::json;

struct RawRecord {
    char kind = 0;  // C, E, S, M, F
    std::string a;
    std::string b;
};

[[noreturn]] void fail_line(size_t lineno, const std::string& reason) {
    throw DataError("line " + std::to_string(lineno) + ": " + reason);
}

RawRecord parse_tsv_line(const std::string& line, size_t lineno) {
    const std::vector<std::string> fields = split_on(line, '\t');
    if (fields.empty() || fields[0].size() != 1)
        fail_line(lineno, "expected record kind C, E, S, M or F");
    RawRecord rec;
    rec.kind = fields[0][0];
    switch (rec.kind) {
        case 'C':
        case 'E':
            if (fields.size() != 2) fail_line(lineno, "expected 2 fields");
            rec.a = trim(fields[1]);
            if (rec.a.empty()) fail_line(lineno, "empty identifier");
            break;
        case 'S':
        case 'M':
        case 'F':
            if (fields.size() != 3) fail_line(lineno, "expected 3 fields");
            rec.a = trim(fields[1]);
            rec.b = rec.kind == 'F' ? fields[2] : trim(fields[2]);
            if (rec.a.empty() || (rec.kind != 'F' && rec.b.empty()))
                fail_line(lineno, "empty identifier");
            break;
        default:
            fail_line(lineno, std::string("unknown record kind '") + rec.kind + "'");
    }
    return rec;
}

RawRecord parse_json_line(const std::string& line, size_t lineno) {
    json j;
    try {
        j = json::parse(line);
    } catch (const json::exception& e) {
        fail_line(lineno, std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("type") || !j["type"].is_string())
        fail_line(lineno, "expected object with string field \"type\"");
    const std::string type = j["type"].get<std::string>();
    auto field = [&](const char* key) -> std::string {
        if (!j.contains(key) || !j[key].is_string())
            fail_line(lineno, std::string("missing string field \"") + key + "\"");
        return j[key].get<std::string>();
    };
    RawRecord rec;
    if (type == "category") {
        rec.kind = 'C';
        rec.a = trim(field("name"));
    } else if (type == "entity") {
        rec.kind = 'E';
        rec.a = trim(field("name"));
    } else if (type == "subcat") {
        rec.kind = 'S';
        rec.a = trim(field("child"));
        rec.b = trim(field("parent"));
    } else if (type == "member") {
        rec.kind = 'M';
        rec.a = trim(field("entity"));
        rec.b = trim(field("category"));
    } else if (type == "sentence") {
        rec.kind = 'F';
        rec.a = trim(field("category"));
        rec.b = field("text");
    } else {
        fail_line(lineno, "unknown record type \"" + type + "\"");
    }
    if (rec.a.empty() || (rec.kind == 'S' && rec.b.empty()) || (rec.kind == 'M' && rec.b.empty()))
        fail_line(lineno, "empty identifier");
    return rec;
}

} // namespace

CategoryNetwork parse_network(std::istream& in, NetworkFormat format) {
    CategoryNetwork net;
    std::vector<std::pair<RawRecord, size_t>> deferred;  // edges and sentences

    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        if (format == NetworkFormat::tsv && line[0] == '#') continue;

        RawRecord rec = format == NetworkFormat::tsv ? parse_tsv_line(line, lineno)
                                                     : parse_json_line(line, lineno);
        switch (rec.kind) {
            case 'C':
                if (net.entities.count(rec.a))
                    fail_line(lineno, "\"" + rec.a + "\" already declared as entity");
                net.categories.insert(rec.a);
                break;
            case 'E':
                if (net.categories.count(rec.a))
                    fail_line(lineno, "\"" + rec.a + "\" already declared as category");
                net.entities.insert(rec.a);
                break;
            default:
                deferred.emplace_back(std::move(rec), lineno);
        }
    }

    std::vector<std::string> offenders;
    for (const auto& [rec, at] : deferred) {
        switch (rec.kind) {
            case 'S':
                if (rec.a == rec.b) fail_line(at, "self-loop on \"" + rec.a + "\"");
                if (!net.categories.count(rec.a))
                    offenders.push_back("line " + std::to_string(at) + ": undeclared category \"" + rec.a + "\"");
                else if (!net.categories.count(rec.b))
                    offenders.push_back("line " + std::to_string(at) + ": undeclared category \"" + rec.b + "\"");
                else
                    net.subcat_edges.emplace(rec.a, rec.b);
                break;
            case 'M':
                if (!net.entities.count(rec.a))
                    offenders.push_back("line " + std::to_string(at) + ": undeclared entity \"" + rec.a + "\"");
                else if (!net.categories.count(rec.b))
                    offenders.push_back("line " + std::to_string(at) + ": undeclared category \"" + rec.b + "\"");
                else
                    net.membership_edges.emplace(rec.a, rec.b);
                break;
            case 'F':
                if (!net.categories.count(rec.a))
                    offenders.push_back("line " + std::to_string(at) + ": undeclared category \"" + rec.a + "\"");
                else
                    net.first_sentence[rec.a] = rec.b;
                break;
            default:
                break;
        }
    }
    if (!offenders.empty())
        throw DataError("edges reference undeclared nodes:\n  " + join(offenders, "\n  "));
    return net;
}

void serialize_network(const CategoryNetwork& net, std::ostream& out, NetworkFormat format) {
    if (format == NetworkFormat::tsv) {
        for (const auto& c : net.categories) out << "C\t" << c << "\n";
        for (const auto& e : net.entities) out << "E\t" << e << "\n";
        for (const auto& [child, parent] : net.subcat_edges)
            out << "S\t" << child << "\t" << parent << "\n";
        for (const auto& [entity, cat] : net.membership_edges)
            out << "M\t" << entity << "\t" << cat << "\n";
        for (const auto& [cat, text] : net.first_sentence)
            out << "F\t" << cat << "\t" << text << "\n";
        return;
    }
    for (const auto& c : net.categories)
        out << json{{"type", "category"}, {"name", c}}.dump() << "\n";
    for (const auto& e : net.entities)
        out << json{{"type", "entity"}, {"name", e}}.dump() << "\n";
    for (const auto& [child, parent] : net.subcat_edges)
        out << json{{"type", "subcat"}, {"child", child}, {"parent", parent}}.dump() << "\n";
    for (const auto& [entity, cat] : net.membership_edges)
        out << json{{"type", "member"}, {"entity", entity}, {"category", cat}}.dump() << "\n";
    for (const auto& [cat, text] : net.first_sentence)
        out << json{{"type", "sentence"}, {"category", cat}, {"text", text}}.dump() << "\n";
}

StatsSummary network_stats(const CategoryNetwork& net) {
    StatsSummary s;
    s.categories = net.categories.size();
    s.entities = net.entities.size();
    s.subcat_edges = net.subcat_edges.size();
    s.membership_edges = net.membership_edges.size();
    std::set<std::string> has_parent, has_child;
    for (const auto& [child, parent] : net.subcat_edges) {
        has_parent.insert(child);
        has_child.insert(parent);
    }
    for (const auto& c : net.categories) {
        if (!has_parent.count(c)) ++s.roots;
        if (!has_child.count(c)) ++s.leaves;
    }
    return s;
}

RelationLookup parse_relation_lookup(std::istream& in) {
    RelationLookup lookup;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty() || line[0] == '#') continue;
        const std::vector<std::string> fields = split_on(line, '\t');
        if (fields.size() != 2) fail_line(lineno, "expected `subject\\tclass`");
        const std::string subject = trim(fields[0]);
        const std::string cls = trim(fields[1]);
        if (subject.empty()) fail_line(lineno, "blank subject");
        if (cls.empty()) fail_line(lineno, "blank class");
        lookup[subject].insert(cls);
    }
    return lookup;
}

std::vector<LabeledItem> parse_category_labels(std::istream& in) {
    std::vector<LabeledItem> out;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty() || line[0] == '#') continue;
        const std::vector<std::string> fields = split_on(line, '\t');
        if (fields.size() != 2) fail_line(lineno, "expected `category\\tlabel`");
        const std::string item = trim(fields[0]);
        const std::string lab = trim(fields[1]);
        if (item.empty()) fail_line(lineno, "blank category");
        if (lab != "0" && lab != "1") fail_line(lineno, "label must be 0 or 1");
        out.push_back({item, lab == "1" ? 1 : 0});
    }
    return out;
}

std::vector<LabeledEdge> parse_edge_labels(std::istream& in) {
    std::vector<LabeledEdge> out;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty() || line[0] == '#') continue;
        const std::vector<std::string> fields = split_on(line, '\t');
        if (fields.size() != 3) fail_line(lineno, "expected `child\\tparent\\tlabel`");
        const std::string child = trim(fields[0]);
        const std::string parent = trim(fields[1]);
        const std::string lab = trim(fields[2]);
        if (child.empty() || parent.empty()) fail_line(lineno, "blank identifier");
        if (lab != "0" && lab != "1") fail_line(lineno, "label must be 0 or 1");
        out.push_back({child, parent, lab == "1" ? 1 : 0});
    }
    return out;
}

void validate_category_labels(const CategoryNetwork& net, const std::vector<LabeledItem>& labels) {
    std::vector<std::string> missing;
    for (const auto& l : labels)
        if (!net.categories.count(l.item)) missing.push_back(l.item);
    if (!missing.empty())
        throw DataError("labeled categories missing from network: " + join(missing, ", "));
}

void validate_edge_labels(const CategoryNetwork& net, const std::vector<LabeledEdge>& labels) {
    std::vector<std::string> missing;
    for (const auto& l : labels)
        if (!net.subcat_edges.count({l.child, l.parent}))
            missing.push_back(l.child + " -> " + l.parent);
    if (!missing.empty())
        throw DataError("labeled edges missing from network: " + join(missing, ", "));
}

} // namespace taxo

#include "taxo/search.hpp"

#include "taxo/common.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace taxo {

std::set<std::string> match_classes(const Taxonomy& t, const std::string& phrase) {
    std::set<std::string> out;
    const std::string needle = to_lower(phrase);
    if (needle.empty()) return out;
    for (const auto& [name, _] : t.classes)
        if (to_lower(name).find(needle) != std::string::npos) out.insert(name);
    return out;
}

namespace {

struct Extent {
    // entity -> BFS level it was first discovered at
    std::map<std::string, size_t> level;
};

Extent collect_extent(const Taxonomy& t, const std::set<std::string>& seeds) {
    // children adjacency over subclass edges, instances per class
    std::map<std::string, std::vector<std::string>> subclasses;
    std::map<std::string, std::vector<std::string>> instances;
    for (const auto& [e, _] : t.subclass_edges) subclasses[e.second].push_back(e.first);
    for (const auto& [e, _] : t.instance_edges) instances[e.second].push_back(e.first);

    Extent extent;
    std::map<std::string, size_t> class_level;
    std::deque<std::string> queue;
    for (const auto& s : seeds) {
        class_level[s] = 0;
        queue.push_back(s);
    }
    while (!queue.empty()) {
        const std::string cls = queue.front();
        queue.pop_front();
        const size_t lvl = class_level.at(cls);
        for (const auto& e : instances[cls]) {
            auto it = extent.level.find(e);
            if (it == extent.level.end() || lvl + 1 < it->second) extent.level[e] = lvl + 1;
        }
        for (const auto& sub : subclasses[cls]) {
            if (!class_level.count(sub)) {
                class_level[sub] = lvl + 1;
                queue.push_back(sub);
            }
        }
    }
    return extent;
}

std::vector<std::string> ordered(const Extent& extent) {
    std::vector<std::pair<size_t, std::string>> items;
    items.reserve(extent.level.size());
    for (const auto& [e, lvl] : extent.level) items.emplace_back(lvl, e);
    std::sort(items.begin(), items.end());
    std::vector<std::string> out;
    out.reserve(items.size());
    for (auto& [_, e] : items) out.push_back(std::move(e));
    return out;
}

std::vector<std::string> truncate(std::vector<std::string> v) {
    if (v.size() > kMaxAnswers) v.resize(kMaxAnswers);
    return v;
}

} // namespace

std::vector<std::string> single_extent(const Taxonomy& t, const std::string& phrase) {
    return ordered(collect_extent(t, match_classes(t, phrase)));
}

QueryAnswer query_single(const Taxonomy& t, const std::string& type) {
    QueryAnswer out;
    const std::set<std::string> matches = match_classes(t, type);
    out.class_matches.assign(matches.begin(), matches.end());
    out.answers = truncate(ordered(collect_extent(t, matches)));
    return out;
}

QueryAnswer query_intersection(const Taxonomy& t, const std::string& t1, const std::string& t2) {
    QueryAnswer out;
    const std::set<std::string> m1 = match_classes(t, t1);
    const std::set<std::string> m2 = match_classes(t, t2);
    for (const auto& c : m1) out.class_matches.push_back(c);
    for (const auto& c : m2)
        if (!m1.count(c)) out.class_matches.push_back(c);
    std::sort(out.class_matches.begin(), out.class_matches.end());

    const std::vector<std::string> first = ordered(collect_extent(t, m1));
    const Extent second = collect_extent(t, m2);
    std::vector<std::string> kept;
    for (const auto& e : first)
        if (second.level.count(e)) kept.push_back(e);
    out.answers = truncate(std::move(kept));
    return out;
}

QueryAnswer query_difference(const Taxonomy& t, const std::string& t1, const std::string& t2) {
    QueryAnswer out;
    const std::set<std::string> m1 = match_classes(t, t1);
    const std::set<std::string> m2 = match_classes(t, t2);
    for (const auto& c : m1) out.class_matches.push_back(c);
    for (const auto& c : m2)
        if (!m1.count(c)) out.class_matches.push_back(c);
    std::sort(out.class_matches.begin(), out.class_matches.end());

    const std::vector<std::string> first = ordered(collect_extent(t, m1));
    const Extent second = collect_extent(t, m2);
    std::vector<std::string> kept;
    for (const auto& e : first)
        if (!second.level.count(e)) kept.push_back(e);
    out.answers = truncate(std::move(kept));
    return out;
}

} // namespace taxo

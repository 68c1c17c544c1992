#include "taxo/graph_features.hpp"

#include "taxo/common.hpp"

#include <algorithm>
#include <random>
#include <set>

namespace taxo {

namespace {

// Union-find over category names.
struct DisjointSets {
    std::map<std::string, std::string> parent;

    const std::string& find(const std::string& x) {
        auto it = parent.find(x);
        if (it == parent.end()) {
            parent[x] = x;
            return parent.find(x)->first;
        }
        if (it->second == x) return it->first;
        const std::string root = find(it->second);
        parent[x] = root;
        return parent.find(x)->second;
    }

    void unite(const std::string& a, const std::string& b) {
        const std::string ra = find(a), rb = find(b);
        if (ra != rb) parent[ra] = rb;
    }
};

} // namespace

NetworkIndex::NetworkIndex(const CategoryNetwork& net) : net_(&net) {
    for (const auto& c : net.categories) {
        parents_[c];
        children_[c];
        members_[c];
    }
    for (const auto& [child, parent] : net.subcat_edges) {
        parents_[child].push_back(parent);
        children_[parent].push_back(child);
    }
    for (const auto& [entity, cat] : net.membership_edges)
        members_[cat].push_back(entity);
    // insertion order already sorted (source sets are ordered), but keep
    // the guarantee explicit
    for (auto* m : {&parents_, &children_, &members_})
        for (auto& [_, v] : *m) std::sort(v.begin(), v.end());

    DisjointSets ds;
    for (const auto& c : net.categories) ds.find(c);
    for (const auto& [child, parent] : net.subcat_edges) ds.unite(child, parent);
    std::map<std::string, int> sizes;
    for (const auto& c : net.categories) sizes[ds.find(c)]++;
    for (const auto& c : net.categories) component_size_[c] = sizes[ds.find(c)];
}

bool NetworkIndex::has_category(const std::string& cat) const {
    return net_->categories.count(cat) > 0;
}

void NetworkIndex::require_category(const std::string& cat) const {
    if (!has_category(cat)) throw DataError("unknown category \"" + cat + "\"");
}

const std::vector<std::string>& NetworkIndex::parents(const std::string& cat) const {
    require_category(cat);
    return parents_.at(cat);
}

const std::vector<std::string>& NetworkIndex::child_categories(const std::string& cat) const {
    require_category(cat);
    return children_.at(cat);
}

const std::vector<std::string>& NetworkIndex::members(const std::string& cat) const {
    require_category(cat);
    return members_.at(cat);
}

int NetworkIndex::component_size(const std::string& cat) const {
    require_category(cat);
    return component_size_.at(cat);
}

int instance_count(const NetworkIndex& idx, const std::string& cat) {
    return static_cast<int>(idx.members(cat).size());
}

DegreeCounts degree_counts(const NetworkIndex& idx, const std::string& cat) {
    return {static_cast<int>(idx.parents(cat).size()),
            static_cast<int>(idx.child_categories(cat).size())};
}

namespace {

// Depth-first enumeration of simple upward paths. Returns false once the
// path budget is exhausted.
bool enumerate_paths(const NetworkIndex& idx, const std::string& node,
                     std::set<std::string>& on_path, size_t depth,
                     size_t& count, double& total) {
    const auto& ps = idx.parents(node);
    bool extended = false;
    for (const auto& p : ps) {
        if (on_path.count(p)) continue;
        extended = true;
        on_path.insert(p);
        if (!enumerate_paths(idx, p, on_path, depth + 1, count, total)) return false;
        on_path.erase(p);
    }
    if (!extended) {
        if (count >= kMaxDepthPaths) return false;
        ++count;
        total += static_cast<double>(depth);
    }
    return true;
}

double sampled_depth(const NetworkIndex& idx, const std::string& cat) {
    std::mt19937_64 rng(0x9e3779b97f4a7c15ULL ^ fnv1a64(cat));
    double total = 0;
    std::set<std::string> visited;
    for (size_t s = 0; s < kDepthWalkSamples; ++s) {
        visited.clear();
        visited.insert(cat);
        std::string cur = cat;
        size_t len = 0;
        for (;;) {
            std::vector<const std::string*> next;
            for (const auto& p : idx.parents(cur))
                if (!visited.count(p)) next.push_back(&p);
            if (next.empty()) break;
            const size_t pick =
                next.size() == 1 ? 0 : std::uniform_int_distribution<size_t>(0, next.size() - 1)(rng);
            cur = *next[pick];
            visited.insert(cur);
            ++len;
        }
        total += static_cast<double>(len);
    }
    return total / static_cast<double>(kDepthWalkSamples);
}

} // namespace

double average_upward_depth(const NetworkIndex& idx, const std::string& cat) {
    idx.require_category(cat);
    if (idx.parents(cat).empty()) return 0.0;
    size_t count = 0;
    double total = 0;
    std::set<std::string> on_path{cat};
    if (!enumerate_paths(idx, cat, on_path, 0, count, total))
        return sampled_depth(idx, cat);
    return total / static_cast<double>(count);
}

int connected_subgraph_size(const NetworkIndex& idx, const std::string& cat) {
    return idx.component_size(cat);
}

int common_children_support(const NetworkIndex& idx, const std::string& c1, const std::string& c2) {
    idx.require_category(c1);
    idx.require_category(c2);
    std::set<std::string> kids1;
    kids1.insert(idx.child_categories(c1).begin(), idx.child_categories(c1).end());
    kids1.insert(idx.members(c1).begin(), idx.members(c1).end());
    int common = 0;
    for (const auto& k : idx.child_categories(c2))
        if (kids1.count(k)) ++common;
    for (const auto& k : idx.members(c2))
        if (kids1.count(k)) ++common;
    return common;
}

double children_depth_ratio(const NetworkIndex& idx, const std::string& parent) {
    idx.require_category(parent);
    const double subcats = static_cast<double>(idx.child_categories(parent).size());
    return subcats / (average_upward_depth(idx, parent) + 1.0);
}

DepthTable build_depth_table(const NetworkIndex& idx) {
    DepthTable table;
    for (const auto& c : idx.network().categories)
        table[c] = average_upward_depth(idx, c);
    return table;
}

} // namespace taxo

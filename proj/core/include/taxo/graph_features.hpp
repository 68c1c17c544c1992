#pragma once

#include "taxo/category_network.hpp"

#include <map>
#include <string>
#include <vector>

namespace taxo {

struct DegreeCounts {
    int supercats = 0;
    int subcats = 0;

    bool operator==(const DegreeCounts&) const = default;
};

/// Immutable adjacency view over a CategoryNetwork. All neighbor lists are
/// sorted, so every computation on top of it is deterministic and
/// independent of input-line order. Safe for concurrent reads.
class NetworkIndex {
public:
    explicit NetworkIndex(const CategoryNetwork& net);

    const CategoryNetwork& network() const { return *net_; }
    bool has_category(const std::string& cat) const;
    /// Throws DataError if cat is not a category of the network.
    void require_category(const std::string& cat) const;

    const std::vector<std::string>& parents(const std::string& cat) const;
    const std::vector<std::string>& child_categories(const std::string& cat) const;
    const std::vector<std::string>& members(const std::string& cat) const;

    /// Size of the weakly-connected component of the subcategory graph
    /// containing cat (categories only; isolated category -> 1).
    int component_size(const std::string& cat) const;

private:
    const CategoryNetwork* net_;
    std::map<std::string, std::vector<std::string>> parents_;
    std::map<std::string, std::vector<std::string>> children_;
    std::map<std::string, std::vector<std::string>> members_;
    std::map<std::string, int> component_size_;
};

/// Number of direct instances (membership edges into cat).
int instance_count(const NetworkIndex& idx, const std::string& cat);

/// (number of parent categories, number of child categories).
DegreeCounts degree_counts(const NetworkIndex& idx, const std::string& cat);

/// Mean edge count over all distinct simple upward paths from cat
/// (node revisits forbidden, so the value is defined on cyclic inputs);
/// 0 for a category with no parents. Enumeration is capped at
/// kMaxDepthPaths paths; past the cap the value falls back to the mean
/// length of kDepthWalkSamples seeded random upward walks.
double average_upward_depth(const NetworkIndex& idx, const std::string& cat);

int connected_subgraph_size(const NetworkIndex& idx, const std::string& cat);

/// |children(c1) ∩ children(c2)| where children = direct subcategories
/// plus direct member entities.
int common_children_support(const NetworkIndex& idx, const std::string& c1, const std::string& c2);

/// subcategory-count(parent) / (average_upward_depth(parent) + 1).
double children_depth_ratio(const NetworkIndex& idx, const std::string& parent);

using DepthTable = std::map<std::string, double>;

DepthTable build_depth_table(const NetworkIndex& idx);

inline constexpr size_t kMaxDepthPaths = 10000;
inline constexpr size_t kDepthWalkSamples = 10000;

} // namespace taxo

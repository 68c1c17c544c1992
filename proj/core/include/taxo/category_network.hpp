#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace taxo {

/// Raw input graph from a wiki-style category system. Immutable value
/// semantics; all containers are ordered so iteration is deterministic.
struct CategoryNetwork {
    std::set<std::string> categories;
    std::set<std::string> entities;
    /// (child category, parent category)
    std::set<std::pair<std::string, std::string>> subcat_edges;
    /// (entity, category)
    std::set<std::pair<std::string, std::string>> membership_edges;
    /// category -> first sentence of its page, where known
    std::map<std::string, std::string> first_sentence;

    bool operator==(const CategoryNetwork&) const = default;
};

enum class NetworkFormat { tsv, json_lines };

/// Parses the normalized TSV or JSON-lines network format (see FORMATS.md).
/// Identifiers are whitespace-trimmed, duplicate edges are deduplicated.
/// Throws DataError naming the line for malformed rows, self-loops, or
/// edges that reference undeclared nodes.
CategoryNetwork parse_network(std::istream& in, NetworkFormat format);

void serialize_network(const CategoryNetwork& net, std::ostream& out, NetworkFormat format);

struct StatsSummary {
    size_t categories = 0;
    size_t entities = 0;
    size_t subcat_edges = 0;
    size_t membership_edges = 0;
    size_t roots = 0;   // categories with no parent
    size_t leaves = 0;  // categories with no child category

    bool operator==(const StatsSummary&) const = default;
};

StatsSummary network_stats(const CategoryNetwork& net);

/// subject -> set of class strings (instance-of / subclass-of assertions
/// from an external knowledge-base dump).
using RelationLookup = std::map<std::string, std::set<std::string>>;

/// TSV of `subject\tclass` rows; duplicates collapse into the set.
RelationLookup parse_relation_lookup(std::istream& in);

struct LabeledItem {
    std::string item;
    int label = 0;

    bool operator==(const LabeledItem&) const = default;
};

struct LabeledEdge {
    std::string child;
    std::string parent;
    int label = 0;

    bool operator==(const LabeledEdge&) const = default;
};

/// TSV `category\t0|1`, '#' comments allowed.
std::vector<LabeledItem> parse_category_labels(std::istream& in);

/// TSV `child\tparent\t0|1`, '#' comments allowed.
std::vector<LabeledEdge> parse_edge_labels(std::istream& in);

/// Throw DataError listing labeled items/edges missing from the network.
void validate_category_labels(const CategoryNetwork& net, const std::vector<LabeledItem>& labels);
void validate_edge_labels(const CategoryNetwork& net, const std::vector<LabeledEdge>& labels);

} // namespace taxo

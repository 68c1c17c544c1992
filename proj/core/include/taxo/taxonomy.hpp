#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>

namespace taxo {

enum class ClassOrigin { original, wordnet_derived };

struct ClassNode {
    std::string name;
    ClassOrigin origin = ClassOrigin::original;
    std::optional<std::string> synset_id;

    bool operator==(const ClassNode&) const = default;
};

/// Cleaned DAG: internal class nodes (possibly WordNet-derived), entity
/// leaves, subclass and instance-of edges with provenance scores.
struct Taxonomy {
    std::map<std::string, ClassNode> classes;
    std::set<std::string> entities;
    /// (child class, parent class) -> score
    std::map<std::pair<std::string, std::string>, double> subclass_edges;
    /// (entity, class) -> score
    std::map<std::pair<std::string, std::string>, double> instance_edges;

    bool operator==(const Taxonomy&) const = default;
};

/// Checks the structural invariants: subclass edges connect known classes
/// and form a DAG (the error names a cycle), instance edges go from a known
/// entity to a known class, class and entity names are disjoint.
void validate(const Taxonomy& t);

enum class TaxonomyFormat { csv, json };

/// Lossless, deterministic serialization (formats in FORMATS.md).
void serialize(const Taxonomy& t, std::ostream& out, TaxonomyFormat format);

/// Parses and validates; cyclic or dangling data raises DataError.
Taxonomy deserialize(std::istream& in, TaxonomyFormat format);

} // namespace taxo

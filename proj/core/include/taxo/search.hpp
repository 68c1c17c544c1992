#pragma once

#include "taxo/taxonomy.hpp"

#include <set>
#include <string>
#include <vector>

namespace taxo {

inline constexpr size_t kMaxAnswers = 10;

/// Classes whose names contain the phrase as a substring
/// (ASCII-case-insensitive).
std::set<std::string> match_classes(const Taxonomy& t, const std::string& phrase);

/// Entities of the matched classes and all their transitive subclasses,
/// collected breadth-first and ordered by (BFS level, name); untruncated.
std::vector<std::string> single_extent(const Taxonomy& t, const std::string& phrase);

struct QueryAnswer {
    std::vector<std::string> answers;        // truncated to kMaxAnswers
    std::vector<std::string> class_matches;  // sorted matched class names

    bool operator==(const QueryAnswer&) const = default;
};

QueryAnswer query_single(const Taxonomy& t, const std::string& type);

/// Set intersection of the untruncated extents, then truncation; answer
/// order follows the first operand's extent order.
QueryAnswer query_intersection(const Taxonomy& t, const std::string& t1, const std::string& t2);

/// Set difference extent(t1) \ extent(t2), then truncation.
QueryAnswer query_difference(const Taxonomy& t, const std::string& t1, const std::string& t2);

} // namespace taxo

#pragma once

#include "taxo/category_network.hpp"
#include "taxo/classifier.hpp"
#include "taxo/embeddings.hpp"
#include "taxo/graph_features.hpp"
#include "taxo/lexical.hpp"
#include "taxo/taxonomy.hpp"
#include "taxo/wordnet.hpp"

#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace taxo {

enum class HeadMatchVerdict { Subclass, NotSubclass, Unknown };

/// The three head-word cases over a candidate (child, parent) pair:
/// shared head with pre- or pos-extension -> Subclass; parent head buried
/// in the child's pre/pos -> NotSubclass; anything else -> Unknown.
HeadMatchVerdict headword_match(const NameParts& child, const NameParts& parent);

/// True iff c1's only parent in the network is c2 and c2 has a plural head.
/// Throws DataError when (c1, c2) is not a subcategory edge.
bool only_plural_parent(const NetworkIndex& idx, const std::string& c1, const std::string& c2);

/// Hypernym lemmas from a page's first sentence: heads of the first
/// post-copula noun phrase(s), lowercased and singularized. Empty when no
/// copula pattern matches.
std::vector<std::string> page_hypernyms(const std::string& sentence);

const std::vector<std::string>& category_feature_names();

FeatureRow category_features(const NetworkIndex& idx, const std::string& cat,
                             const std::vector<std::string>& meta_terms);

/// One labeled/unlabeled row per category of the network.
Dataset category_dataset(const NetworkIndex& idx, const std::vector<std::string>& meta_terms,
                         const std::vector<LabeledItem>* labels = nullptr);

struct CleanCategoriesResult {
    std::set<std::string> kept;
    std::map<std::string, double> scores;
    CategoryNetwork pruned;
};

/// Keeps categories with predict_proba >= threshold; the pruned network
/// drops removed categories with all their incident edges (no orphan
/// reattachment).
CleanCategoriesResult clean_categories(const CategoryNetwork& net, const LogRegModel& model,
                                       double threshold,
                                       const std::vector<std::string>& meta_terms);

/// Immutable bundle of everything edge features need. Synset links are
/// memoized for every category at build time (first sentence + parent and
/// child category names as context). Optional resources may be null; the
/// features they back are then emitted as absent.
struct EdgeContext {
    const CategoryNetwork* network = nullptr;
    std::shared_ptr<NetworkIndex> index;
    const WordNetDb* wordnet = nullptr;
    const EmbeddingTable* embeddings = nullptr;
    const RelationLookup* relations = nullptr;
    std::map<std::string, std::optional<LinkResult>> synset_links;

    static EdgeContext build(const CategoryNetwork& net, const WordNetDb* wn,
                             const EmbeddingTable* emb, const RelationLookup* rel);
};

const std::vector<std::string>& edge_feature_names();

/// Ordered features with presence companions for the optional ones; throws
/// DataError when (c1, c2) is not an edge of the context's network.
FeatureRow edge_features(const EdgeContext& ctx, const std::string& c1, const std::string& c2);

Dataset edge_dataset(const EdgeContext& ctx, const std::vector<LabeledEdge>* labels = nullptr);

using Edge = std::pair<std::string, std::string>;

struct CleanEdgesResult {
    std::set<Edge> kept;
    std::map<Edge, double> scores;
};

CleanEdgesResult clean_edges(const EdgeContext& ctx, const LogRegModel& model, double threshold);

struct AssembleResult {
    Taxonomy taxonomy;
    /// kept edges dropped to restore acyclicity (lowest score per cycle)
    std::vector<Edge> dropped_cycle_edges;
};

/// Taxonomy from a pruned network and the surviving edges: original classes,
/// entities with at least one surviving membership edge, instance edges at
/// score 1. Deterministically re-establishes acyclicity if cleaning kept a
/// cycle.
AssembleResult assemble_taxonomy(const CategoryNetwork& pruned, const CleanEdgesResult& edges);

using Corrections = std::map<std::string, std::optional<std::string>>;

/// One synset id per line, '#' comments.
std::set<std::string> load_blacklist(std::istream& in);

/// TSV `category\tsynset-id|none`, '#' comments.
Corrections load_corrections(std::istream& in);

/// Top-level construction: (1) graft hypernym chains above linked classes
/// (corrections override individual links; synsets claimed by an original
/// class reuse that class as the chain node), (2) compress single-parent
/// single-child WordNet-derived nodes, (3) delete blacklisted synsets,
/// splicing children to surviving ancestors. A chain hop that contradicts
/// the existing structure is skipped when the link was automatic, and is a
/// DataError naming the conflict when a correction forced it.
Taxonomy build_top_level(const Taxonomy& cleaned, const WordNetDb& db,
                         const std::map<std::string, std::optional<LinkResult>>& links,
                         const std::set<std::string>& blacklist,
                         const Corrections& corrections);

/// Splices out every WordNet-derived node with exactly one parent and one
/// child; idempotent; original classes are never touched.
Taxonomy compress_chains(const Taxonomy& t);

} // namespace taxo

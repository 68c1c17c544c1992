#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace taxo {

/// One noun sense: sense-key id, lowercase lemmas, gloss, sense rank
/// (1 = most frequent for its lemma) and hypernym synset ids.
struct Synset {
    std::string id;
    std::vector<std::string> lemmas;
    std::string gloss;
    int rank = 1;
    std::vector<std::string> hypernyms;

    bool operator==(const Synset&) const = default;
};

/// Bag of words: lowercased token -> count, stopwords removed.
using ContextVector = std::map<std::string, int>;

ContextVector context_vector(const std::string& text);
ContextVector context_vector(const std::vector<std::string>& tokens);
double cosine(const ContextVector& a, const ContextVector& b);
const std::vector<std::string>& default_stopwords();

struct LinkResult {
    std::string synset_id;
    double score = 0.0;

    bool operator==(const LinkResult&) const = default;
};

/// Immutable hypernym DAG over noun synsets with an explicit virtual root
/// above all parentless synsets. depth() counts edges to the nearest
/// parentless synset (the virtual root and parentless synsets are both at
/// depth 0), which keeps Wu-Palmer total and hypernym_chain lengths equal
/// to depths. All queries are const and thread-safe.
class WordNetDb {
public:
    /// Mini-fixture TSV: `id\trank\tlemmas(comma)\thypernyms(comma)\tgloss`.
    static WordNetDb load_fixture(std::istream& in);

    /// Standard WordNet 3.x flat noun files (data.noun + index.noun) in dir.
    static WordNetDb load_flat(const std::string& dir);

    /// Validates and indexes a synset list: unresolved hypernym pointers and
    /// hypernym cycles raise DataError (naming the synset / listing the cycle).
    static WordNetDb from_synsets(std::vector<Synset> synsets);

    static const std::string& virtual_root_id();

    bool contains(const std::string& id) const;
    const Synset& synset(const std::string& id) const;
    const std::vector<std::string>& all_ids() const { return ids_; }
    size_t size() const { return ids_.size(); }

    /// Candidate synsets for a phrase, ordered by rank: exact lowercase
    /// lookup (spaces -> underscores), falling back to the form with a
    /// singularized last word.
    std::vector<std::string> lemma_candidates(const std::string& phrase) const;

    int depth(const std::string& id) const;

    /// True iff s2 is a proper ancestor of s1 in the hypernym DAG.
    bool is_hypernym(const std::string& s1, const std::string& s2) const;

    /// (2*depth(lcs)+1) / (depth(s1)+depth(s2)+1), lcs maximizing depth
    /// among common ancestors-or-self (the virtual root when disjoint).
    double wu_palmer(const std::string& s1, const std::string& s2) const;

    /// One shortest root-ward chain, excluding the start synset and the
    /// virtual root; ties at branch points broken by lexicographic id.
    std::vector<std::string> hypernym_chain(const std::string& id) const;

    /// Head nouns of the gloss's leading noun phrase(s).
    std::vector<std::string> gloss_head_nouns(const std::string& id) const;

    /// Synset linking with name back-off (full name, then pre+head, then
    /// head); score = cosine(gloss context, category context) + 1/(2*rank).
    /// Ties broken by lower rank, then lexicographic id. Absent if no
    /// back-off level yields candidates.
    std::optional<LinkResult> link_synset(const std::string& name,
                                          const ContextVector& context) const;

    /// Ancestor-or-self ids (includes the virtual root).
    std::vector<std::string> ancestors_or_self(const std::string& id) const;

private:
    std::map<std::string, Synset> synsets_;
    std::map<std::string, std::vector<std::string>> lemma_index_;
    std::map<std::string, int> depth_;
    std::map<std::string, ContextVector> gloss_context_;
    std::vector<std::string> ids_;

    void require(const std::string& id) const;
    void finalize();
};

} // namespace taxo

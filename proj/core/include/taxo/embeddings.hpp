#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace taxo {

/// Pre-trained word vectors in word2vec text format. Immutable after load;
/// reads are thread-safe.
class EmbeddingTable {
public:
    /// Stream of `count dim` header then `word v1 ... vd` rows.
    /// A repeated word overwrites its previous vector; the declared count
    /// is validated against the number of distinct words.
    static EmbeddingTable load(std::istream& in);

    /// Reads path directly, or through gzip inflation when it ends in .gz.
    static EmbeddingTable load_file(const std::string& path);

    size_t dimension() const { return dimension_; }
    size_t size() const { return vectors_.size(); }

    /// nullptr when the word is out of vocabulary.
    const std::vector<double>* find(const std::string& word) const;

private:
    size_t dimension_ = 0;
    std::unordered_map<std::string, std::vector<double>> vectors_;
};

double cosine(std::span<const double> a, std::span<const double> b);
double norm(std::span<const double> v);

/// Directional hypernymy score between two category names:
/// cosine(E_h1, E_h2) * ||E_h2|| / ||E_h1|| over the stemmed head words.
/// Absent when either head is out of vocabulary or has zero norm.
std::optional<double> hypervec_score(const EmbeddingTable& table,
                                     const std::string& c1, const std::string& c2);

/// The lowercased, stemmed head word used for embedding lookups.
std::string stemmed_head(const std::string& name);

} // namespace taxo

#include "taxo/wordnet.hpp"

#include "taxo/common.hpp"
#include "taxo/lexical.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>
#include <unordered_set>

namespace taxo {

const std::vector<std::string>& default_stopwords() {
    static const std::vector<std::string> words = {
        "a", "an", "the", "and", "or", "but", "nor", "so", "yet", "if",
        "then", "else", "when", "while", "where", "why", "how", "what",
        "which", "who", "whom", "whose", "that", "this", "these", "those",
        "i", "you", "he", "she", "it", "we", "they", "me", "him", "her",
        "us", "them", "my", "your", "his", "its", "our", "their", "mine",
        "yours", "hers", "ours", "theirs", "myself", "yourself", "himself",
        "herself", "itself", "ourselves", "themselves", "is", "are", "was",
        "were", "be", "been", "being", "am", "do", "does", "did", "doing",
        "have", "has", "had", "having", "will", "would", "shall", "should",
        "may", "might", "must", "can", "could", "of", "in", "on", "at",
        "by", "for", "with", "about", "against", "between", "into",
        "through", "during", "before", "after", "above", "below", "from",
        "up", "down", "out", "off", "over", "under", "again", "further",
        "once", "here", "there", "all", "any", "both", "each", "few",
        "more", "most", "other", "some", "such", "no", "not", "only",
        "own", "same", "than", "too", "very", "just", "also", "as", "to",
        "because", "until", "beside", "besides", "near", "via", "per",
        "upon", "among", "within", "without", "along", "across", "behind",
        "beyond", "toward", "towards", "onto"};
    return words;
}

namespace {

const std::unordered_set<std::string>& stopword_set() {
    static const std::unordered_set<std::string> s(default_stopwords().begin(),
                                                   default_stopwords().end());
    return s;
}

std::string normalize_lemma(const std::string& phrase) {
    const std::vector<std::string> words = split_ws(to_lower(trim(phrase)));
    return join(words, "_");
}

} // namespace

ContextVector context_vector(const std::string& text) {
    return context_vector(word_tokens(text));
}

ContextVector context_vector(const std::vector<std::string>& tokens) {
    ContextVector bag;
    for (const auto& t : tokens) {
        const std::string w = to_lower(t);
        if (w.empty() || stopword_set().count(w)) continue;
        bag[w] += 1;
    }
    return bag;
}

double cosine(const ContextVector& a, const ContextVector& b) {
    if (a.empty() || b.empty()) return 0.0;
    double dot = 0, na = 0, nb = 0;
    for (const auto& [w, c] : a) {
        na += static_cast<double>(c) * c;
        auto it = b.find(w);
        if (it != b.end()) dot += static_cast<double>(c) * it->second;
    }
    for (const auto& [w, c] : b) nb += static_cast<double>(c) * c;
    if (na == 0 || nb == 0) return 0.0;
    return dot / (std::sqrt(na) * std::sqrt(nb));
}

const std::string& WordNetDb::virtual_root_id() {
    static const std::string id = "<root>";
    return id;
}

void WordNetDb::require(const std::string& id) const {
    if (!contains(id)) throw DataError("unknown synset id \"" + id + "\"");
}

bool WordNetDb::contains(const std::string& id) const {
    return id == virtual_root_id() || synsets_.count(id) > 0;
}

const Synset& WordNetDb::synset(const std::string& id) const {
    auto it = synsets_.find(id);
    if (it == synsets_.end()) throw DataError("unknown synset id \"" + id + "\"");
    return it->second;
}

void WordNetDb::finalize() {
    // resolve pointers
    for (const auto& [id, s] : synsets_) {
        if (s.rank < 1)
            throw DataError("synset " + id + " has rank " + std::to_string(s.rank));
        for (const auto& h : s.hypernyms)
            if (!synsets_.count(h))
                throw DataError("synset " + id + " has unresolvable hypernym pointer \"" + h + "\"");
    }

    // cycle check over the hypernym graph, reporting one cycle if found
    std::map<std::string, int> color;  // 0 white, 1 gray, 2 black
    std::vector<std::string> path;
    auto dfs = [&](auto&& self, const std::string& u) -> void {
        color[u] = 1;
        path.push_back(u);
        for (const auto& h : synsets_.at(u).hypernyms) {
            if (color[h] == 1) {
                auto start = std::find(path.begin(), path.end(), h);
                std::vector<std::string> cycle(start, path.end());
                cycle.push_back(h);
                throw DataError("cyclic hypernymy: " + join(cycle, " -> "));
            }
            if (color[h] == 0) self(self, h);
        }
        path.pop_back();
        color[u] = 2;
    };
    for (const auto& [id, _] : synsets_)
        if (color[id] == 0) dfs(dfs, id);

    // shortest distance to the nearest parentless synset, BFS downward
    std::map<std::string, std::vector<std::string>> children;
    std::deque<std::string> queue;
    for (const auto& [id, s] : synsets_) {
        for (const auto& h : s.hypernyms) children[h].push_back(id);
        if (s.hypernyms.empty()) {
            depth_[id] = 0;
            queue.push_back(id);
        }
    }
    while (!queue.empty()) {
        const std::string u = queue.front();
        queue.pop_front();
        for (const auto& c : children[u]) {
            if (!depth_.count(c)) {
                depth_[c] = depth_[u] + 1;
                queue.push_back(c);
            }
        }
    }
    depth_[virtual_root_id()] = 0;

    // lemma index ordered by (rank, id) unless a loader already filled it
    if (lemma_index_.empty()) {
        for (const auto& [id, s] : synsets_)
            for (const auto& lemma : s.lemmas)
                lemma_index_[normalize_lemma(lemma)].push_back(id);
        for (auto& [_, idsv] : lemma_index_) {
            std::sort(idsv.begin(), idsv.end(), [&](const auto& a, const auto& b) {
                const int ra = synsets_.at(a).rank, rb = synsets_.at(b).rank;
                return ra != rb ? ra < rb : a < b;
            });
        }
    }

    for (const auto& [id, s] : synsets_) {
        gloss_context_[id] = context_vector(s.gloss);
        ids_.push_back(id);
    }
}

WordNetDb WordNetDb::from_synsets(std::vector<Synset> synsets) {
    WordNetDb db;
    for (auto& s : synsets) {
        if (s.id.empty()) throw DataError("synset with empty id");
        if (s.id == virtual_root_id())
            throw DataError("synset id collides with the virtual root");
        if (db.synsets_.count(s.id)) throw DataError("duplicate synset id " + s.id);
        db.synsets_[s.id] = std::move(s);
    }
    db.finalize();
    return db;
}

WordNetDb WordNetDb::load_fixture(std::istream& in) {
    std::vector<Synset> synsets;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty() || line[0] == '#') continue;
        const std::vector<std::string> fields = split_on(line, '\t');
        if (fields.size() != 5)
            throw DataError("line " + std::to_string(lineno) +
                            ": expected `id\\trank\\tlemmas\\thypernyms\\tgloss`");
        Synset s;
        s.id = trim(fields[0]);
        try {
            s.rank = std::stoi(fields[1]);
        } catch (const std::exception&) {
            throw DataError("line " + std::to_string(lineno) + ": bad rank");
        }
        for (const auto& l : split_on(fields[2], ','))
            if (!trim(l).empty()) s.lemmas.push_back(to_lower(trim(l)));
        for (const auto& h : split_on(fields[3], ','))
            if (!trim(h).empty()) s.hypernyms.push_back(trim(h));
        s.gloss = fields[4];
        synsets.push_back(std::move(s));
    }
    return from_synsets(std::move(synsets));
}

namespace {

struct FlatSynset {
    std::string offset;
    int lex_filenum = 0;
    std::vector<std::pair<std::string, int>> words;  // (word, lex_id)
    std::vector<std::string> hypernym_offsets;
    std::string gloss;
};

bool skip_flat_line(const std::string& line) {
    return line.size() >= 2 && line[0] == ' ' && line[1] == ' ';
}

FlatSynset parse_data_line(const std::string& line, size_t lineno) {
    FlatSynset fs;
    const auto bar = line.find('|');
    fs.gloss = bar == std::string::npos ? "" : trim(line.substr(bar + 1));
    const std::vector<std::string> f = split_ws(line.substr(0, bar));
    if (f.size() < 4) throw DataError("data.noun line " + std::to_string(lineno) + ": too short");
    fs.offset = f[0];
    fs.lex_filenum = std::stoi(f[1]);
    const int w_cnt = static_cast<int>(std::stoul(f[3], nullptr, 16));
    size_t i = 4;
    for (int w = 0; w < w_cnt; ++w) {
        if (i + 1 >= f.size())
            throw DataError("data.noun line " + std::to_string(lineno) + ": truncated word list");
        fs.words.emplace_back(f[i], static_cast<int>(std::stoul(f[i + 1], nullptr, 16)));
        i += 2;
    }
    if (i >= f.size())
        throw DataError("data.noun line " + std::to_string(lineno) + ": missing pointer count");
    const int p_cnt = std::stoi(f[i++]);
    for (int p = 0; p < p_cnt; ++p) {
        if (i + 3 >= f.size())
            throw DataError("data.noun line " + std::to_string(lineno) + ": truncated pointer list");
        const std::string symbol = f[i];
        const std::string target = f[i + 1];
        const std::string pos = f[i + 2];
        if ((symbol == "@" || symbol == "@i") && pos == "n")
            fs.hypernym_offsets.push_back(target);
        i += 4;
    }
    return fs;
}

std::string sense_key(const FlatSynset& fs) {
    char buf[8];
    std::snprintf(buf, sizeof buf, "%02d", fs.lex_filenum);
    std::string key = to_lower(fs.words[0].first) + "%1:" + buf + ":";
    std::snprintf(buf, sizeof buf, "%02d", fs.words[0].second);
    key += buf;
    key += "::";
    return key;
}

} // namespace

WordNetDb WordNetDb::load_flat(const std::string& dir) {
    std::ifstream data(dir + "/data.noun");
    if (!data) throw DataError("cannot open " + dir + "/data.noun");
    std::ifstream index(dir + "/index.noun");
    if (!index) throw DataError("cannot open " + dir + "/index.noun");

    std::vector<FlatSynset> flat;
    std::map<std::string, size_t> by_offset;
    std::string line;
    size_t lineno = 0;
    while (std::getline(data, line)) {
        ++lineno;
        if (skip_flat_line(line) || trim(line).empty()) continue;
        FlatSynset fs = parse_data_line(line, lineno);
        by_offset[fs.offset] = flat.size();
        flat.push_back(std::move(fs));
    }

    // index.noun: lemma pos synset_cnt p_cnt ptrs... sense_cnt tagsense_cnt offsets...
    std::map<std::string, std::vector<std::string>> lemma_offsets;
    lineno = 0;
    while (std::getline(index, line)) {
        ++lineno;
        if (skip_flat_line(line) || trim(line).empty()) continue;
        const std::vector<std::string> f = split_ws(line);
        if (f.size() < 6)
            throw DataError("index.noun line " + std::to_string(lineno) + ": too short");
        const std::string lemma = to_lower(f[0]);
        const int synset_cnt = std::stoi(f[2]);
        const int p_cnt = std::stoi(f[3]);
        const size_t first_offset = static_cast<size_t>(4 + p_cnt + 2);
        if (f.size() < first_offset + static_cast<size_t>(synset_cnt))
            throw DataError("index.noun line " + std::to_string(lineno) + ": truncated offsets");
        for (int s = 0; s < synset_cnt; ++s)
            lemma_offsets[lemma].push_back(f[first_offset + static_cast<size_t>(s)]);
    }

    // sense keys first (disambiguating rare first-word collisions with the
    // offset), then hypernym resolution and per-synset rank (position of
    // the synset among its first word's senses)
    std::vector<std::string> keys(flat.size());
    {
        std::set<std::string> seen;
        for (size_t i = 0; i < flat.size(); ++i) {
            keys[i] = sense_key(flat[i]);
            if (!seen.insert(keys[i]).second) {
                keys[i] += "#" + flat[i].offset;
                seen.insert(keys[i]);
            }
        }
    }

    std::vector<Synset> synsets(flat.size());
    for (size_t i = 0; i < flat.size(); ++i) {
        const FlatSynset& fs = flat[i];
        Synset& s = synsets[i];
        s.id = keys[i];
        s.gloss = fs.gloss;
        for (const auto& [w, _] : fs.words)
            s.lemmas.push_back(to_lower(w));
        for (const auto& off : fs.hypernym_offsets) {
            auto it = by_offset.find(off);
            if (it == by_offset.end())
                throw DataError("synset " + s.id + " has unresolvable hypernym pointer \"" +
                                off + "\"");
            s.hypernyms.push_back(keys[it->second]);
        }
        s.rank = 1;
        auto lo = lemma_offsets.find(s.lemmas.front());
        if (lo != lemma_offsets.end()) {
            for (size_t p = 0; p < lo->second.size(); ++p) {
                if (lo->second[p] == fs.offset) {
                    s.rank = static_cast<int>(p) + 1;
                    break;
                }
            }
        }
    }

    WordNetDb db;
    for (auto& s : synsets) {
        const std::string id = s.id;
        db.synsets_[id] = std::move(s);
    }
    // per-lemma candidate order follows the index file
    for (const auto& [lemma, offsets] : lemma_offsets) {
        for (const auto& off : offsets) {
            auto it = by_offset.find(off);
            if (it != by_offset.end())
                db.lemma_index_[normalize_lemma(lemma)].push_back(keys[it->second]);
        }
    }
    db.finalize();
    return db;
}

std::vector<std::string> WordNetDb::lemma_candidates(const std::string& phrase) const {
    const std::string key = normalize_lemma(phrase);
    if (key.empty()) return {};
    auto it = lemma_index_.find(key);
    if (it != lemma_index_.end()) return it->second;
    std::vector<std::string> words = split_on(key, '_');
    words.back() = singularize(words.back());
    const std::string alt = join(words, "_");
    if (alt != key) {
        auto it2 = lemma_index_.find(alt);
        if (it2 != lemma_index_.end()) return it2->second;
    }
    return {};
}

int WordNetDb::depth(const std::string& id) const {
    require(id);
    return depth_.at(id);
}

std::vector<std::string> WordNetDb::ancestors_or_self(const std::string& id) const {
    require(id);
    std::set<std::string> seen{id};
    std::deque<std::string> queue{id};
    if (id != virtual_root_id()) {
        while (!queue.empty()) {
            const std::string u = queue.front();
            queue.pop_front();
            if (u == virtual_root_id()) continue;
            for (const auto& h : synsets_.at(u).hypernyms)
                if (seen.insert(h).second) queue.push_back(h);
        }
        seen.insert(virtual_root_id());
    }
    return {seen.begin(), seen.end()};
}

bool WordNetDb::is_hypernym(const std::string& s1, const std::string& s2) const {
    require(s1);
    require(s2);
    if (s1 == s2) return false;
    for (const auto& a : ancestors_or_self(s1))
        if (a == s2) return true;
    return false;
}

namespace {

// hop counts from start to every ancestor-or-self
std::map<std::string, int> upward_distances(const std::map<std::string, Synset>& synsets,
                                            const std::string& start) {
    std::map<std::string, int> dist{{start, 0}};
    std::deque<std::string> queue{start};
    while (!queue.empty()) {
        const std::string u = queue.front();
        queue.pop_front();
        for (const auto& h : synsets.at(u).hypernyms) {
            if (!dist.count(h)) {
                dist[h] = dist[u] + 1;
                queue.push_back(h);
            }
        }
    }
    return dist;
}

} // namespace

double WordNetDb::wu_palmer(const std::string& s1, const std::string& s2) const {
    require(s1);
    require(s2);
    // Path lengths are measured through the subsumer, so the score is the
    // plain (2*depth(lcs)+1)/(depth(s1)+depth(s2)+1) wherever depths
    // decompose along the chosen paths (all tree-shaped regions), and stays
    // within (0, 1] when a multi-parent synset has an ancestor deeper than
    // itself.
    const std::map<std::string, int> d1 =
        s1 == virtual_root_id() ? std::map<std::string, int>{{s1, 0}}
                                : upward_distances(synsets_, s1);
    const std::map<std::string, int> d2 =
        s2 == virtual_root_id() ? std::map<std::string, int>{{s2, 0}}
                                : upward_distances(synsets_, s2);
    // the virtual root is a common subsumer at depth 0, reached from any
    // synset in depth(s) hops
    double best = 1.0 / (static_cast<double>(depth_.at(s1)) + depth_.at(s2) + 1.0);
    for (const auto& [anc, da] : d1) {
        auto it = d2.find(anc);
        if (it == d2.end()) continue;
        const double D = depth_.at(anc);
        const double score = (2.0 * D + 1.0) /
                             (da + D + static_cast<double>(it->second) + D + 1.0);
        best = std::max(best, score);
    }
    return best;
}

std::vector<std::string> WordNetDb::hypernym_chain(const std::string& id) const {
    require(id);
    std::vector<std::string> chain;
    if (id == virtual_root_id()) return chain;
    std::string cur = id;
    while (!synsets_.at(cur).hypernyms.empty()) {
        const int want = depth_.at(cur) - 1;
        const std::string* next = nullptr;
        for (const auto& h : synsets_.at(cur).hypernyms) {
            if (depth_.at(h) != want) continue;
            if (!next || h < *next) next = &h;
        }
        // a shortest-path parent always exists: depth(cur) = 1 + min depth(parent)
        if (!next) throw std::logic_error("depth table inconsistent at " + cur);
        chain.push_back(*next);
        cur = *next;
    }
    return chain;
}

std::vector<std::string> WordNetDb::gloss_head_nouns(const std::string& id) const {
    require(id);
    if (id == virtual_root_id()) return {};
    return leading_np_heads(np_tokens(synsets_.at(id).gloss));
}

std::optional<LinkResult> WordNetDb::link_synset(const std::string& name,
                                                 const ContextVector& context) const {
    const NameParts parts = decompose_name(name);
    std::vector<std::string> candidates = lemma_candidates(name);
    if (candidates.empty()) {
        const std::string pre_head =
            parts.pre.empty() ? parts.head : parts.pre + " " + parts.head;
        candidates = lemma_candidates(pre_head);
        if (candidates.empty()) candidates = lemma_candidates(parts.head);
    }
    if (candidates.empty()) return std::nullopt;

    const std::string* best_id = nullptr;
    double best_score = 0;
    int best_rank = 0;
    for (const auto& id : candidates) {
        const Synset& s = synsets_.at(id);
        const double score =
            cosine(gloss_context_.at(id), context) + 1.0 / (2.0 * s.rank);
        const bool better =
            !best_id || score > best_score ||
            (score == best_score &&
             (s.rank < best_rank || (s.rank == best_rank && id < *best_id)));
        if (better) {
            best_id = &id;
            best_score = score;
            best_rank = s.rank;
        }
    }
    return LinkResult{*best_id, best_score};
}

} // namespace taxo

#include "taxo/pipeline.hpp"

#include "taxo/common.hpp"
#include "taxo/stemmer.hpp"

#include <algorithm>
#include <deque>
#include <istream>
#include <sstream>

namespace taxo {

namespace {

std::vector<std::string> lower_tokens(const std::string& s) {
    std::vector<std::string> out;
    for (const auto& t : split_ws(s)) out.push_back(to_lower(t));
    return out;
}

bool token_subset(const std::string& a, const std::string& b) {
    // every token of a appears in b (case-insensitive)
    const std::vector<std::string> bt = lower_tokens(b);
    for (const auto& t : lower_tokens(a))
        if (std::find(bt.begin(), bt.end(), t) == bt.end()) return false;
    return true;
}

bool token_member(const std::string& needle, const std::string& hay) {
    const std::string n = to_lower(needle);
    for (const auto& t : lower_tokens(hay))
        if (t == n) return true;
    return false;
}

std::string glue(const std::string& a, const std::string& b) {
    if (a.empty()) return b;
    if (b.empty()) return a;
    return a + " " + b;
}

} // namespace

HeadMatchVerdict headword_match(const NameParts& child, const NameParts& parent) {
    const std::string h1 = to_lower(child.head), h2 = to_lower(parent.head);
    if (h1 == h2 && !h1.empty()) {
        // case 1: same head + pos, parent prefix contained in child prefix
        if (to_lower(glue(child.head, child.pos)) == to_lower(glue(parent.head, parent.pos)) &&
            token_subset(parent.pre, child.pre))
            return HeadMatchVerdict::Subclass;
        // case 2: same pre + head, parent postfix contained in child postfix
        if (to_lower(glue(child.pre, child.head)) == to_lower(glue(parent.pre, parent.head)) &&
            token_subset(parent.pos, child.pos))
            return HeadMatchVerdict::Subclass;
        return HeadMatchVerdict::Unknown;
    }
    // case 3: parent head buried inside the child's modifiers
    if (!h2.empty() &&
        (token_member(parent.head, child.pre) || token_member(parent.head, child.pos)))
        return HeadMatchVerdict::NotSubclass;
    return HeadMatchVerdict::Unknown;
}

bool only_plural_parent(const NetworkIndex& idx, const std::string& c1, const std::string& c2) {
    if (!idx.network().subcat_edges.count({c1, c2}))
        throw DataError("no subcategory edge " + c1 + " -> " + c2);
    return idx.parents(c1).size() == 1 && is_plural_head(c2);
}

std::vector<std::string> page_hypernyms(const std::string& sentence) {
    const std::vector<std::string> tokens = np_tokens(sentence);
    static const std::set<std::string> copulas = {"is", "are", "was", "were"};
    for (size_t i = 0; i < tokens.size(); ++i) {
        if (copulas.count(tokens[i])) {
            return leading_np_heads({tokens.begin() + static_cast<long>(i) + 1, tokens.end()});
        }
    }
    return {};
}

const std::vector<std::string>& category_feature_names() {
    static const std::vector<std::string> names = {
        "meta", "plural_head", "capitalized", "instance_count",
        "supercat_count", "subcat_count", "average_depth", "subgraph_size"};
    return names;
}

FeatureRow category_features(const NetworkIndex& idx, const std::string& cat,
                             const std::vector<std::string>& meta_terms) {
    idx.require_category(cat);
    FeatureRow row;
    row.id = cat;
    const DegreeCounts deg = degree_counts(idx, cat);
    row.values = {
        is_meta_category(cat, meta_terms) ? 1.0 : 0.0,
        is_plural_head(cat) ? 1.0 : 0.0,
        starts_capitalized(cat) ? 1.0 : 0.0,
        static_cast<double>(instance_count(idx, cat)),
        static_cast<double>(deg.supercats),
        static_cast<double>(deg.subcats),
        average_upward_depth(idx, cat),
        static_cast<double>(connected_subgraph_size(idx, cat)),
    };
    return row;
}

Dataset category_dataset(const NetworkIndex& idx, const std::vector<std::string>& meta_terms,
                         const std::vector<LabeledItem>* labels) {
    std::map<std::string, int> label_of;
    if (labels)
        for (const auto& l : *labels) label_of[l.item] = l.label;
    Dataset data;
    data.feature_names = category_feature_names();
    for (const auto& cat : idx.network().categories) {
        FeatureRow row = category_features(idx, cat, meta_terms);
        if (labels) {
            auto it = label_of.find(cat);
            if (it == label_of.end()) continue;  // only labeled rows
            row.label = it->second;
        }
        data.rows.push_back(std::move(row));
    }
    return data;
}

CleanCategoriesResult clean_categories(const CategoryNetwork& net, const LogRegModel& model,
                                       double threshold,
                                       const std::vector<std::string>& meta_terms) {
    const NetworkIndex idx(net);
    CleanCategoriesResult result;
    for (const auto& cat : net.categories) {
        const FeatureRow row = category_features(idx, cat, meta_terms);
        const double p = predict_proba(model, row.values);
        result.scores[cat] = p;
        if (p >= threshold) result.kept.insert(cat);
    }

    CategoryNetwork pruned;
    pruned.categories = result.kept;
    pruned.entities = net.entities;
    for (const auto& e : net.subcat_edges)
        if (result.kept.count(e.first) && result.kept.count(e.second))
            pruned.subcat_edges.insert(e);
    for (const auto& e : net.membership_edges)
        if (result.kept.count(e.second)) pruned.membership_edges.insert(e);
    for (const auto& [cat, text] : net.first_sentence)
        if (result.kept.count(cat)) pruned.first_sentence[cat] = text;
    result.pruned = std::move(pruned);
    return result;
}

EdgeContext EdgeContext::build(const CategoryNetwork& net, const WordNetDb* wn,
                               const EmbeddingTable* emb, const RelationLookup* rel) {
    EdgeContext ctx;
    ctx.network = &net;
    ctx.index = std::make_shared<NetworkIndex>(net);
    ctx.wordnet = wn;
    ctx.embeddings = emb;
    ctx.relations = rel;
    if (wn) {
        for (const auto& cat : net.categories) {
            std::vector<std::string> tokens;
            auto sent = net.first_sentence.find(cat);
            if (sent != net.first_sentence.end()) {
                auto st = word_tokens(sent->second);
                tokens.insert(tokens.end(), st.begin(), st.end());
            }
            for (const auto& p : ctx.index->parents(cat)) {
                auto pt = word_tokens(p);
                tokens.insert(tokens.end(), pt.begin(), pt.end());
            }
            for (const auto& c : ctx.index->child_categories(cat)) {
                auto ct = word_tokens(c);
                tokens.insert(tokens.end(), ct.begin(), ct.end());
            }
            ctx.synset_links[cat] = wn->link_synset(cat, context_vector(tokens));
        }
    }
    return ctx;
}

const std::vector<std::string>& edge_feature_names() {
    static const std::vector<std::string> names = {
        "head_subclass",
        "head_not_subclass",
        "only_plural_parent",
        "wn_hypernym", "wn_hypernym_present",
        "wikidata_hypernym", "wikidata_hypernym_present",
        "page_type_match", "page_type_match_present",
        "gloss_type_match", "gloss_type_match_present",
        "wu_palmer", "wu_palmer_present",
        "hypervec", "hypervec_present",
        "common_children_support",
        "children_depth_ratio"};
    return names;
}

namespace {

// "head-matches": equality of singularized lowercase head tokens
bool head_matches(const std::string& lemma, const std::string& target_head) {
    return singularize(to_lower(lemma)) == singularize(to_lower(target_head));
}

std::optional<std::string> link_of(const EdgeContext& ctx, const std::string& cat) {
    auto it = ctx.synset_links.find(cat);
    if (it == ctx.synset_links.end() || !it->second) return std::nullopt;
    return it->second->synset_id;
}

} // namespace

FeatureRow edge_features(const EdgeContext& ctx, const std::string& c1, const std::string& c2) {
    if (!ctx.network->subcat_edges.count({c1, c2}))
        throw DataError("no subcategory edge " + c1 + " -> " + c2);

    const NameParts parts1 = decompose_name(c1);
    const NameParts parts2 = decompose_name(c2);
    const HeadMatchVerdict verdict = headword_match(parts1, parts2);
    const std::string head2 = parts2.head;

    FeatureRow row;
    row.id = c1 + " -> " + c2;
    auto push = [&](double v) { row.values.push_back(v); };
    auto push_opt = [&](std::optional<double> v) {
        push(v.value_or(0.0));
        push(v ? 1.0 : 0.0);
    };

    push(verdict == HeadMatchVerdict::Subclass ? 1.0 : 0.0);
    push(verdict == HeadMatchVerdict::NotSubclass ? 1.0 : 0.0);
    push(only_plural_parent(*ctx.index, c1, c2) ? 1.0 : 0.0);

    const std::optional<std::string> s1 = link_of(ctx, c1);
    const std::optional<std::string> s2 = link_of(ctx, c2);

    // wn_hypernym
    if (s1 && s2)
        push_opt(ctx.wordnet->is_hypernym(*s1, *s2) ? 1.0 : 0.0);
    else
        push_opt(std::nullopt);

    // wikidata_hypernym
    {
        std::optional<double> v;
        if (ctx.relations) {
            auto it = ctx.relations->find(c1);
            if (it != ctx.relations->end()) {
                double match = 0.0;
                for (const auto& cls : it->second)
                    if (head_matches(decompose_name(cls).head, head2)) match = 1.0;
                v = match;
            }
        }
        push_opt(v);
    }

    // page_type_match
    {
        std::optional<double> v;
        auto sent = ctx.network->first_sentence.find(c1);
        if (sent != ctx.network->first_sentence.end()) {
            double match = 0.0;
            for (const auto& lemma : page_hypernyms(sent->second))
                if (head_matches(lemma, head2)) match = 1.0;
            v = match;
        }
        push_opt(v);
    }

    // gloss_type_match
    {
        std::optional<double> v;
        if (s1) {
            double match = 0.0;
            for (const auto& lemma : ctx.wordnet->gloss_head_nouns(*s1))
                if (head_matches(lemma, head2)) match = 1.0;
            v = match;
        }
        push_opt(v);
    }

    // wu_palmer
    if (s1 && s2)
        push_opt(ctx.wordnet->wu_palmer(*s1, *s2));
    else
        push_opt(std::nullopt);

    // hypervec
    if (ctx.embeddings)
        push_opt(hypervec_score(*ctx.embeddings, c1, c2));
    else
        push_opt(std::nullopt);

    push(static_cast<double>(common_children_support(*ctx.index, c1, c2)));
    push(children_depth_ratio(*ctx.index, c2));
    return row;
}

Dataset edge_dataset(const EdgeContext& ctx, const std::vector<LabeledEdge>* labels) {
    std::map<Edge, int> label_of;
    if (labels)
        for (const auto& l : *labels) label_of[{l.child, l.parent}] = l.label;
    Dataset data;
    data.feature_names = edge_feature_names();
    for (const auto& edge : ctx.network->subcat_edges) {
        if (labels && !label_of.count(edge)) continue;
        FeatureRow row = edge_features(ctx, edge.first, edge.second);
        if (labels) row.label = label_of.at(edge);
        data.rows.push_back(std::move(row));
    }
    return data;
}

CleanEdgesResult clean_edges(const EdgeContext& ctx, const LogRegModel& model, double threshold) {
    CleanEdgesResult result;
    for (const auto& edge : ctx.network->subcat_edges) {
        const FeatureRow row = edge_features(ctx, edge.first, edge.second);
        const double p = predict_proba(model, row.values);
        result.scores[edge] = p;
        if (p >= threshold) result.kept.insert(edge);
    }
    return result;
}

namespace {

// Finds one directed cycle over child->parent edges, empty if acyclic.
std::vector<std::string> find_cycle(const std::map<std::string, std::vector<std::string>>& parents,
                                    const std::vector<std::string>& nodes) {
    std::map<std::string, int> color;
    std::vector<std::string> path;
    std::vector<std::string> found;
    auto dfs = [&](auto&& self, const std::string& u) -> bool {
        color[u] = 1;
        path.push_back(u);
        auto it = parents.find(u);
        if (it != parents.end()) {
            for (const auto& p : it->second) {
                if (color[p] == 1) {
                    auto start = std::find(path.begin(), path.end(), p);
                    found.assign(start, path.end());
                    found.push_back(p);
                    return true;
                }
                if (color[p] == 0 && self(self, p)) return true;
            }
        }
        path.pop_back();
        color[u] = 2;
        return false;
    };
    for (const auto& n : nodes) {
        if (color[n] == 0 && dfs(dfs, n)) return found;
    }
    return {};
}

} // namespace

AssembleResult assemble_taxonomy(const CategoryNetwork& pruned, const CleanEdgesResult& edges) {
    AssembleResult result;
    Taxonomy& t = result.taxonomy;
    for (const auto& cat : pruned.categories)
        t.classes[cat] = ClassNode{cat, ClassOrigin::original, std::nullopt};
    for (const auto& [entity, cat] : pruned.membership_edges) {
        t.entities.insert(entity);
        t.instance_edges[{entity, cat}] = 1.0;
    }
    std::map<Edge, double> kept_scores;
    for (const auto& e : edges.kept) kept_scores[e] = edges.scores.at(e);

    // restore acyclicity: drop the lowest-scored edge of each cycle
    for (;;) {
        std::map<std::string, std::vector<std::string>> parents;
        for (const auto& [e, _] : kept_scores) parents[e.first].push_back(e.second);
        std::vector<std::string> nodes(pruned.categories.begin(), pruned.categories.end());
        const std::vector<std::string> cycle = find_cycle(parents, nodes);
        if (cycle.empty()) break;
        Edge victim;
        double victim_score = 0;
        bool have = false;
        for (size_t i = 0; i + 1 < cycle.size(); ++i) {
            const Edge e{cycle[i], cycle[i + 1]};
            const double s = kept_scores.at(e);
            if (!have || s < victim_score || (s == victim_score && e < victim)) {
                victim = e;
                victim_score = s;
                have = true;
            }
        }
        kept_scores.erase(victim);
        result.dropped_cycle_edges.push_back(victim);
    }

    for (const auto& [e, s] : kept_scores) t.subclass_edges[e] = s;
    return result;
}

std::set<std::string> load_blacklist(std::istream& in) {
    std::set<std::string> out;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string id = trim(line);
        if (!id.empty()) out.insert(id);
    }
    return out;
}

Corrections load_corrections(std::istream& in) {
    Corrections out;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty() || line[0] == '#') continue;
        const std::vector<std::string> fields = split_on(line, '\t');
        if (fields.size() != 2)
            throw DataError("corrections line " + std::to_string(lineno) +
                            ": expected `category\\tsynset-id|none`");
        const std::string cat = trim(fields[0]);
        const std::string target = trim(fields[1]);
        if (cat.empty() || target.empty())
            throw DataError("corrections line " + std::to_string(lineno) + ": blank field");
        if (target == "none")
            out[cat] = std::nullopt;
        else
            out[cat] = target;
    }
    return out;
}

namespace {

std::string sanitize_node_name(const std::string& lemma) {
    std::string out;
    for (char c : lemma) out += (c == ' ' ? '_' : c);
    return out;
}

} // namespace

Taxonomy build_top_level(const Taxonomy& cleaned, const WordNetDb& db,
                         const std::map<std::string, std::optional<LinkResult>>& links,
                         const std::set<std::string>& blacklist,
                         const Corrections& corrections) {
    Taxonomy t = cleaned;

    // effective link per class, corrections override the automatic links
    std::map<std::string, std::string> link_of;
    std::set<std::string> corrected;
    for (const auto& [name, node] : t.classes) {
        std::optional<std::string> link;
        auto corr = corrections.find(name);
        if (corr != corrections.end()) {
            if (corr->second) {
                if (!db.contains(*corr->second))
                    throw DataError("correction for \"" + name + "\" names unknown synset " +
                                    *corr->second);
                link = corr->second;
                corrected.insert(name);
            }
        } else {
            auto it = links.find(name);
            if (it != links.end() && it->second) link = it->second->synset_id;
        }
        if (link) link_of[name] = *link;
    }

    // first class (in name order) linked to a synset represents it
    std::map<std::string, std::string> claimed;
    for (const auto& [name, synset] : link_of) {
        t.classes.at(name).synset_id = synset;
        claimed.emplace(synset, name);
    }

    std::map<std::string, std::string> wn_node_of;  // synset -> node name
    std::set<std::string> used_names;
    for (const auto& [name, _] : t.classes) used_names.insert(name);
    for (const auto& e : t.entities) used_names.insert(e);

    auto node_for = [&](const std::string& synset) -> std::string {
        auto cl = claimed.find(synset);
        if (cl != claimed.end()) return cl->second;
        auto it = wn_node_of.find(synset);
        if (it != wn_node_of.end()) return it->second;
        const Synset& s = db.synset(synset);
        std::string base = "wn_" + sanitize_node_name(s.lemmas.empty() ? synset : s.lemmas.front());
        std::string name = base;
        for (int i = 2; used_names.count(name); ++i)
            name = base + "_" + std::to_string(i);
        used_names.insert(name);
        wn_node_of[synset] = name;
        t.classes[name] = ClassNode{name, ClassOrigin::wordnet_derived, synset};
        return name;
    };

    // step 1: graft hypernym chains. An edge is skipped when the target
    // already sits below its source (a kept taxonomy edge opposing the
    // hypernym direction): the curated structure wins over the heuristic
    // link. If a correction is behind the conflict, it is an error.
    std::map<std::string, std::vector<std::string>> up;  // child -> parents
    for (const auto& [e, score] : t.subclass_edges) up[e.first].push_back(e.second);
    auto reaches = [&](const std::string& from, const std::string& to) {
        std::set<std::string> seen{from};
        std::deque<std::string> queue{from};
        while (!queue.empty()) {
            const std::string u = queue.front();
            queue.pop_front();
            if (u == to) return true;
            for (const auto& p : up[u])
                if (seen.insert(p).second) queue.push_back(p);
        }
        return false;
    };
    for (const auto& [name, synset] : link_of) {
        std::string prev = name;
        for (const auto& hop : db.hypernym_chain(synset)) {
            const std::string node = node_for(hop);
            if (node == prev) continue;
            if (!t.subclass_edges.count({prev, node})) {
                if (reaches(node, prev)) {
                    if (corrected.count(name) || corrected.count(node))
                        throw DataError("top-level construction made the taxonomy cyclic "
                                        "(check the corrections file): " +
                                        node + " is already a descendant of " + prev +
                                        " while the chain of " + name + " runs " + prev +
                                        " -> " + node);
                    continue;  // keep the existing structure, try the next hop
                }
                t.subclass_edges[{prev, node}] = 1.0;
                up[prev].push_back(node);
            }
            prev = node;
        }
    }

    validate(t);

    // step 2: chain compression
    t = compress_chains(t);

    // step 3: blacklist removal with splice to surviving ancestors
    std::set<std::string> doomed;
    for (const auto& [name, node] : t.classes)
        if (node.origin == ClassOrigin::wordnet_derived && node.synset_id &&
            blacklist.count(*node.synset_id))
            doomed.insert(name);
    if (!doomed.empty()) {
        std::map<std::string, std::vector<std::string>> parents;
        std::map<std::string, std::vector<std::string>> children;
        for (const auto& [e, _] : t.subclass_edges) {
            parents[e.first].push_back(e.second);
            children[e.second].push_back(e.first);
        }
        // surviving ancestors reachable through doomed nodes only
        auto surviving_up = [&](const std::string& start) {
            std::set<std::string> out, seen{start};
            std::deque<std::string> q{start};
            while (!q.empty()) {
                const std::string u = q.front();
                q.pop_front();
                for (const auto& p : parents[u]) {
                    if (!seen.insert(p).second) continue;
                    if (doomed.count(p)) q.push_back(p);
                    else out.insert(p);
                }
            }
            return out;
        };
        Taxonomy pruned;
        pruned.entities = t.entities;
        pruned.instance_edges = t.instance_edges;
        for (const auto& [name, node] : t.classes)
            if (!doomed.count(name)) pruned.classes.emplace(name, node);
        for (const auto& [e, s] : t.subclass_edges)
            if (!doomed.count(e.first) && !doomed.count(e.second))
                pruned.subclass_edges[e] = s;
        for (const auto& d : doomed) {
            for (const auto& child : children[d]) {
                if (doomed.count(child)) continue;
                for (const auto& anc : surviving_up(d))
                    if (!pruned.subclass_edges.count({child, anc}))
                        pruned.subclass_edges[{child, anc}] = 1.0;
            }
        }
        t = std::move(pruned);
    }

    validate(t);
    return t;
}

Taxonomy compress_chains(const Taxonomy& input) {
    Taxonomy t = input;
    for (;;) {
        std::map<std::string, std::vector<std::string>> parents;
        std::map<std::string, std::vector<std::string>> children;
        for (const auto& [e, _] : t.subclass_edges) {
            parents[e.first].push_back(e.second);
            children[e.second].push_back(e.first);
        }
        std::string victim;
        for (const auto& [name, node] : t.classes) {
            if (node.origin != ClassOrigin::wordnet_derived) continue;
            if (parents[name].size() == 1 && children[name].size() == 1) {
                victim = name;
                break;
            }
        }
        if (victim.empty()) break;
        const std::string parent = parents[victim].front();
        const std::string child = children[victim].front();
        const double score = t.subclass_edges.at({child, victim});
        t.subclass_edges.erase({child, victim});
        t.subclass_edges.erase({victim, parent});
        t.classes.erase(victim);
        if (child != parent && !t.subclass_edges.count({child, parent}))
            t.subclass_edges[{child, parent}] = score;
    }
    return t;
}

} // namespace taxo

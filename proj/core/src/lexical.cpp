#include "taxo/lexical.hpp"

#include "taxo/common.hpp"

#include <array>
#include <istream>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace taxo {

namespace {

const std::set<std::string>& particles() {
    static const std::set<std::string> p = {"of", "in", "from", "by",
                                            "for", "to", "with", "and"};
    return p;
}

// Irregular and invariant nouns. Second field is the singular form,
// third is whether the token counts as a plural head.
struct NounEntry {
    const char* form;
    const char* singular;
    bool plural;
};

const NounEntry kNounTable[] = {
    // irregular plurals
    {"men", "man", true}, {"women", "woman", true}, {"children", "child", true},
    {"people", "person", true}, {"feet", "foot", true}, {"teeth", "tooth", true},
    {"geese", "goose", true}, {"mice", "mouse", true}, {"lice", "louse", true},
    {"oxen", "ox", true}, {"dice", "die", true}, {"brethren", "brother", true},
    {"elves", "elf", true}, {"dwarves", "dwarf", true}, {"wolves", "wolf", true},
    {"werewolves", "werewolf", true}, {"wives", "wife", true},
    {"knives", "knife", true}, {"lives", "life", true}, {"leaves", "leaf", true},
    {"loaves", "loaf", true}, {"calves", "calf", true}, {"halves", "half", true},
    {"selves", "self", true}, {"shelves", "shelf", true},
    {"thieves", "thief", true}, {"scarves", "scarf", true},
    {"hooves", "hoof", true}, {"sheaves", "sheaf", true},
    {"wharves", "wharf", true}, {"staves", "staff", true},
    {"criteria", "criterion", true}, {"phenomena", "phenomenon", true},
    {"data", "datum", true}, {"media", "medium", true},
    {"bacteria", "bacterium", true}, {"curricula", "curriculum", true},
    {"memoranda", "memorandum", true}, {"strata", "stratum", true},
    {"fungi", "fungus", true}, {"cacti", "cactus", true},
    {"nuclei", "nucleus", true}, {"radii", "radius", true},
    {"stimuli", "stimulus", true}, {"alumni", "alumnus", true},
    {"foci", "focus", true}, {"genera", "genus", true},
    {"corpora", "corpus", true}, {"antennae", "antenna", true},
    {"larvae", "larva", true}, {"algae", "alga", true},
    {"formulae", "formula", true}, {"beaux", "beau", true},
    {"bureaux", "bureau", true}, {"tableaux", "tableau", true},
    {"seraphim", "seraph", true}, {"cherubim", "cherub", true},
    {"analyses", "analysis", true}, {"theses", "thesis", true},
    {"crises", "crisis", true}, {"oases", "oasis", true},
    {"appendices", "appendix", true}, {"indices", "index", true},
    {"matrices", "matrix", true}, {"vertices", "vertex", true},
    {"vortices", "vortex", true}, {"shoes", "shoe", true},
    // invariant nouns: same form both ways; as category heads they name
    // classes, so they count as plural
    {"sheep", "sheep", true}, {"fish", "fish", true}, {"deer", "deer", true},
    {"moose", "moose", true}, {"swine", "swine", true}, {"bison", "bison", true},
    {"salmon", "salmon", true}, {"trout", "trout", true},
    {"series", "series", true}, {"species", "species", true},
    {"aircraft", "aircraft", true}, {"spacecraft", "spacecraft", true},
    {"watercraft", "watercraft", true}, {"hovercraft", "hovercraft", true},
    {"offspring", "offspring", true}, {"cattle", "cattle", true},
    {"police", "police", true}, {"folk", "folk", true}, {"kin", "kin", true},
    {"shrimp", "shrimp", true}, {"squid", "squid", true}, {"elk", "elk", true},
    {"reindeer", "reindeer", true}, {"cod", "cod", true}, {"carp", "carp", true},
    // plural-only nouns
    {"scissors", "scissors", true}, {"trousers", "trousers", true},
    {"pants", "pants", true}, {"clothes", "clothes", true},
    {"goods", "goods", true}, {"belongings", "belongings", true},
    {"surroundings", "surroundings", true}, {"outskirts", "outskirts", true},
    // singular nouns that end in -s
    {"news", "news", false}, {"mathematics", "mathematics", false},
    {"physics", "physics", false}, {"economics", "economics", false},
    {"politics", "politics", false}, {"ethics", "ethics", false},
    {"athletics", "athletics", false}, {"gymnastics", "gymnastics", false},
    {"linguistics", "linguistics", false}, {"measles", "measles", false},
    {"mumps", "mumps", false}, {"rabies", "rabies", false},
    {"diabetes", "diabetes", false}, {"billiards", "billiards", false},
    {"chess", "chess", false}, {"lens", "lens", false}, {"bus", "bus", false},
    {"gas", "gas", false}, {"atlas", "atlas", false}, {"alias", "alias", false},
    {"bias", "bias", false}, {"canvas", "canvas", false},
    {"chaos", "chaos", false}, {"circus", "circus", false},
    {"cosmos", "cosmos", false}, {"pathos", "pathos", false},
    {"ethos", "ethos", false}, {"kudos", "kudos", false},
    {"means", "means", false}, {"headquarters", "headquarters", false},
    {"barracks", "barracks", false}, {"crossroads", "crossroads", false},
};

const std::unordered_map<std::string, const NounEntry*>& noun_index() {
    static const auto* idx = [] {
        auto* m = new std::unordered_map<std::string, const NounEntry*>();
        for (const auto& e : kNounTable) (*m)[e.form] = &e;
        return m;
    }();
    return *idx;
}

bool ends_with(const std::string& s, std::string_view suffix) {
    return s.size() >= suffix.size() &&
           s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

} // namespace

NameParts decompose_name(const std::string& name) {
    const std::vector<std::string> tokens = split_ws(name);
    if (tokens.empty()) return {};

    size_t head_idx = tokens.size() - 1;
    size_t particle_idx = tokens.size();
    for (size_t i = 1; i < tokens.size(); ++i) {
        if (particles().count(to_lower(tokens[i]))) {
            particle_idx = i;
            head_idx = i - 1;
            break;
        }
    }

    NameParts parts;
    parts.head = tokens[head_idx];
    parts.pre = join({tokens.begin(), tokens.begin() + static_cast<long>(head_idx)}, " ");
    if (particle_idx < tokens.size())
        parts.pos = join({tokens.begin() + static_cast<long>(particle_idx), tokens.end()}, " ");
    return parts;
}

bool is_plural_token(const std::string& token) {
    const std::string w = to_lower(token);
    if (w.empty()) return false;
    auto it = noun_index().find(w);
    if (it != noun_index().end()) return it->second->plural;
    if (ends_with(w, "ss")) return false;
    if (ends_with(w, "us")) return false;
    if (ends_with(w, "is")) return false;
    return ends_with(w, "s");
}

bool is_plural_head(const std::string& name) {
    return is_plural_token(decompose_name(name).head);
}

std::string singularize(const std::string& token) {
    const std::string w = to_lower(token);
    auto it = noun_index().find(w);
    if (it != noun_index().end()) return it->second->singular;
    if (!is_plural_token(w)) return w;
    if (ends_with(w, "ies") && w.size() >= 5)
        return w.substr(0, w.size() - 3) + "y";
    if ((ends_with(w, "xes") || ends_with(w, "sses") || ends_with(w, "ches") ||
         ends_with(w, "shes") || ends_with(w, "zes")) && w.size() >= 4)
        return w.substr(0, w.size() - 2);
    if (ends_with(w, "oes") && w.size() >= 5)
        return w.substr(0, w.size() - 2);
    return w.substr(0, w.size() - 1);
}

bool is_meta_category(const std::string& name, const std::vector<std::string>& meta_terms) {
    const std::vector<std::string> tokens = word_tokens(name);
    for (const auto& term : meta_terms) {
        const std::string t = to_lower(term);
        for (const auto& tok : tokens)
            if (tok == t) return true;
    }
    return false;
}

bool starts_capitalized(const std::string& name) {
    return starts_uppercase(name);
}

const std::vector<std::string>& default_meta_terms() {
    static const std::vector<std::string> terms = {
        // the nine named in the literature on wiki meta-categories
        "wiki", "template", "user", "portal", "disambiguation", "articles",
        "administration", "file", "pages",
        // conservative additions to round out the set
        "category", "stub", "image", "media", "sandbox", "talk", "maintenance",
        "help", "list", "blog", "forum", "policy", "community"};
    return terms;
}

std::vector<std::string> load_term_list(std::istream& in) {
    std::vector<std::string> terms;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string term = trim(line);
        if (!term.empty()) terms.push_back(to_lower(term));
    }
    return terms;
}

namespace {

const std::set<std::string>& np_articles() {
    static const std::set<std::string> a = {"a", "an", "the"};
    return a;
}

const std::set<std::string>& np_coordinators() {
    static const std::set<std::string> c = {"and", "or", ","};
    return c;
}

// Tokens that end the noun phrase: prepositions, relative markers, and
// common post-nominal modifiers.
const std::set<std::string>& np_stops() {
    static const std::set<std::string> s = {
        "of", "in", "from", "by", "for", "to", "with", "on", "at", "as",
        "that", "which", "who", "whom", "whose", "where", "when",
        "able", "capable", "similar", "related", "known", "regarded",
        "considered", "believed", "said", "supposed", "used", "living",
        "found", "made", "seen", "characterized", "having", "called",
        "named", "meaning", "referring", "usually", "often", "sometimes",
        "typically", "generally", "."};
    return s;
}

} // namespace

std::vector<std::string> np_tokens(std::string_view text) {
    std::vector<std::string> out;
    std::string cur;
    auto flush = [&] {
        if (!cur.empty()) {
            out.push_back(to_lower(cur));
            cur.clear();
        }
    };
    for (unsigned char c : text) {
        if (std::isalnum(c) || c == '\'' || c >= 0x80) {
            if (c != '\'') cur.push_back(static_cast<char>(c));
        } else if (c == '-') {
            flush();
        } else if (std::isspace(c)) {
            flush();
        } else {
            flush();
            out.emplace_back(c == ',' || c == ';' ? "," : ".");
        }
    }
    flush();
    return out;
}

std::vector<std::string> leading_np_heads(const std::vector<std::string>& tokens) {
    std::vector<std::string> heads;
    size_t i = 0;
    const size_t n = tokens.size();
    while (i < n) {
        while (i < n && np_articles().count(tokens[i])) ++i;
        std::vector<std::string> np;
        while (i < n && !np_stops().count(tokens[i]) &&
               !np_coordinators().count(tokens[i])) {
            np.push_back(tokens[i]);
            ++i;
        }
        if (!np.empty()) heads.push_back(singularize(np.back()));
        if (i < n && np_coordinators().count(tokens[i])) {
            ++i;
            continue;
        }
        break;
    }
    return heads;
}

} // namespace taxo

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "taxo/search.hpp"

#include <algorithm>
#include <set>

using namespace taxo;

namespace {

// Table-12-shaped fixture: dragons under monsters, spiders with an agent
// subset, servant/numenorean overlap, plus an oversized class.
Taxonomy fixture() {
    Taxonomy t;
    auto cls = [&](const std::string& name) {
        t.classes[name] = {name, ClassOrigin::original, std::nullopt};
    };
    auto sub = [&](const std::string& child, const std::string& parent) {
        t.subclass_edges[{child, parent}] = 1.0;
    };
    auto inst = [&](const std::string& e, const std::string& c) {
        t.entities.insert(e);
        t.instance_edges[{e, c}] = 1.0;
    };
    cls("Creatures");
    cls("Dragons");
    cls("Fire-drakes");
    cls("Spiders");
    cls("Great Spiders");
    cls("Agents of Saruman");
    cls("Servants of Morgoth");
    cls("Black Numenoreans");
    cls("Beasts");
    sub("Dragons", "Creatures");
    sub("Fire-drakes", "Dragons");
    sub("Spiders", "Creatures");
    sub("Great Spiders", "Spiders");
    sub("Black Numenoreans", "Servants of Morgoth");
    sub("Beasts", "Creatures");
    inst("Glaurung", "Dragons");
    inst("Ancalagon", "Dragons");
    inst("Smaug", "Fire-drakes");
    inst("Scatha", "Dragons");
    inst("Shelob", "Spiders");
    inst("Ungoliant", "Spiders");
    inst("Webweaver", "Great Spiders");
    inst("Isengard Crawler", "Spiders");
    inst("Isengard Crawler", "Agents of Saruman");
    inst("Gríma", "Agents of Saruman");
    inst("Mouth of Sauron", "Black Numenoreans");
    inst("Mouth of Sauron", "Servants of Morgoth");
    inst("Fuinur", "Black Numenoreans");
    inst("Herumor", "Black Numenoreans");
    inst("Ungoliant", "Servants of Morgoth");
    for (int i = 0; i < 25; ++i) inst("Beast " + std::to_string(i), "Beasts");
    return t;
}

// brute-force extent: matched classes by substring, downward closure by
// fixpoint, union of instance sets
std::set<std::string> oracle_extent(const Taxonomy& t, const std::string& phrase) {
    auto lower = [](std::string s) {
        for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        return s;
    };
    std::set<std::string> classes;
    for (const auto& [name, _] : t.classes)
        if (lower(name).find(lower(phrase)) != std::string::npos) classes.insert(name);
    bool grew = true;
    while (grew) {
        grew = false;
        for (const auto& [e, s] : t.subclass_edges)
            if (classes.count(e.second) && classes.insert(e.first).second) grew = true;
    }
    std::set<std::string> entities;
    for (const auto& [e, s] : t.instance_edges)
        if (classes.count(e.second)) entities.insert(e.first);
    return entities;
}

} // namespace

TEST_CASE("match_classes is a case-insensitive substring match") {
    const Taxonomy t = fixture();
    CHECK(match_classes(t, "Dragon") == std::set<std::string>{"Dragons"});
    CHECK(match_classes(t, "spiders") == std::set<std::string>{"Spiders", "Great Spiders"});
    CHECK(match_classes(t, "zzz").empty());
    CHECK(match_classes(t, "Servants of Morgoth").count("Servants of Morgoth") == 1);
    CHECK(match_classes(t, "").empty());
}

TEST_CASE("query_single") {
    const Taxonomy t = fixture();
    SUBCASE("collects transitive subclasses and instances") {
        const QueryAnswer a = query_single(t, "Dragons");
        const std::set<std::string> got(a.answers.begin(), a.answers.end());
        CHECK(got == oracle_extent(t, "Dragons"));
        CHECK(got.count("Smaug"));  // via Fire-drakes
    }
    SUBCASE("unmatched phrase yields empty") {
        CHECK(query_single(t, "wizards").answers.empty());
    }
    SUBCASE("oversized class truncates to ten") {
        const QueryAnswer a = query_single(t, "Beasts");
        CHECK(a.answers.size() == kMaxAnswers);
        // and is a prefix of the untruncated ordering
        const std::vector<std::string> full = single_extent(t, "Beasts");
        REQUIRE(full.size() == 25);
        for (size_t i = 0; i < kMaxAnswers; ++i) CHECK(a.answers[i] == full[i]);
    }
    SUBCASE("answers come in level-then-name order") {
        const QueryAnswer a = query_single(t, "Dragons");
        // level 1: direct instances of Dragons (sorted); level 2: Smaug
        CHECK(a.answers == std::vector<std::string>{"Ancalagon", "Glaurung", "Scatha", "Smaug"});
    }
}

TEST_CASE("query_intersection") {
    const Taxonomy t = fixture();
    SUBCASE("agrees with brute-force set algebra") {
        const QueryAnswer a = query_intersection(t, "Black Numenoreans", "Servants of Morgoth");
        std::set<std::string> expect;
        const auto e1 = oracle_extent(t, "Black Numenoreans");
        for (const auto& e : oracle_extent(t, "Servants of Morgoth"))
            if (e1.count(e)) expect.insert(e);
        CHECK(std::set<std::string>(a.answers.begin(), a.answers.end()) == expect);
        CHECK(expect.count("Mouth of Sauron"));
        CHECK(expect.count("Fuinur"));
    }
    SUBCASE("disjoint classes intersect to nothing") {
        CHECK(query_intersection(t, "Dragons", "Agents of Saruman").answers.empty());
    }
    SUBCASE("self-intersection equals the single query") {
        CHECK(query_intersection(t, "spiders", "spiders").answers ==
              query_single(t, "spiders").answers);
    }
}

TEST_CASE("query_difference") {
    const Taxonomy t = fixture();
    SUBCASE("agrees with brute-force set algebra") {
        const QueryAnswer a = query_difference(t, "spiders", "agents of Saruman");
        std::set<std::string> expect;
        const auto e2 = oracle_extent(t, "agents of Saruman");
        for (const auto& e : oracle_extent(t, "spiders"))
            if (!e2.count(e)) expect.insert(e);
        CHECK(std::set<std::string>(a.answers.begin(), a.answers.end()) == expect);
        CHECK(expect.count("Shelob"));
        CHECK(expect.count("Webweaver"));
        CHECK_FALSE(expect.count("Isengard Crawler"));
    }
    SUBCASE("unmatched second operand leaves the single extent") {
        CHECK(query_difference(t, "Dragons", "wizards").answers ==
              query_single(t, "Dragons").answers);
    }
    SUBCASE("subset difference is empty") {
        CHECK(query_difference(t, "Great Spiders", "spiders").answers.empty());
    }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "taxo/common.hpp"
#include "taxo/graph_features.hpp"

#include <functional>
#include <map>
#include <random>
#include <set>

using namespace taxo;

namespace {

CategoryNetwork make_net(const std::vector<std::string>& cats,
                         const std::vector<std::pair<std::string, std::string>>& edges,
                         const std::vector<std::pair<std::string, std::string>>& members = {}) {
    CategoryNetwork net;
    net.categories.insert(cats.begin(), cats.end());
    for (const auto& [e, c] : members) net.entities.insert(e);
    net.subcat_edges.insert(edges.begin(), edges.end());
    net.membership_edges.insert(members.begin(), members.end());
    return net;
}

// independent simple-path enumerator used as the oracle
void oracle_paths(const CategoryNetwork& net, const std::string& node,
                  std::set<std::string>& on_path, size_t depth, std::vector<size_t>& lengths) {
    bool extended = false;
    for (const auto& [child, parent] : net.subcat_edges) {
        if (child != node || on_path.count(parent)) continue;
        extended = true;
        on_path.insert(parent);
        oracle_paths(net, parent, on_path, depth + 1, lengths);
        on_path.erase(parent);
    }
    if (!extended) lengths.push_back(depth);
}

double oracle_depth(const CategoryNetwork& net, const std::string& cat) {
    bool has_parent = false;
    for (const auto& [child, parent] : net.subcat_edges)
        if (child == cat) has_parent = true;
    if (!has_parent) return 0.0;
    std::vector<size_t> lengths;
    std::set<std::string> on_path{cat};
    oracle_paths(net, cat, on_path, 0, lengths);
    double total = 0;
    for (size_t l : lengths) total += static_cast<double>(l);
    return total / static_cast<double>(lengths.size());
}

} // namespace

TEST_CASE("instance_count") {
    const CategoryNetwork fixture = load_fixture_network();
    const NetworkIndex idx(fixture);
    SUBCASE("category with no members") { CHECK(instance_count(idx, "Factions") == 0); }
    SUBCASE("planted Dragons members") { CHECK(instance_count(idx, "Dragons") == 4); }
    SUBCASE("adding a membership edge raises the count by one") {
        CategoryNetwork net = fixture;
        net.membership_edges.insert({"Gostir", "Dragons"});
        const NetworkIndex idx2(net);
        CHECK(instance_count(idx2, "Dragons") == 5);
    }
    SUBCASE("unknown category") {
        CHECK_THROWS_AS(instance_count(idx, "Nope"), DataError);
    }
}

TEST_CASE("degree_counts") {
    SUBCASE("two children, no parents") {
        const auto net = make_net({"Characters", "Hobbits", "Elves"},
                                  {{"Hobbits", "Characters"}, {"Elves", "Characters"}});
        const NetworkIndex idx(net);
        CHECK(degree_counts(idx, "Characters") == DegreeCounts{0, 2});
    }
    SUBCASE("isolated category") {
        const auto net = make_net({"Lone"}, {});
        CHECK(degree_counts(NetworkIndex(net), "Lone") == DegreeCounts{0, 0});
    }
    SUBCASE("middle of a chain") {
        const auto net = make_net({"A", "B", "C"}, {{"A", "B"}, {"B", "C"}});
        CHECK(degree_counts(NetworkIndex(net), "B") == DegreeCounts{1, 1});
    }
}

TEST_CASE("average_upward_depth") {
    SUBCASE("root is 0") {
        const auto net = make_net({"Root"}, {});
        CHECK(average_upward_depth(NetworkIndex(net), "Root") == 0.0);
    }
    SUBCASE("diamond averages to 2") {
        const auto net = make_net({"A", "B", "C", "D"},
                                  {{"A", "B"}, {"A", "C"}, {"B", "D"}, {"C", "D"}});
        CHECK(average_upward_depth(NetworkIndex(net), "A") == doctest::Approx(2.0));
    }
    SUBCASE("mixed path lengths average to 1.5") {
        const auto net = make_net({"A", "B", "C", "R"}, {{"A", "B"}, {"A", "C"}, {"C", "R"}});
        CHECK(average_upward_depth(NetworkIndex(net), "A") == doctest::Approx(1.5));
    }
    SUBCASE("matches the brute-force enumerator on random networks") {
        std::mt19937_64 rng(99);
        for (int trial = 0; trial < 100; ++trial) {
            const size_t n = 3 + rng() % 10;  // <= 12 categories
            std::vector<std::string> cats;
            for (size_t i = 0; i < n; ++i) cats.push_back("c" + std::to_string(i));
            std::vector<std::pair<std::string, std::string>> edges;
            for (size_t i = 0; i < n; ++i)
                for (size_t j = 0; j < n; ++j)
                    if (i != j && rng() % 4 == 0) edges.emplace_back(cats[i], cats[j]);
            const auto net = make_net(cats, edges);
            const NetworkIndex idx(net);
            for (const auto& c : cats)
                CHECK(average_upward_depth(idx, c) == doctest::Approx(oracle_depth(net, c)));
        }
    }
    SUBCASE("defined on cyclic input") {
        const auto net = make_net({"A", "B", "C"}, {{"A", "B"}, {"B", "C"}, {"C", "A"}});
        const NetworkIndex idx(net);
        // A -> B -> C stops there: C's only parent A is already on the path
        CHECK(average_upward_depth(idx, "A") == doctest::Approx(2.0));
    }
    SUBCASE("past the path cap the sampled estimate takes over") {
        // ladder of 15 stacked diamonds: 2^15 simple paths, all of length 30
        std::vector<std::string> cats{"n0"};
        std::vector<std::pair<std::string, std::string>> edges;
        for (int level = 0; level < 15; ++level) {
            const std::string base = "n" + std::to_string(level);
            const std::string left = "l" + std::to_string(level);
            const std::string right = "r" + std::to_string(level);
            const std::string top = "n" + std::to_string(level + 1);
            cats.push_back(left);
            cats.push_back(right);
            cats.push_back(top);
            edges.emplace_back(base, left);
            edges.emplace_back(base, right);
            edges.emplace_back(left, top);
            edges.emplace_back(right, top);
        }
        const auto net = make_net(cats, edges);
        const NetworkIndex idx(net);
        // every walk ends at the single root after exactly 30 steps, so the
        // estimate is exact, and a repeat call is bit-identical
        CHECK(average_upward_depth(idx, "n0") == 30.0);
        CHECK(average_upward_depth(idx, "n0") == average_upward_depth(idx, "n0"));
    }
}

TEST_CASE("connected_subgraph_size") {
    const CategoryNetwork fixture = load_fixture_network();
    const NetworkIndex idx(fixture);
    SUBCASE("isolated category") { CHECK(connected_subgraph_size(idx, "song") == 1); }
    SUBCASE("meta island of three") {
        CHECK(connected_subgraph_size(idx, "Community portal") == 3);
        CHECK(connected_subgraph_size(idx, "Template documentation") == 3);
        CHECK(connected_subgraph_size(idx, "Wiki maintenance") == 3);
    }
    SUBCASE("every core category reports the same component size") {
        // union-find oracle over the subcategory edges
        std::map<std::string, std::string> parent;
        std::function<std::string(std::string)> find = [&](std::string x) {
            while (parent.count(x) && parent[x] != x) x = parent[x];
            return x;
        };
        for (const auto& c : fixture.categories) parent[c] = c;
        for (const auto& [a, b] : fixture.subcat_edges) parent[find(a)] = find(b);
        std::map<std::string, int> sizes;
        for (const auto& c : fixture.categories) sizes[find(c)]++;
        for (const auto& c : fixture.categories)
            CHECK(connected_subgraph_size(idx, c) == sizes[find(c)]);
        // the connected core spans everything except the island and the singleton
        CHECK(connected_subgraph_size(idx, "Characters") == 36);
    }
}

TEST_CASE("common_children_support") {
    SUBCASE("disjoint children") {
        const auto net = make_net({"A", "B", "X", "Y"}, {{"X", "A"}, {"Y", "B"}});
        CHECK(common_children_support(NetworkIndex(net), "A", "B") == 0);
    }
    SUBCASE("two shared entities and one shared subcategory") {
        const auto net = make_net({"A", "B", "K"}, {{"K", "A"}, {"K", "B"}},
                                  {{"e1", "A"}, {"e1", "B"}, {"e2", "A"}, {"e2", "B"}});
        CHECK(common_children_support(NetworkIndex(net), "A", "B") == 3);
    }
    SUBCASE("self support equals subcats plus instances") {
        const CategoryNetwork fixture = load_fixture_network();
        const NetworkIndex idx(fixture);
        for (const auto& cat : {"Dragons", "Characters", "song"}) {
            const DegreeCounts deg = degree_counts(idx, cat);
            CHECK(common_children_support(idx, cat, cat) ==
                  deg.subcats + instance_count(idx, cat));
        }
    }
}

TEST_CASE("children_depth_ratio") {
    SUBCASE("root with four subcategories") {
        const auto net = make_net({"R", "A", "B", "C", "D"},
                                  {{"A", "R"}, {"B", "R"}, {"C", "R"}, {"D", "R"}});
        CHECK(children_depth_ratio(NetworkIndex(net), "R") == doctest::Approx(4.0));
    }
    SUBCASE("leaf category") {
        const auto net = make_net({"R", "A"}, {{"A", "R"}});
        CHECK(children_depth_ratio(NetworkIndex(net), "A") == doctest::Approx(0.0));
    }
    SUBCASE("two children at average depth one") {
        const auto net = make_net({"R", "P", "A", "B"}, {{"P", "R"}, {"A", "P"}, {"B", "P"}});
        CHECK(children_depth_ratio(NetworkIndex(net), "P") == doctest::Approx(1.0));
    }
}

TEST_CASE("build_depth_table covers every category") {
    const CategoryNetwork fixture = load_fixture_network();
    const NetworkIndex idx(fixture);
    const DepthTable table = build_depth_table(idx);
    CHECK(table.size() == fixture.categories.size());
    CHECK(table.at("Characters") == 0.0);
    for (const auto& [cat, depth] : table) CHECK(depth >= 0.0);
}

TEST_CASE("features are invariant under declaration order") {
    const std::string raw = read_file(data_path("synthetic_universe.tsv"));
    std::vector<std::string> lines;
    std::istringstream stream(raw);
    std::string line;
    while (std::getline(stream, line))
        if (!line.empty()) lines.push_back(line);
    std::mt19937_64 rng(3);
    std::shuffle(lines.begin(), lines.end(), rng);
    std::string shuffled;
    for (const auto& l : lines) shuffled += l + "\n";
    std::istringstream in(shuffled);
    const CategoryNetwork permuted = parse_network(in, NetworkFormat::tsv);
    const CategoryNetwork original = load_fixture_network();
    const NetworkIndex idx1(original), idx2(permuted);
    for (const auto& cat : original.categories) {
        CHECK(average_upward_depth(idx1, cat) == average_upward_depth(idx2, cat));
        CHECK(instance_count(idx1, cat) == instance_count(idx2, cat));
        CHECK(connected_subgraph_size(idx1, cat) == connected_subgraph_size(idx2, cat));
    }
}

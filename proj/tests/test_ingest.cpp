#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "taxo/category_network.hpp"
#include "taxo/common.hpp"

#include <algorithm>
#include <random>
#include <sstream>

using namespace taxo;

TEST_CASE("minimal tsv network") {
    std::istringstream in("C\tRealms\nC\tDwarven Realms\nS\tDwarven Realms\tRealms\n");
    const CategoryNetwork net = parse_network(in, NetworkFormat::tsv);
    CHECK(net.categories.size() == 2);
    CHECK(net.entities.empty());
    CHECK(net.subcat_edges.size() == 1);
    CHECK(net.subcat_edges.count({"Dwarven Realms", "Realms"}) == 1);
}

TEST_CASE("self-loop is rejected") {
    std::istringstream in("C\tA\nS\tA\tA\n");
    CHECK_THROWS_WITH_AS(parse_network(in, NetworkFormat::tsv),
                         doctest::Contains("self-loop"), DataError);
}

TEST_CASE("identifiers are trimmed and duplicates collapse") {
    std::istringstream in("C\t A \nC\tA\nC\tB\nS\tA\tB\nS\tA\tB\n");
    const CategoryNetwork net = parse_network(in, NetworkFormat::tsv);
    CHECK(net.categories == std::set<std::string>{"A", "B"});
    CHECK(net.subcat_edges.size() == 1);
}

TEST_CASE("edge referencing undeclared node lists the offender") {
    std::istringstream in("C\tA\nS\tA\tMissing\n");
    CHECK_THROWS_WITH_AS(parse_network(in, NetworkFormat::tsv),
                         doctest::Contains("Missing"), DataError);
}

TEST_CASE("category/entity name clash is rejected") {
    std::istringstream in("C\tA\nE\tA\n");
    CHECK_THROWS_AS(parse_network(in, NetworkFormat::tsv), DataError);
}

TEST_CASE("malformed line names its line number") {
    std::istringstream in("C\tA\nS\tonly-two-fields\n");
    CHECK_THROWS_WITH_AS(parse_network(in, NetworkFormat::tsv),
                         doctest::Contains("line 2"), DataError);
}

TEST_CASE("bundled fixture has its authored counts") {
    const CategoryNetwork net = load_fixture_network();

    // independent recount straight from the raw file
    const std::string raw = read_file(data_path("synthetic_universe.tsv"));
    size_t c = 0, e = 0, s = 0, m = 0;
    std::istringstream lines(raw);
    std::string line;
    while (std::getline(lines, line)) {
        if (line.rfind("C\t", 0) == 0) ++c;
        else if (line.rfind("E\t", 0) == 0) ++e;
        else if (line.rfind("S\t", 0) == 0) ++s;
        else if (line.rfind("M\t", 0) == 0) ++m;
    }
    CHECK(c == 40);
    CHECK(e == 25);
    CHECK(s == 60);
    CHECK(m == 80);
    CHECK(net.categories.size() == c);
    CHECK(net.entities.size() == e);
    CHECK(net.subcat_edges.size() == s);
    CHECK(net.membership_edges.size() == m);
}

TEST_CASE("network_stats") {
    SUBCASE("empty network is all zeros") {
        const StatsSummary s = network_stats(CategoryNetwork{});
        CHECK(s == StatsSummary{});
    }
    SUBCASE("single category is root and leaf") {
        CategoryNetwork net;
        net.categories.insert("Only");
        const StatsSummary s = network_stats(net);
        CHECK(s.categories == 1);
        CHECK(s.roots == 1);
        CHECK(s.leaves == 1);
    }
    SUBCASE("fixture roots/leaves match a brute-force scan") {
        const CategoryNetwork net = load_fixture_network();
        size_t roots = 0, leaves = 0;
        for (const auto& cat : net.categories) {
            bool has_parent = false, has_child = false;
            for (const auto& [child, parent] : net.subcat_edges) {
                if (child == cat) has_parent = true;
                if (parent == cat) has_child = true;
            }
            if (!has_parent) ++roots;
            if (!has_child) ++leaves;
        }
        const StatsSummary s = network_stats(net);
        CHECK(s.roots == roots);
        CHECK(s.leaves == leaves);
    }
}

TEST_CASE("round-trip over both formats") {
    const CategoryNetwork net = load_fixture_network();
    for (NetworkFormat fmt : {NetworkFormat::tsv, NetworkFormat::json_lines}) {
        std::ostringstream out;
        serialize_network(net, out, fmt);
        std::istringstream in(out.str());
        CHECK(parse_network(in, fmt) == net);
    }
}

TEST_CASE("parse is order-insensitive") {
    const std::string raw = read_file(data_path("synthetic_universe.tsv"));
    std::vector<std::string> lines;
    std::istringstream stream(raw);
    std::string line;
    while (std::getline(stream, line))
        if (!line.empty()) lines.push_back(line);

    const CategoryNetwork reference = load_fixture_network();
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 5; ++trial) {
        std::shuffle(lines.begin(), lines.end(), rng);
        std::string shuffled;
        for (const auto& l : lines) shuffled += l + "\n";
        std::istringstream in(shuffled);
        CHECK(parse_network(in, NetworkFormat::tsv) == reference);
    }
}

TEST_CASE("hostile input never escapes as anything but a data error") {
    std::mt19937_64 rng(31337);
    const std::string alphabet = "CESMF\t\\\"{}[]:,abz #\xc3\xa9";
    for (int trial = 0; trial < 300; ++trial) {
        std::string blob;
        const size_t len = rng() % 120;
        for (size_t i = 0; i < len; ++i) {
            const char c = alphabet[rng() % alphabet.size()];
            blob += (rng() % 12 == 0) ? '\n' : c;
        }
        for (NetworkFormat fmt : {NetworkFormat::tsv, NetworkFormat::json_lines}) {
            std::istringstream in(blob);
            try {
                parse_network(in, fmt);
            } catch (const DataError&) {
                // fine: diagnosed
            }
        }
    }
    CHECK(true);
}

TEST_CASE("json-lines parsing errors carry line numbers") {
    std::istringstream bad("{\"type\":\"category\",\"name\":\"A\"}\nnot json\n");
    CHECK_THROWS_WITH_AS(parse_network(bad, NetworkFormat::json_lines),
                         doctest::Contains("line 2"), DataError);
    std::istringstream unknown("{\"type\":\"mystery\"}\n");
    CHECK_THROWS_AS(parse_network(unknown, NetworkFormat::json_lines), DataError);
}

TEST_CASE("relation lookup") {
    SUBCASE("single pair") {
        std::istringstream in("Maiar\tMiddle-earth races\n");
        const RelationLookup lookup = parse_relation_lookup(in);
        REQUIRE(lookup.count("Maiar") == 1);
        CHECK(lookup.at("Maiar") == std::set<std::string>{"Middle-earth races"});
    }
    SUBCASE("empty stream") {
        std::istringstream in("");
        CHECK(parse_relation_lookup(in).empty());
    }
    SUBCASE("two rows, same subject") {
        std::istringstream in("A\tX\nA\tY\n");
        CHECK(parse_relation_lookup(in).at("A").size() == 2);
    }
    SUBCASE("blank class errors with line number") {
        std::istringstream in("A\tX\nB\t \n");
        CHECK_THROWS_WITH_AS(parse_relation_lookup(in), doctest::Contains("line 2"), DataError);
    }
}

TEST_CASE("label files") {
    SUBCASE("category labels parse and validate") {
        std::istringstream in("# comment\nRealms\t1\nsong\t0\n");
        const auto labels = parse_category_labels(in);
        REQUIRE(labels.size() == 2);
        CHECK(labels[0] == LabeledItem{"Realms", 1});

        CategoryNetwork net;
        net.categories = {"Realms"};
        CHECK_THROWS_WITH_AS(validate_category_labels(net, labels),
                             doctest::Contains("song"), DataError);
    }
    SUBCASE("edge labels parse and validate") {
        std::istringstream in("A\tB\t1\n");
        const auto labels = parse_edge_labels(in);
        REQUIRE(labels.size() == 1);
        CategoryNetwork net;
        net.categories = {"A", "B"};
        CHECK_THROWS_AS(validate_edge_labels(net, labels), DataError);
        net.subcat_edges.insert({"A", "B"});
        CHECK_NOTHROW(validate_edge_labels(net, labels));
    }
    SUBCASE("non-binary label is rejected") {
        std::istringstream in("A\t2\n");
        CHECK_THROWS_AS(parse_category_labels(in), DataError);
    }
}

#include "taxo/classifier.hpp"
#include "taxo/graph_features.hpp"
#include "taxo/search.hpp"
#include "taxo/stemmer.hpp"
#include "taxo/wordnet.hpp"

#include <benchmark/benchmark.h>

#include <fstream>
#include <random>
#include <sstream>

using namespace taxo;

#ifndef TAXO_DATA_DIR
#error "benchmarks must be compiled with -DTAXO_DATA_DIR=..."
#endif

namespace {

std::string data_path(const std::string& name) {
    return std::string(TAXO_DATA_DIR) + "/" + name;
}

CategoryNetwork synthetic_network(size_t categories, uint64_t seed) {
    std::mt19937_64 rng(seed);
    CategoryNetwork net;
    std::vector<std::string> cats;
    for (size_t i = 0; i < categories; ++i) {
        cats.push_back("cat" + std::to_string(i));
        net.categories.insert(cats.back());
    }
    // edges point toward lower indices, so the graph stays acyclic
    for (size_t i = 1; i < categories; ++i) {
        const size_t parents = 1 + rng() % 3;
        for (size_t p = 0; p < parents; ++p)
            net.subcat_edges.insert({cats[i], cats[rng() % i]});
    }
    for (size_t e = 0; e < categories * 2; ++e) {
        const std::string entity = "ent" + std::to_string(e);
        net.entities.insert(entity);
        net.membership_edges.insert({entity, cats[rng() % categories]});
    }
    return net;
}

const WordNetDb& mini_wordnet() {
    static const WordNetDb db = [] {
        std::ifstream in(data_path("mini_wordnet.tsv"));
        return WordNetDb::load_fixture(in);
    }();
    return db;
}

void BM_average_upward_depth(benchmark::State& state) {
    const CategoryNetwork net = synthetic_network(static_cast<size_t>(state.range(0)), 11);
    const NetworkIndex idx(net);
    for (auto _ : state) {
        double total = 0;
        for (const auto& cat : net.categories) total += average_upward_depth(idx, cat);
        benchmark::DoNotOptimize(total);
    }
}
BENCHMARK(BM_average_upward_depth)->Arg(100)->Arg(1000);

void BM_wu_palmer_all_pairs(benchmark::State& state) {
    const WordNetDb& db = mini_wordnet();
    for (auto _ : state) {
        double total = 0;
        for (const auto& a : db.all_ids())
            for (const auto& b : db.all_ids()) total += db.wu_palmer(a, b);
        benchmark::DoNotOptimize(total);
    }
}
BENCHMARK(BM_wu_palmer_all_pairs);

void BM_link_synset(benchmark::State& state) {
    const WordNetDb& db = mini_wordnet();
    const ContextVector ctx = context_vector(std::string("sloping land by the water"));
    for (auto _ : state) {
        auto result = db.link_synset("Bank", ctx);
        benchmark::DoNotOptimize(result);
    }
}
BENCHMARK(BM_link_synset);

void BM_porter_stem(benchmark::State& state) {
    const std::vector<std::string> words = {"generalizations", "characters", "dragons",
                                            "relational",      "happiness",  "organizations"};
    for (auto _ : state) {
        for (const auto& w : words) {
            auto s = porter_stem(w);
            benchmark::DoNotOptimize(s);
        }
    }
}
BENCHMARK(BM_porter_stem);

void BM_logreg_train(benchmark::State& state) {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> noise(0.0, 1.0);
    Dataset data;
    data.feature_names = {"a", "b", "c", "d"};
    for (int i = 0; i < 200; ++i) {
        FeatureRow row;
        row.id = "r" + std::to_string(i);
        const int label = i % 2;
        for (int f = 0; f < 4; ++f)
            row.values.push_back(noise(rng) + (label ? 2.0 : -2.0));
        row.label = label;
        data.rows.push_back(std::move(row));
    }
    Hyperparameters hyper;
    hyper.epochs = static_cast<int>(state.range(0));
    for (auto _ : state) {
        LogRegModel model = train(data, hyper);
        benchmark::DoNotOptimize(model);
    }
}
BENCHMARK(BM_logreg_train)->Arg(100)->Arg(1000);

void BM_query_single(benchmark::State& state) {
    const CategoryNetwork net = synthetic_network(2000, 23);
    Taxonomy t;
    for (const auto& c : net.categories) t.classes[c] = {c, ClassOrigin::original, std::nullopt};
    for (const auto& e : net.subcat_edges) t.subclass_edges[e] = 1.0;
    for (const auto& [e, c] : net.membership_edges) {
        t.entities.insert(e);
        t.instance_edges[{e, c}] = 1.0;
    }
    for (auto _ : state) {
        auto a = query_single(t, "cat1");
        benchmark::DoNotOptimize(a);
    }
}
BENCHMARK(BM_query_single);

} // namespace

BENCHMARK_MAIN();

#pragma once

#include "taxo/category_network.hpp"
#include "taxo/classifier.hpp"

#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>

#ifndef TAXO_DATA_DIR
#error "tests must be compiled with -DTAXO_DATA_DIR=..."
#endif

inline std::string data_path(const std::string& name) {
    return std::string(TAXO_DATA_DIR) + "/" + name;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("missing fixture " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline taxo::CategoryNetwork load_fixture_network() {
    std::ifstream in(data_path("synthetic_universe.tsv"));
    if (!in) throw std::runtime_error("missing synthetic_universe.tsv");
    return taxo::parse_network(in, taxo::NetworkFormat::tsv);
}

/// Two well-separated 2D blobs; linearly separable by construction.
inline taxo::Dataset separable_blobs(size_t n, uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> noise(0.0, 1.0);
    taxo::Dataset data;
    data.feature_names = {"x", "y"};
    for (size_t i = 0; i < n; ++i) {
        const int label = static_cast<int>(i % 2);
        const double cx = label ? 6.0 : -6.0;
        const double cy = label ? 6.0 : -6.0;
        taxo::FeatureRow row;
        row.id = "row" + std::to_string(i);
        row.values = {cx + noise(rng), cy + noise(rng)};
        row.label = label;
        data.rows.push_back(std::move(row));
    }
    return data;
}

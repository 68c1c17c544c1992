#include "taxo/embeddings.hpp"

#include "taxo/common.hpp"
#include "taxo/lexical.hpp"
#include "taxo/stemmer.hpp"

#include <zlib.h>

#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

namespace taxo {

EmbeddingTable EmbeddingTable::load(std::istream& in) {
    EmbeddingTable table;
    std::string line;
    size_t lineno = 0;

    if (!std::getline(in, line)) throw DataError("embeddings: empty stream");
    ++lineno;
    const std::vector<std::string> header = split_ws(line);
    if (header.size() != 2)
        throw DataError("line 1: expected header `count dim`");
    size_t count = 0, dim = 0;
    try {
        count = std::stoul(header[0]);
        dim = std::stoul(header[1]);
    } catch (const std::exception&) {
        throw DataError("line 1: non-numeric header field");
    }
    if (dim == 0) throw DataError("line 1: dimension must be positive");
    table.dimension_ = dim;

    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        const std::vector<std::string> fields = split_ws(line);
        if (fields.size() != dim + 1)
            throw DataError("line " + std::to_string(lineno) + ": expected " +
                            std::to_string(dim) + " components, got " +
                            std::to_string(fields.size() - 1));
        std::vector<double> vec(dim);
        for (size_t i = 0; i < dim; ++i) {
            try {
                size_t used = 0;
                vec[i] = std::stod(fields[i + 1], &used);
                if (used != fields[i + 1].size()) throw std::invalid_argument("trailing");
            } catch (const std::exception&) {
                throw DataError("line " + std::to_string(lineno) +
                                ": non-numeric component \"" + fields[i + 1] + "\"");
            }
            if (!std::isfinite(vec[i]))
                throw DataError("line " + std::to_string(lineno) + ": non-finite component");
        }
        table.vectors_[to_lower(fields[0])] = std::move(vec);
    }

    if (table.vectors_.size() != count)
        throw DataError("embeddings: header declares " + std::to_string(count) +
                        " entries but stream holds " + std::to_string(table.vectors_.size()) +
                        " distinct words");
    return table;
}

namespace {

std::string gunzip_file(const std::string& path) {
    gzFile gz = gzopen(path.c_str(), "rb");
    if (!gz) throw DataError("cannot open " + path);
    std::string out;
    char buf[1 << 16];
    int n = 0;
    while ((n = gzread(gz, buf, sizeof buf)) > 0) out.append(buf, static_cast<size_t>(n));
    const bool ok = n == 0;
    gzclose(gz);
    if (!ok) throw DataError("gzip read error in " + path);
    return out;
}

} // namespace

EmbeddingTable EmbeddingTable::load_file(const std::string& path) {
    if (path.size() > 3 && path.compare(path.size() - 3, 3, ".gz") == 0) {
        std::istringstream in(gunzip_file(path));
        return load(in);
    }
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path);
    return load(in);
}

const std::vector<double>* EmbeddingTable::find(const std::string& word) const {
    auto it = vectors_.find(word);
    return it == vectors_.end() ? nullptr : &it->second;
}

double norm(std::span<const double> v) {
    double s = 0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

double cosine(std::span<const double> a, std::span<const double> b) {
    const double na = norm(a), nb = norm(b);
    if (na == 0.0 || nb == 0.0) return 0.0;
    double dot = 0;
    for (size_t i = 0; i < a.size() && i < b.size(); ++i) dot += a[i] * b[i];
    return dot / (na * nb);
}

std::string stemmed_head(const std::string& name) {
    return porter_stem(to_lower(decompose_name(name).head));
}

std::optional<double> hypervec_score(const EmbeddingTable& table,
                                     const std::string& c1, const std::string& c2) {
    const std::vector<double>* e1 = table.find(stemmed_head(c1));
    const std::vector<double>* e2 = table.find(stemmed_head(c2));
    if (!e1 || !e2) return std::nullopt;
    const double n1 = norm(*e1), n2 = norm(*e2);
    if (n1 == 0.0 || n2 == 0.0) return std::nullopt;
    return cosine(*e1, *e2) * (n2 / n1);
}

} // namespace taxo

#include "taxo/classifier.hpp"

#include "taxo/common.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

namespace taxo {

using json = nlohmann::json;

Dataset Dataset::without_feature(const std::string& name) const {
    auto it = std::find(feature_names.begin(), feature_names.end(), name);
    if (it == feature_names.end()) throw DataError("unknown feature \"" + name + "\"");
    const size_t drop = static_cast<size_t>(it - feature_names.begin());
    Dataset out;
    out.feature_names = feature_names;
    out.feature_names.erase(out.feature_names.begin() + static_cast<long>(drop));
    out.rows.reserve(rows.size());
    for (const auto& r : rows) {
        FeatureRow nr;
        nr.id = r.id;
        nr.label = r.label;
        nr.values = r.values;
        nr.values.erase(nr.values.begin() + static_cast<long>(drop));
        out.rows.push_back(std::move(nr));
    }
    return out;
}

double sigmoid(double z) {
    if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
    const double e = std::exp(z);
    return e / (1.0 + e);
}

TrainingProblem::TrainingProblem(const Dataset& data, double l2) : l2_(l2) {
    dim_ = data.feature_names.size();
    means_.assign(dim_, 0.0);
    stdevs_.assign(dim_, 1.0);
    if (data.rows.empty()) throw DataError("empty dataset");

    // canonical row order: float accumulation then gives bit-identical
    // results regardless of how callers ordered the rows
    std::vector<const FeatureRow*> rows;
    rows.reserve(data.rows.size());
    for (const auto& r : data.rows) {
        if (!r.label) throw DataError("row \"" + r.id + "\" has no label");
        if (r.values.size() != dim_)
            throw DataError("row \"" + r.id + "\" has " + std::to_string(r.values.size()) +
                            " values, expected " + std::to_string(dim_));
        for (double v : r.values)
            if (!std::isfinite(v))
                throw DataError("row \"" + r.id + "\" has a non-finite value");
        rows.push_back(&r);
    }
    std::stable_sort(rows.begin(), rows.end(),
                     [](const FeatureRow* a, const FeatureRow* b) { return a->id < b->id; });

    const size_t n = rows.size();
    for (const FeatureRow* r : rows)
        for (size_t f = 0; f < dim_; ++f) means_[f] += r->values[f];
    for (size_t f = 0; f < dim_; ++f) means_[f] /= static_cast<double>(n);
    std::vector<double> var(dim_, 0.0);
    for (const FeatureRow* r : rows)
        for (size_t f = 0; f < dim_; ++f) {
            const double d = r->values[f] - means_[f];
            var[f] += d * d;
        }
    for (size_t f = 0; f < dim_; ++f) {
        const double sd = std::sqrt(var[f] / static_cast<double>(n));
        stdevs_[f] = sd > 0 ? sd : 1.0;
    }

    x_.reserve(n);
    y_.reserve(n);
    for (const FeatureRow* r : rows) {
        std::vector<double> row(dim_);
        for (size_t f = 0; f < dim_; ++f) row[f] = (r->values[f] - means_[f]) / stdevs_[f];
        x_.push_back(std::move(row));
        y_.push_back(*r->label);
    }
}

double TrainingProblem::loss(std::span<const double> weights, double bias) const {
    const size_t n = x_.size();
    double total = 0;
    for (size_t i = 0; i < n; ++i) {
        double z = bias;
        for (size_t f = 0; f < dim_; ++f) z += weights[f] * x_[i][f];
        // -log p(y|x) written to stay finite for large |z|
        const double y = y_[i];
        if (z >= 0)
            total += std::log1p(std::exp(-z)) + (1.0 - y) * z;
        else
            total += std::log1p(std::exp(z)) - y * z;
    }
    total /= static_cast<double>(n);
    double reg = 0;
    for (size_t f = 0; f < dim_; ++f) reg += weights[f] * weights[f];
    return total + 0.5 * l2_ * reg;
}

std::vector<double> TrainingProblem::gradient(std::span<const double> weights, double bias,
                                              double& grad_bias) const {
    const size_t n = x_.size();
    std::vector<double> grad(dim_, 0.0);
    grad_bias = 0;
    for (size_t i = 0; i < n; ++i) {
        double z = bias;
        for (size_t f = 0; f < dim_; ++f) z += weights[f] * x_[i][f];
        const double err = sigmoid(z) - static_cast<double>(y_[i]);
        for (size_t f = 0; f < dim_; ++f) grad[f] += err * x_[i][f];
        grad_bias += err;
    }
    for (size_t f = 0; f < dim_; ++f)
        grad[f] = grad[f] / static_cast<double>(n) + l2_ * weights[f];
    grad_bias /= static_cast<double>(n);
    return grad;
}

LogRegModel train(const Dataset& data, const Hyperparameters& hyper) {
    bool has_pos = false, has_neg = false;
    for (const auto& r : data.rows) {
        if (r.label && *r.label == 1) has_pos = true;
        if (r.label && *r.label == 0) has_neg = true;
    }
    if (!has_pos || !has_neg) throw DataError("training data contains a single class");

    TrainingProblem problem(data, hyper.l2);
    const size_t dim = problem.feature_count();
    std::vector<double> w(dim, 0.0);
    double b = 0.0;
    const double lr = hyper.learning_rate;
    for (int e = 0; e < hyper.epochs; ++e) {
        double gb = 0;
        const std::vector<double> g = problem.gradient(w, b, gb);
        for (size_t f = 0; f < dim; ++f) {
            // g includes the l2*w term; peel it off and apply the L2
            // shrinkage implicitly so huge lambdas cannot diverge
            const double data_grad = g[f] - hyper.l2 * w[f];
            w[f] = (w[f] - lr * data_grad) / (1.0 + lr * hyper.l2);
        }
        b -= lr * gb;
    }

    LogRegModel model;
    model.feature_names = data.feature_names;
    model.weights = std::move(w);
    model.bias = b;
    model.means = problem.means();
    model.stdevs = problem.stdevs();
    model.hyper = hyper;
    return model;
}

double predict_proba(const LogRegModel& model, std::span<const double> values) {
    if (values.size() != model.weights.size())
        throw DataError("feature vector has " + std::to_string(values.size()) +
                        " values, model expects " + std::to_string(model.weights.size()));
    double z = model.bias;
    for (size_t f = 0; f < values.size(); ++f)
        z += model.weights[f] * ((values[f] - model.means[f]) / model.stdevs[f]);
    return sigmoid(z);
}

json LogRegModel::to_json() const {
    return json{{"format_version", 1},
                {"feature_names", feature_names},
                {"weights", weights},
                {"bias", bias},
                {"standardization", {{"means", means}, {"stdevs", stdevs}}},
                {"hyperparameters",
                 {{"l2", hyper.l2},
                  {"learning_rate", hyper.learning_rate},
                  {"epochs", hyper.epochs},
                  {"seed", hyper.seed}}}};
}

LogRegModel LogRegModel::from_json(const json& j) {
    try {
        LogRegModel m;
        if (j.at("format_version").get<int>() != 1)
            throw DataError("unsupported model format version");
        m.feature_names = j.at("feature_names").get<std::vector<std::string>>();
        m.weights = j.at("weights").get<std::vector<double>>();
        m.bias = j.at("bias").get<double>();
        m.means = j.at("standardization").at("means").get<std::vector<double>>();
        m.stdevs = j.at("standardization").at("stdevs").get<std::vector<double>>();
        const auto& h = j.at("hyperparameters");
        m.hyper.l2 = h.at("l2").get<double>();
        m.hyper.learning_rate = h.at("learning_rate").get<double>();
        m.hyper.epochs = h.at("epochs").get<int>();
        m.hyper.seed = h.at("seed").get<uint64_t>();
        if (m.weights.size() != m.feature_names.size() ||
            m.means.size() != m.feature_names.size() ||
            m.stdevs.size() != m.feature_names.size())
            throw DataError("model vectors disagree with feature count");
        return m;
    } catch (const json::exception& e) {
        throw DataError(std::string("bad model JSON: ") + e.what());
    }
}

Prf precision_recall_f1(std::span<const int> predictions, std::span<const int> labels) {
    if (predictions.size() != labels.size())
        throw DataError("predictions and labels differ in length");
    size_t tp = 0, fp = 0, fn = 0;
    for (size_t i = 0; i < predictions.size(); ++i) {
        if (predictions[i] == 1 && labels[i] == 1) ++tp;
        else if (predictions[i] == 1) ++fp;
        else if (labels[i] == 1) ++fn;
    }
    Prf out;
    out.precision = (tp + fp) == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(tp + fp);
    out.recall = (tp + fn) == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(tp + fn);
    out.f1 = (out.precision + out.recall) == 0.0
                 ? 0.0
                 : 2.0 * out.precision * out.recall / (out.precision + out.recall);
    return out;
}

namespace {

// Deterministic fold assignment keyed on sorted row ids: sort, shuffle with
// the seeded engine, deal round-robin. Row order in the dataset is
// irrelevant by construction.
std::map<std::string, int> assign_folds(const std::vector<std::string>& ids, int k,
                                        std::mt19937_64& rng) {
    std::vector<std::string> sorted = ids;
    std::sort(sorted.begin(), sorted.end());
    std::shuffle(sorted.begin(), sorted.end(), rng);
    std::map<std::string, int> fold;
    for (size_t i = 0; i < sorted.size(); ++i) fold[sorted[i]] = static_cast<int>(i % static_cast<size_t>(k));
    return fold;
}

} // namespace

CvResult kfold_cv(const Dataset& data, int k, const Hyperparameters& hyper, uint64_t seed) {
    if (k < 2) throw DataError("k must be >= 2");
    if (data.rows.size() < static_cast<size_t>(k))
        throw DataError("dataset smaller than fold count");
    {
        std::set<std::string> ids;
        for (const auto& r : data.rows)
            if (!ids.insert(r.id).second)
                throw DataError("duplicate row id \"" + r.id + "\"");
    }

    std::vector<std::string> pos_ids, neg_ids;
    for (const auto& r : data.rows) {
        if (!r.label) throw DataError("row \"" + r.id + "\" has no label");
        (*r.label == 1 ? pos_ids : neg_ids).push_back(r.id);
    }

    CvResult result;
    std::mt19937_64 rng(seed);
    std::map<std::string, int> fold;
    if (pos_ids.size() < static_cast<size_t>(k)) {
        result.stratified = false;
        std::vector<std::string> all = pos_ids;
        all.insert(all.end(), neg_ids.begin(), neg_ids.end());
        fold = assign_folds(all, k, rng);
    } else {
        result.stratified = true;
        fold = assign_folds(pos_ids, k, rng);
        auto neg_fold = assign_folds(neg_ids, k, rng);
        fold.insert(neg_fold.begin(), neg_fold.end());
    }

    std::vector<int> pooled_pred, pooled_label;
    for (int f = 0; f < k; ++f) {
        Dataset train_set, test_set;
        train_set.feature_names = data.feature_names;
        test_set.feature_names = data.feature_names;
        for (const auto& r : data.rows)
            (fold.at(r.id) == f ? test_set : train_set).rows.push_back(r);
        if (test_set.rows.empty()) {
            result.folds.push_back({f, Prf{}, 0});
            continue;
        }
        const LogRegModel model = train(train_set, hyper);
        std::vector<int> preds, labels;
        for (const auto& r : test_set.rows) {
            const double p = predict_proba(model, r.values);
            result.predictions[r.id] = p;
            preds.push_back(p >= 0.5 ? 1 : 0);
            labels.push_back(*r.label);
            pooled_pred.push_back(preds.back());
            pooled_label.push_back(labels.back());
        }
        result.folds.push_back({f, precision_recall_f1(preds, labels), test_set.rows.size()});
    }
    result.pooled = precision_recall_f1(pooled_pred, pooled_label);
    return result;
}

double average_precision(std::vector<ScoredItem> group) {
    std::sort(group.begin(), group.end(), [](const ScoredItem& a, const ScoredItem& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.id < b.id;
    });
    size_t positives = 0;
    for (const auto& it : group) positives += it.label == 1 ? 1u : 0u;
    if (positives == 0) return 0.0;
    double sum = 0;
    size_t hits = 0;
    for (size_t i = 0; i < group.size(); ++i) {
        if (group[i].label == 1) {
            ++hits;
            sum += static_cast<double>(hits) / static_cast<double>(i + 1);
        }
    }
    return sum / static_cast<double>(positives);
}

double mean_average_precision(const std::map<std::string, std::vector<ScoredItem>>& groups) {
    if (groups.empty()) return 0.0;
    double total = 0;
    for (const auto& [_, g] : groups) {
        if (g.empty()) throw DataError("empty ranking group");
        total += average_precision(g);
    }
    return total / static_cast<double>(groups.size());
}

std::vector<EliminationStep> recursive_feature_elimination(const Dataset& data, int k,
                                                           const Hyperparameters& hyper,
                                                           uint64_t seed) {
    if (data.feature_names.size() < 2) throw DataError("need at least 2 features");
    std::vector<EliminationStep> steps;
    Dataset current = data;
    while (!current.feature_names.empty()) {
        std::string best_name;
        double best_f1 = -1;
        for (const auto& name : current.feature_names) {
            const Dataset reduced = current.without_feature(name);
            double f1;
            if (reduced.feature_names.empty()) {
                // bias-only model: predict the majority class everywhere
                size_t pos = 0;
                std::vector<int> preds, labels;
                for (const auto& r : reduced.rows) pos += *r.label == 1 ? 1u : 0u;
                const int p = pos * 2 >= reduced.rows.size() ? 1 : 0;
                for (const auto& r : reduced.rows) {
                    preds.push_back(p);
                    labels.push_back(*r.label);
                }
                f1 = precision_recall_f1(preds, labels).f1;
            } else {
                f1 = kfold_cv(reduced, k, hyper, seed).pooled.f1;
            }
            if (f1 > best_f1 || (f1 == best_f1 && name < best_name)) {
                best_f1 = f1;
                best_name = name;
            }
        }
        steps.push_back({best_name, best_f1});
        current = current.without_feature(best_name);
    }
    return steps;
}

} // namespace taxo

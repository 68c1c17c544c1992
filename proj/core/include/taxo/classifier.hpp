#pragma once

#include <nlohmann/json_fwd.hpp>

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace taxo {

/// One training/prediction row. `id` is the stable identifier fold
/// assignment is keyed on (category name, "child -> parent", ...).
struct FeatureRow {
    std::string id;
    std::vector<double> values;
    std::optional<int> label;

    bool operator==(const FeatureRow&) const = default;
};

struct Dataset {
    std::vector<std::string> feature_names;
    std::vector<FeatureRow> rows;

    /// Copy without the named feature column.
    Dataset without_feature(const std::string& name) const;
};

struct Hyperparameters {
    double l2 = 1e-3;
    double learning_rate = 0.1;
    int epochs = 1000;
    uint64_t seed = 7;
};

/// Trained binary logistic regression. Standardization statistics are the
/// ones fitted at training time and are applied to every prediction.
struct LogRegModel {
    std::vector<std::string> feature_names;
    std::vector<double> weights;
    double bias = 0.0;
    std::vector<double> means;
    std::vector<double> stdevs;  // zero-variance features get 1
    Hyperparameters hyper;

    nlohmann::json to_json() const;
    static LogRegModel from_json(const nlohmann::json& j);
};

/// L2-regularized negative log-likelihood over the standardized rows of a
/// dataset, exposed so the analytic gradient can be checked against finite
/// differences. The bias is not regularized.
class TrainingProblem {
public:
    TrainingProblem(const Dataset& data, double l2);

    size_t feature_count() const { return dim_; }
    double loss(std::span<const double> weights, double bias) const;
    /// Returns d/dw loss (size dim_) followed by d/db loss in grad_bias.
    std::vector<double> gradient(std::span<const double> weights, double bias,
                                 double& grad_bias) const;

    const std::vector<double>& means() const { return means_; }
    const std::vector<double>& stdevs() const { return stdevs_; }

private:
    size_t dim_ = 0;
    std::vector<std::vector<double>> x_;  // standardized
    std::vector<int> y_;
    std::vector<double> means_;
    std::vector<double> stdevs_;
    double l2_ = 0;
};

/// Full-batch gradient descent on TrainingProblem; the L2 term is applied
/// as an implicit (proximal) step so very large lambdas stay stable.
/// Throws DataError on single-class data or non-finite values.
LogRegModel train(const Dataset& data, const Hyperparameters& hyper);

double sigmoid(double z);

/// sigma(w . standardized(values) + b); throws on dimension mismatch.
double predict_proba(const LogRegModel& model, std::span<const double> values);

struct Prf {
    double precision = 0;
    double recall = 0;
    double f1 = 0;
};

/// Standard P/R/F1 with 0-denominator conventions (0 instead of NaN).
Prf precision_recall_f1(std::span<const int> predictions, std::span<const int> labels);

struct FoldMetrics {
    int fold = 0;
    Prf metrics;
    size_t test_size = 0;
};

struct CvResult {
    std::vector<FoldMetrics> folds;
    Prf pooled;  // micro-averaged over pooled fold predictions
    bool stratified = true;
    /// row id -> predicted probability from the fold where the row was held out
    std::map<std::string, double> predictions;
};

/// Deterministic stratified k-fold CV keyed by row ids. Falls back to
/// non-stratified folding (stratified=false) when positives < k.
CvResult kfold_cv(const Dataset& data, int k, const Hyperparameters& hyper, uint64_t seed);

struct ScoredItem {
    std::string id;
    double score = 0;
    int label = 0;
};

/// Average precision of the score-descending ranking (ties by id);
/// 0 for a group without positives.
double average_precision(std::vector<ScoredItem> group);

/// Mean of per-group average precision.
double mean_average_precision(const std::map<std::string, std::vector<ScoredItem>>& groups);

struct EliminationStep {
    std::string feature;
    double f1_after_removal = 0;
};

/// Recursive feature elimination: repeatedly drop the feature whose
/// removal hurts CV-F1 least (ties by name), down to the bias-only model.
std::vector<EliminationStep> recursive_feature_elimination(const Dataset& data, int k,
                                                           const Hyperparameters& hyper,
                                                           uint64_t seed);

} // namespace taxo

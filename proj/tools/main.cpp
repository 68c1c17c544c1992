// Command-line front end: train, clean-categories, clean-edges, build,
// eval, query, stats. Configuration comes from a key=value file plus
// --set overrides; every artifact-producing command writes a manifest so
// runs can be reproduced bit for bit.

#include "taxo/category_network.hpp"
#include "taxo/classifier.hpp"
#include "taxo/common.hpp"
#include "taxo/embeddings.hpp"
#include "taxo/pipeline.hpp"
#include "taxo/run_config.hpp"
#include "taxo/search.hpp"
#include "taxo/taxonomy.hpp"
#include "taxo/wordnet.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace taxo;

namespace {

struct CliState {
    std::string config_path;
    std::vector<std::string> overrides;
    RunConfig config;

    void finalize() {
        if (!config_path.empty()) config = RunConfig::load_file(config_path);
        for (const auto& kv : overrides) {
            const auto eq = kv.find('=');
            if (eq == std::string::npos)
                throw DataError("--set expects key=value, got: " + kv);
            config.set(trim(kv.substr(0, eq)), trim(kv.substr(eq + 1)));
        }
    }
};

NetworkFormat parse_format(const std::string& name) {
    if (name == "tsv") return NetworkFormat::tsv;
    if (name == "jsonl" || name == "json-lines") return NetworkFormat::json_lines;
    throw DataError("unknown network format \"" + name + "\" (expected tsv or jsonl)");
}

CategoryNetwork load_network(const RunConfig& cfg, const std::string& key = "network") {
    const std::string path = cfg.require(key);
    std::ifstream in(path);
    if (!in) throw DataError("cannot open network " + path);
    return parse_network(in, parse_format(cfg.get("network_format", "tsv")));
}

WordNetDb load_wordnet(const std::string& path) {
    if (fs::is_directory(path)) return WordNetDb::load_flat(path);
    std::ifstream in(path);
    if (!in) throw DataError("cannot open wordnet " + path);
    return WordNetDb::load_fixture(in);
}

std::vector<std::string> load_meta_terms(const RunConfig& cfg) {
    if (!cfg.has("meta_terms")) return default_meta_terms();
    std::ifstream in(cfg.require("meta_terms"));
    if (!in) throw DataError("cannot open meta terms " + cfg.require("meta_terms"));
    return load_term_list(in);
}

Hyperparameters hyper_from(const RunConfig& cfg) {
    Hyperparameters h;
    h.l2 = cfg.get_double("l2", 1e-3);
    h.learning_rate = cfg.get_double("learning_rate", 0.1);
    h.epochs = cfg.get_int("epochs", 1000);
    h.seed = cfg.get_seed("seed", 7);
    return h;
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write " + path.string());
    out << text;
}

void write_json(const fs::path& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

fs::path ensure_out_dir(const RunConfig& cfg) {
    const fs::path dir = cfg.require("out_dir");
    fs::create_directories(dir);
    return dir;
}

void write_manifest(const fs::path& dir, const std::string& command, const RunConfig& cfg,
                    const std::vector<std::string>& inputs) {
    write_json(dir / (command + ".manifest.json"),
               make_manifest(command, cfg, inputs, cfg.get_seed("seed", 7)));
}

LogRegModel load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open model " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw DataError(std::string("bad model file: ") + e.what());
    }
    return LogRegModel::from_json(j);
}

// Resources for edge features, loaded eagerly so missing files fail at
// startup rather than mid-run.
struct EdgeResources {
    std::optional<WordNetDb> wordnet;
    std::optional<EmbeddingTable> embeddings;
    std::optional<RelationLookup> relations;
    std::vector<std::string> input_paths;

    static EdgeResources load(const RunConfig& cfg) {
        EdgeResources r;
        if (cfg.has("wordnet")) {
            r.wordnet = load_wordnet(cfg.require("wordnet"));
            if (!fs::is_directory(cfg.require("wordnet")))
                r.input_paths.push_back(cfg.require("wordnet"));
        }
        if (cfg.has("embeddings")) {
            r.embeddings = EmbeddingTable::load_file(cfg.require("embeddings"));
            r.input_paths.push_back(cfg.require("embeddings"));
        }
        if (cfg.has("relations")) {
            std::ifstream in(cfg.require("relations"));
            if (!in) throw DataError("cannot open relations " + cfg.require("relations"));
            r.relations = parse_relation_lookup(in);
            r.input_paths.push_back(cfg.require("relations"));
        }
        return r;
    }

    EdgeContext context(const CategoryNetwork& net) const {
        return EdgeContext::build(net, wordnet ? &*wordnet : nullptr,
                                  embeddings ? &*embeddings : nullptr,
                                  relations ? &*relations : nullptr);
    }
};

json prf_json(const Prf& m) {
    return json{{"precision", m.precision}, {"recall", m.recall}, {"f1", m.f1}};
}

json cv_report(const CvResult& cv) {
    json folds = json::array();
    for (const auto& f : cv.folds) {
        json fj = prf_json(f.metrics);
        fj["fold"] = f.fold;
        fj["test_size"] = f.test_size;
        folds.push_back(std::move(fj));
    }
    return json{{"folds", folds},
                {"aggregate", prf_json(cv.pooled)},
                {"stratified", cv.stratified}};
}

// MAP over per-parent groups from scored edges.
double edges_map(const std::map<std::string, double>& scores_by_id,
                 const std::vector<LabeledEdge>& labels) {
    std::map<std::string, std::vector<ScoredItem>> groups;
    for (const auto& l : labels) {
        const std::string id = l.child + " -> " + l.parent;
        auto it = scores_by_id.find(id);
        if (it == scores_by_id.end()) continue;
        groups[l.parent].push_back({id, it->second, l.label});
    }
    if (groups.empty()) return 0.0;
    return mean_average_precision(groups);
}

int cmd_stats(const CliState& state) {
    const CategoryNetwork net = load_network(state.config);
    const StatsSummary s = network_stats(net);
    const json j{{"categories", s.categories},     {"entities", s.entities},
                 {"subcat_edges", s.subcat_edges}, {"membership_edges", s.membership_edges},
                 {"roots", s.roots},               {"leaves", s.leaves}};
    std::cout << j.dump(2) << "\n";
    if (state.config.has("out_dir")) {
        const fs::path dir = ensure_out_dir(state.config);
        write_json(dir / "stats.json", j);
        write_manifest(dir, "stats", state.config, {state.config.require("network")});
    }
    return 0;
}

struct EdgeTrainingData {
    Dataset dataset;
    std::vector<LabeledEdge> labels;
    size_t skipped = 0;
};

EdgeTrainingData edge_training_data(const RunConfig& cfg, const EdgeResources& res,
                                    const CategoryNetwork& net, const std::string& labels_key) {
    std::ifstream in(cfg.require(labels_key));
    if (!in) throw DataError("cannot open labels " + cfg.require(labels_key));
    std::vector<LabeledEdge> labels = parse_edge_labels(in);

    CategoryNetwork working = net;
    if (cfg.has("category_model")) {
        const LogRegModel cat_model = load_model(cfg.require("category_model"));
        working = clean_categories(net, cat_model, cfg.get_double("category_threshold", 0.5),
                                   load_meta_terms(cfg))
                      .pruned;
    }
    EdgeTrainingData out;
    std::vector<LabeledEdge> usable;
    for (const auto& l : labels) {
        if (working.subcat_edges.count({l.child, l.parent})) usable.push_back(l);
        else ++out.skipped;
    }
    validate_edge_labels(working, usable);
    const EdgeContext ctx = res.context(working);
    out.dataset = edge_dataset(ctx, &usable);
    out.labels = std::move(usable);
    return out;
}

int cmd_train(const CliState& state, const std::string& stage, bool ablation) {
    const RunConfig& cfg = state.config;
    const fs::path dir = ensure_out_dir(cfg);
    const Hyperparameters hyper = hyper_from(cfg);
    const uint64_t seed = cfg.get_seed("seed", 7);
    const int k = cfg.get_int("k_folds", 10);
    std::vector<std::string> inputs{cfg.require("network")};

    json report;
    report["stage"] = stage;
    report["hyperparameters"] = {{"l2", hyper.l2},
                                 {"learning_rate", hyper.learning_rate},
                                 {"epochs", hyper.epochs},
                                 {"k_folds", k},
                                 {"seed", seed}};

    if (stage == "categories") {
        if (!cfg.has("category_labels")) throw DataError("missing labels: set category_labels");
        const CategoryNetwork net = load_network(cfg);
        std::ifstream lin(cfg.require("category_labels"));
        if (!lin) throw DataError("cannot open labels " + cfg.require("category_labels"));
        const std::vector<LabeledItem> labels = parse_category_labels(lin);
        validate_category_labels(net, labels);
        inputs.push_back(cfg.require("category_labels"));

        const NetworkIndex idx(net);
        const Dataset data = category_dataset(idx, load_meta_terms(cfg), &labels);
        const CvResult cv = kfold_cv(data, k, hyper, seed);
        report["cross_validation"] = cv_report(cv);

        const LogRegModel model = train(data, hyper);
        write_json(dir / "category_model.json", model.to_json());
        report["model_file"] = "category_model.json";

        if (cfg.has("test_network")) {
            const CategoryNetwork test_net = load_network(cfg, "test_network");
            std::ifstream tl(cfg.require("test_category_labels"));
            if (!tl) throw DataError("cannot open labels " + cfg.require("test_category_labels"));
            const std::vector<LabeledItem> test_labels = parse_category_labels(tl);
            validate_category_labels(test_net, test_labels);
            inputs.push_back(cfg.require("test_network"));
            inputs.push_back(cfg.require("test_category_labels"));
            const NetworkIndex tidx(test_net);
            const Dataset test_data = category_dataset(tidx, load_meta_terms(cfg), &test_labels);
            std::vector<int> preds, golds;
            for (const auto& r : test_data.rows) {
                preds.push_back(predict_proba(model, r.values) >= 0.5 ? 1 : 0);
                golds.push_back(*r.label);
            }
            report["holdout"] = prf_json(precision_recall_f1(preds, golds));
        }
        if (ablation) {
            json steps = json::array();
            for (const auto& s : recursive_feature_elimination(data, k, hyper, seed))
                steps.push_back(json{{"feature", s.feature}, {"f1_after_removal", s.f1_after_removal}});
            report["ablation"] = steps;
        }
    } else if (stage == "edges") {
        if (!cfg.has("edge_labels")) throw DataError("missing labels: set edge_labels");
        const CategoryNetwork net = load_network(cfg);
        const EdgeResources res = EdgeResources::load(cfg);
        inputs.push_back(cfg.require("edge_labels"));
        for (const auto& p : res.input_paths) inputs.push_back(p);
        if (cfg.has("category_model")) inputs.push_back(cfg.require("category_model"));

        const EdgeTrainingData data = edge_training_data(cfg, res, net, "edge_labels");
        report["skipped_labels"] = data.skipped;
        const CvResult cv = kfold_cv(data.dataset, k, hyper, seed);
        json cvj = cv_report(cv);
        cvj["aggregate"]["map"] = edges_map(cv.predictions, data.labels);
        report["cross_validation"] = cvj;

        const LogRegModel model = train(data.dataset, hyper);
        write_json(dir / "edge_model.json", model.to_json());
        report["model_file"] = "edge_model.json";

        if (ablation) {
            json steps = json::array();
            for (const auto& s : recursive_feature_elimination(data.dataset, k, hyper, seed))
                steps.push_back(json{{"feature", s.feature}, {"f1_after_removal", s.f1_after_removal}});
            report["ablation"] = steps;
        }
    } else {
        throw DataError("stage must be categories or edges");
    }

    write_json(dir / ("train_" + stage + "_report.json"), report);
    write_manifest(dir, "train-" + stage, cfg, inputs);
    return 0;
}

int cmd_clean_categories(const CliState& state) {
    const RunConfig& cfg = state.config;
    const fs::path dir = ensure_out_dir(cfg);
    const CategoryNetwork net = load_network(cfg);
    const LogRegModel model = load_model(cfg.require("category_model"));
    const CleanCategoriesResult result =
        clean_categories(net, model, cfg.get_double("category_threshold", 0.5), load_meta_terms(cfg));

    std::ostringstream pruned;
    serialize_network(result.pruned, pruned, NetworkFormat::tsv);
    write_text(dir / "pruned_network.tsv", pruned.str());

    json scores = json::object();
    for (const auto& [cat, p] : result.scores) scores[cat] = p;
    write_json(dir / "category_scores.json",
               json{{"kept", result.kept.size()},
                    {"removed", net.categories.size() - result.kept.size()},
                    {"scores", scores}});
    write_manifest(dir, "clean-categories", cfg,
                   {cfg.require("network"), cfg.require("category_model")});
    return 0;
}

int cmd_clean_edges(const CliState& state) {
    const RunConfig& cfg = state.config;
    const fs::path dir = ensure_out_dir(cfg);
    const CategoryNetwork net = load_network(cfg);
    const EdgeResources res = EdgeResources::load(cfg);

    CategoryNetwork working = net;
    if (cfg.has("category_model")) {
        const LogRegModel cat_model = load_model(cfg.require("category_model"));
        working = clean_categories(net, cat_model, cfg.get_double("category_threshold", 0.5),
                                   load_meta_terms(cfg))
                      .pruned;
    }
    const EdgeContext ctx = res.context(working);
    const LogRegModel model = load_model(cfg.require("edge_model"));
    const CleanEdgesResult result = clean_edges(ctx, model, cfg.get_double("edge_threshold", 0.5));

    json edges = json::array();
    for (const auto& [edge, score] : result.scores)
        edges.push_back(json{{"child", edge.first},
                             {"parent", edge.second},
                             {"score", score},
                             {"kept", result.kept.count(edge) > 0}});
    write_json(dir / "edge_scores.json",
               json{{"kept", result.kept.size()}, {"edges", edges}});
    write_manifest(dir, "clean-edges", cfg, {cfg.require("network"), cfg.require("edge_model")});
    return 0;
}

int cmd_build(const CliState& state) {
    const RunConfig& cfg = state.config;
    const fs::path dir = ensure_out_dir(cfg);
    const CategoryNetwork net = load_network(cfg);
    std::vector<std::string> inputs{cfg.require("network"), cfg.require("category_model"),
                                    cfg.require("edge_model")};

    // every resource loads before any stage runs
    const EdgeResources res = EdgeResources::load(cfg);
    for (const auto& p : res.input_paths) inputs.push_back(p);
    const LogRegModel cat_model = load_model(cfg.require("category_model"));
    const LogRegModel edge_model = load_model(cfg.require("edge_model"));
    std::set<std::string> blacklist;
    if (cfg.has("blacklist")) {
        std::ifstream in(cfg.require("blacklist"));
        if (!in) throw DataError("cannot open blacklist " + cfg.require("blacklist"));
        blacklist = load_blacklist(in);
        inputs.push_back(cfg.require("blacklist"));
    }
    Corrections corrections;
    if (cfg.has("corrections")) {
        std::ifstream in(cfg.require("corrections"));
        if (!in) throw DataError("cannot open corrections " + cfg.require("corrections"));
        corrections = load_corrections(in);
        inputs.push_back(cfg.require("corrections"));
    }

    json report;
    try {
        const CleanCategoriesResult stage1 = clean_categories(
            net, cat_model, cfg.get_double("category_threshold", 0.5), load_meta_terms(cfg));
        report["categories_kept"] = stage1.kept.size();
        report["categories_removed"] = net.categories.size() - stage1.kept.size();

        const EdgeContext ctx = res.context(stage1.pruned);
        const CleanEdgesResult stage2 =
            clean_edges(ctx, edge_model, cfg.get_double("edge_threshold", 0.5));
        report["edges_kept"] = stage2.kept.size();
        report["edges_removed"] = stage1.pruned.subcat_edges.size() - stage2.kept.size();

        AssembleResult assembled = assemble_taxonomy(stage1.pruned, stage2);
        json dropped = json::array();
        for (const auto& e : assembled.dropped_cycle_edges)
            dropped.push_back(json{{"child", e.first}, {"parent", e.second}});
        report["cycle_edges_dropped"] = dropped;

        Taxonomy result = assembled.taxonomy;
        if (res.wordnet) {
            result = build_top_level(assembled.taxonomy, *res.wordnet, ctx.synset_links,
                                     blacklist, corrections);
        }
        validate(result);

        size_t wn_classes = 0;
        for (const auto& [name, node] : result.classes)
            if (node.origin == ClassOrigin::wordnet_derived) ++wn_classes;
        report["taxonomy"] = {{"classes", result.classes.size()},
                              {"wordnet_classes", wn_classes},
                              {"entities", result.entities.size()},
                              {"subclass_edges", result.subclass_edges.size()},
                              {"instance_edges", result.instance_edges.size()}};

        std::ostringstream csv, js;
        serialize(result, csv, TaxonomyFormat::csv);
        serialize(result, js, TaxonomyFormat::json);
        write_text(dir / "taxonomy.csv", csv.str());
        write_text(dir / "taxonomy.json", js.str());
    } catch (const DataError& e) {
        throw DataError(std::string("build: ") + e.what());
    }

    write_json(dir / "build_report.json", report);
    write_manifest(dir, "build", cfg, inputs);
    return 0;
}

int cmd_eval(const CliState& state, const std::string& stage) {
    const RunConfig& cfg = state.config;
    const fs::path dir = ensure_out_dir(cfg);
    const CategoryNetwork net = load_network(cfg);
    std::vector<std::string> inputs{cfg.require("network")};

    json row;
    row["stage"] = stage;
    row["network"] = cfg.require("network");
    json columns = json::array({"precision", "recall", "f1"});

    if (stage == "categories") {
        const LogRegModel model = load_model(cfg.require("category_model"));
        std::ifstream lin(cfg.require("category_labels"));
        if (!lin) throw DataError("cannot open labels " + cfg.require("category_labels"));
        const std::vector<LabeledItem> labels = parse_category_labels(lin);
        validate_category_labels(net, labels);
        inputs.push_back(cfg.require("category_labels"));
        inputs.push_back(cfg.require("category_model"));

        const NetworkIndex idx(net);
        const Dataset data = category_dataset(idx, load_meta_terms(cfg), &labels);
        std::vector<int> preds, golds;
        for (const auto& r : data.rows) {
            preds.push_back(
                predict_proba(model, r.values) >= cfg.get_double("category_threshold", 0.5) ? 1
                                                                                            : 0);
            golds.push_back(*r.label);
        }
        const Prf m = precision_recall_f1(preds, golds);
        row["precision"] = m.precision;
        row["recall"] = m.recall;
        row["f1"] = m.f1;
    } else if (stage == "edges") {
        const LogRegModel model = load_model(cfg.require("edge_model"));
        const EdgeResources res = EdgeResources::load(cfg);
        inputs.push_back(cfg.require("edge_labels"));
        inputs.push_back(cfg.require("edge_model"));
        for (const auto& p : res.input_paths) inputs.push_back(p);
        if (cfg.has("category_model")) inputs.push_back(cfg.require("category_model"));

        const EdgeTrainingData data = edge_training_data(cfg, res, net, "edge_labels");
        std::vector<int> preds, golds;
        std::map<std::string, double> scores;
        for (const auto& r : data.dataset.rows) {
            const double p = predict_proba(model, r.values);
            scores[r.id] = p;
            preds.push_back(p >= cfg.get_double("edge_threshold", 0.5) ? 1 : 0);
            golds.push_back(*r.label);
        }
        const Prf m = precision_recall_f1(preds, golds);
        row["precision"] = m.precision;
        row["recall"] = m.recall;
        row["f1"] = m.f1;
        row["map"] = edges_map(scores, data.labels);
        row["skipped_labels"] = data.skipped;
        columns.push_back("map");
    } else {
        throw DataError("stage must be categories or edges");
    }

    const json report{{"columns", columns}, {"rows", json::array({row})}};
    std::cout << report.dump(2) << "\n";
    write_json(dir / ("eval_" + stage + "_report.json"), report);
    write_manifest(dir, "eval-" + stage, cfg, inputs);
    return 0;
}

int cmd_query(const CliState& state, const std::string& form,
              const std::vector<std::string>& types) {
    const RunConfig& cfg = state.config;
    const std::string path = cfg.require("taxonomy");
    std::ifstream in(path);
    if (!in) throw DataError("cannot open taxonomy " + path);
    const TaxonomyFormat format =
        path.size() > 5 && path.compare(path.size() - 5, 5, ".json") == 0 ? TaxonomyFormat::json
                                                                          : TaxonomyFormat::csv;
    const Taxonomy taxonomy = deserialize(in, format);

    QueryAnswer answer;
    json query;
    if (form == "single") {
        answer = query_single(taxonomy, types.at(0));
        query = json{{"form", "single"}, {"type", types.at(0)}};
    } else if (form == "and") {
        answer = query_intersection(taxonomy, types.at(0), types.at(1));
        query = json{{"form", "intersection"}, {"type1", types.at(0)}, {"type2", types.at(1)}};
    } else {
        answer = query_difference(taxonomy, types.at(0), types.at(1));
        query = json{{"form", "difference"}, {"type1", types.at(0)}, {"type2", types.at(1)}};
    }
    std::cout << json{{"query", query},
                      {"answers", answer.answers},
                      {"class_matches", answer.class_matches}}
                     .dump()
              << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"taxonomy induction toolkit"};
    app.require_subcommand(1);

    CliState state;
    app.add_option("--config", state.config_path, "key=value config file");
    app.add_option("--set", state.overrides, "override a config key (key=value)")->take_all();

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", state.config_path, "key=value config file");
        cmd->add_option("--set", state.overrides, "override a config key (key=value)")->take_all();
    };

    auto* stats = app.add_subcommand("stats", "summarize a category network");
    add_common(stats);

    std::string train_stage;
    bool ablation = false;
    auto* train_cmd = app.add_subcommand("train", "train a cleaning model with k-fold CV");
    add_common(train_cmd);
    train_cmd->add_option("--stage", train_stage, "categories | edges")->required();
    train_cmd->add_flag("--ablation", ablation, "append recursive feature elimination");

    auto* clean_cats = app.add_subcommand("clean-categories", "apply a category model");
    add_common(clean_cats);
    auto* clean_edges_cmd = app.add_subcommand("clean-edges", "apply an edge model");
    add_common(clean_edges_cmd);
    auto* build = app.add_subcommand("build", "run the full three-stage pipeline");
    add_common(build);

    std::string eval_stage;
    auto* eval_cmd = app.add_subcommand("eval", "evaluate a trained model on labeled data");
    add_common(eval_cmd);
    eval_cmd->add_option("--stage", eval_stage, "categories | edges")->required();

    std::string query_form;
    std::vector<std::string> query_types;
    auto* query_cmd = app.add_subcommand("query", "entity search over a built taxonomy");
    add_common(query_cmd);
    query_cmd->add_option("form", query_form, "single | and | diff")->required();
    query_cmd->add_option("types", query_types, "one or two class phrases")->expected(1, 2);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        state.finalize();
        if (*stats) return cmd_stats(state);
        if (*train_cmd) {
            if (train_stage != "categories" && train_stage != "edges") {
                std::cerr << "train --stage must be categories or edges\n";
                return 1;
            }
            return cmd_train(state, train_stage, ablation);
        }
        if (*clean_cats) return cmd_clean_categories(state);
        if (*clean_edges_cmd) return cmd_clean_edges(state);
        if (*build) return cmd_build(state);
        if (*eval_cmd) {
            if (eval_stage != "categories" && eval_stage != "edges") {
                std::cerr << "eval --stage must be categories or edges\n";
                return 1;
            }
            return cmd_eval(state, eval_stage);
        }
        if (*query_cmd) {
            if (query_form != "single" && query_form != "and" && query_form != "diff") {
                std::cerr << "query form must be single, and or diff\n";
                return 1;
            }
            if ((query_form == "single" && query_types.size() != 1) ||
                (query_form != "single" && query_types.size() != 2)) {
                std::cerr << "query " << query_form << " expects "
                          << (query_form == "single" ? 1 : 2) << " type argument(s)\n";
                return 1;
            }
            return cmd_query(state, query_form, query_types);
        }
    } catch (const DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}

#ifndef FSCMM_CLI_HPP
#define FSCMM_CLI_HPP

// Batch commands behind the `fscmm` tool: train, predict, evaluate,
// inspect-features, knn. Each command is an ordinary function over a
// RunConfig so the whole surface is testable without spawning a
// process. Diagnostics go to stderr gated by the FSCMM_LOG environment
// variable (off|info|debug); data goes to stdout or declared files.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "fscmm/corpus.hpp"
#include "fscmm/errors.hpp"
#include "fscmm/eval.hpp"
#include "fscmm/features.hpp"
#include "fscmm/fuzzy.hpp"
#include "fscmm/svm.hpp"
#include "fscmm/text_prep.hpp"

namespace fscmm {

enum class LogLevel { off = 0, info = 1, debug = 2 };

inline LogLevel log_level() {
    static LogLevel level = [] {
        const char* env = std::getenv("FSCMM_LOG");
        if (!env) return LogLevel::off;
        std::string v(env);
        if (v == "info") return LogLevel::info;
        if (v == "debug") return LogLevel::debug;
        return LogLevel::off;
    }();
    return level;
}

inline void log_info(const std::string& msg) {
    if (log_level() >= LogLevel::info) std::cerr << "[fscmm] " << msg << '\n';
}

inline void log_debug(const std::string& msg) {
    if (log_level() >= LogLevel::debug) std::cerr << "[fscmm:debug] " << msg << '\n';
}

struct RunConfig {
    std::filesystem::path corpus_path;
    std::filesystem::path input_path;
    std::filesystem::path stopwords_path;
    std::filesystem::path thesaurus_path;
    std::filesystem::path model_path;
    std::filesystem::path output_path;
    Count threshold = 2;
    FeatureMode feature_mode = FeatureMode::fuzzy;
    Hyperparams hyperparams;
    std::uint64_t seed = 0;
    int top_k = 20;
    int k = 1;
    bool json_output = false;
};

struct TrainArtifacts {
    OvrModel model;
    ReductionStats stats;
};

// Full training pipeline: prepare every document, build the corpus
// index, attach labels, compute the membership table, train one binary
// classifier per class, and collect reduction statistics.
inline TrainArtifacts run_training(const std::vector<Document>& docs, const StopWordList& stops,
                                   const PseudoThesaurus& thesaurus, Count threshold,
                                   FeatureMode mode, const Hyperparams& hp) {
    ClassSet classes = derive_class_set(docs);
    log_debug("derived " + std::to_string(classes.size()) + " classes");

    std::set<std::string> raw_terms;
    std::vector<DocumentFeatures> features;
    features.reserve(docs.size());
    for (const auto& doc : docs) {
        for (const auto& sentence : extract_sentences(doc.text))
            for (const auto& token : tokenize(sentence)) raw_terms.insert(token);

        std::vector<FeatureVector> rfvs;
        for (const auto& st : prepare_document(doc, stops, thesaurus))
            rfvs.push_back(build_sentence_rfv(st.tokens));
        features.push_back(integrate_document(rfvs, doc.id));
    }

    std::set<std::string> filtered_terms;
    for (const auto& df : features)
        for (const auto& [term, count] : df.irfv.counts) {
            (void)count;
            filtered_terms.insert(term);
        }

    CorpusIndex index = build_corpus_index(features, thesaurus, threshold);
    LabeledMatrix matrix = make_labeled_matrix(index, docs, classes);
    MembershipTable table = build_membership_table(matrix);

    TrainArtifacts artifacts;
    artifacts.stats.raw_distinct = static_cast<Count>(raw_terms.size());
    artifacts.stats.post_thesaurus = static_cast<Count>(filtered_terms.size());
    artifacts.stats.post_threshold = static_cast<Count>(matrix.index.feature_count());

    artifacts.model = train_ovr(matrix, table, mode, hp);
    artifacts.model.stops = stops;
    artifacts.model.thesaurus = thesaurus;
    artifacts.model.reduction = artifacts.stats;
    return artifacts;
}

// Trains from config paths, writes the model file, and prints the
// per-level feature counts. Returns the model path.
inline std::filesystem::path cmd_train(const RunConfig& config, std::ostream& out) {
    auto docs = load_corpus_auto(config.corpus_path);
    log_info("loaded " + std::to_string(docs.size()) + " documents from " +
             config.corpus_path.string());
    auto stops = load_stop_words(config.stopwords_path);
    auto thesaurus = load_thesaurus(config.thesaurus_path);

    auto artifacts = run_training(docs, stops, thesaurus, config.threshold, config.feature_mode,
                                  config.hyperparams);
    save_model(artifacts.model, config.model_path);
    log_info("model written to " + config.model_path.string());

    out << "documents: " << docs.size() << '\n';
    out << "classes: " << artifacts.model.class_set.size() << '\n';
    out << "features raw distinct: " << artifacts.stats.raw_distinct << '\n';
    out << "features after thesaurus: " << artifacts.stats.post_thesaurus << '\n';
    out << "features after threshold (TV=" << config.threshold
        << "): " << artifacts.stats.post_threshold << '\n';
    out << "reduction ratio: " << artifacts.stats.reduction_ratio() << '\n';
    out << "model: " << config.model_path.string() << '\n';
    return config.model_path;
}

// Writes one JSONL record {id, predicted, scores} per input document.
inline void cmd_predict(const RunConfig& config) {
    OvrModel model = load_model(config.model_path);
    auto docs = load_corpus_auto(config.input_path);
    log_info("predicting " + std::to_string(docs.size()) + " documents");

    std::ofstream out(config.output_path, std::ios::binary);
    if (!out) throw IoError("cannot write predictions file '" + config.output_path.string() + "'");
    for (const auto& doc : docs) {
        auto pred = predict(model, doc);
        nlohmann::json scores = nlohmann::json::object();
        for (std::size_t l = 0; l < model.class_set.size(); ++l)
            scores[model.class_set.name(l)] = pred.scores[l];
        out << nlohmann::json{{"id", doc.id}, {"predicted", pred.class_name}, {"scores", scores}}
                   .dump()
            << '\n';
    }
}

inline EvalReport cmd_evaluate(const RunConfig& config, std::ostream& out) {
    OvrModel model = load_model(config.model_path);
    auto docs = load_corpus_auto(config.input_path);
    log_info("evaluating " + std::to_string(docs.size()) + " documents");

    EvalReport report = evaluate_documents(model, docs);
    if (config.json_output)
        out << report_to_json(report, model.class_set).dump(2) << '\n';
    else
        print_report_table(out, report, model.class_set);
    return report;
}

// Lists the top_k features with corpus totals and per-class membership
// degrees, in index (frequency-descending) order.
inline void cmd_inspect_features(const RunConfig& config, std::ostream& out) {
    OvrModel model = load_model(config.model_path);
    auto k = static_cast<std::size_t>(std::max(config.top_k, 0));
    k = std::min(k, model.index.feature_count());

    if (config.json_output) {
        nlohmann::json listing = nlohmann::json::array();
        for (std::size_t i = 0; i < k; ++i)
            listing.push_back({{"feature", model.index.features[i]},
                               {"total_freq", model.index.total_freq[i]},
                               {"memberships", model.membership.patterns[i].memberships}});
        out << nlohmann::json{{"classes", model.class_set.classes}, {"features", listing}}.dump(2)
            << '\n';
        return;
    }

    std::size_t width = 12;
    for (std::size_t i = 0; i < k; ++i)
        width = std::max(width, model.index.features[i].size() + 2);
    out << std::setw(static_cast<int>(width)) << "feature" << std::setw(10) << "total";
    for (const auto& name : model.class_set.classes)
        out << std::setw(12) << ("mu(" + name + ")");
    out << '\n';
    for (std::size_t i = 0; i < k; ++i) {
        out << std::setw(static_cast<int>(width)) << model.index.features[i] << std::setw(10)
            << model.index.total_freq[i];
        for (double mu : model.membership.patterns[i].memberships)
            out << std::setw(12) << std::setprecision(4) << mu;
        out << '\n';
    }
}

// Nearest-neighbor baseline over raw counts: builds the labeled matrix
// from the training corpus, then classifies each input document.
// Predictions go to the output stream as JSONL; if every input document
// is labeled an accuracy summary is logged to stderr.
inline void cmd_knn(const RunConfig& config, std::ostream& out) {
    auto docs = load_corpus_auto(config.corpus_path);
    auto stops = load_stop_words(config.stopwords_path);
    auto thesaurus = load_thesaurus(config.thesaurus_path);
    ClassSet classes = derive_class_set(docs);

    std::vector<DocumentFeatures> features;
    features.reserve(docs.size());
    for (const auto& doc : docs) {
        std::vector<FeatureVector> rfvs;
        for (const auto& st : prepare_document(doc, stops, thesaurus))
            rfvs.push_back(build_sentence_rfv(st.tokens));
        features.push_back(integrate_document(rfvs, doc.id));
    }
    CorpusIndex index = build_corpus_index(features, thesaurus, config.threshold);
    LabeledMatrix matrix = make_labeled_matrix(index, docs, classes);

    auto queries = load_corpus_auto(config.input_path);
    long long correct = 0, labeled = 0;
    for (const auto& doc : queries) {
        auto row = featurize(doc, stops, thesaurus, index);
        std::string predicted = knn_baseline(matrix, config.k, row);
        out << nlohmann::json{{"id", doc.id}, {"predicted", predicted}}.dump() << '\n';
        if (doc.label) {
            ++labeled;
            if (*doc.label == predicted) ++correct;
        }
    }
    if (labeled > 0 && labeled == static_cast<long long>(queries.size()))
        std::cerr << "[fscmm] knn accuracy: "
                  << static_cast<double>(correct) / static_cast<double>(labeled) << " (" << correct
                  << "/" << labeled << ")\n";
}

} // namespace fscmm

#endif

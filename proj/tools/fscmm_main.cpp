// fscmm — batch text categorization: multi-level term-frequency feature
// reduction, fuzzy feature/class membership analysis, and one-vs-rest
// linear max-margin classification.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "fscmm/fscmm.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInputError = 2;
constexpr int kExitInternalError = 3;

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"fscmm - fuzzy similarity concept mining text categorizer"};
    app.require_subcommand(1);

    fscmm::RunConfig config;
    std::string feature_mode = "fuzzy";

    auto* train = app.add_subcommand("train", "Train a model from a labeled corpus");
    train->add_option("--corpus", config.corpus_path, "Labeled corpus (JSONL file or directory)")
        ->required();
    train->add_option("--stopwords", config.stopwords_path, "Stop-word file")->required();
    train->add_option("--thesaurus", config.thesaurus_path, "Thesaurus TSV file")->required();
    train->add_option("--threshold", config.threshold, "Minimum corpus frequency (TV)")
        ->check(CLI::NonNegativeNumber);
    train->add_option("--features", feature_mode, "Feature mode: raw or fuzzy")
        ->check(CLI::IsMember({"raw", "fuzzy"}));
    train->add_option("--c", config.hyperparams.c, "Soft-margin regularization C")
        ->check(CLI::PositiveNumber);
    train->add_option("--epochs", config.hyperparams.epochs, "Training epochs")
        ->check(CLI::PositiveNumber);
    train->add_option("--out", config.model_path, "Output model file")->required();

    auto* predict = app.add_subcommand("predict", "Classify documents with a trained model");
    predict->add_option("--model", config.model_path, "Model file")->required();
    predict->add_option("--in", config.input_path, "Input corpus")->required();
    predict->add_option("--out", config.output_path, "Output predictions JSONL")->required();

    auto* evaluate = app.add_subcommand("evaluate", "Score a model against a labeled corpus");
    evaluate->add_option("--model", config.model_path, "Model file")->required();
    evaluate->add_option("--in", config.input_path, "Labeled corpus")->required();
    evaluate->add_flag("--json", config.json_output, "Emit the report as JSON");

    auto* inspect = app.add_subcommand("inspect-features", "List top features with memberships");
    inspect->add_option("--model", config.model_path, "Model file")->required();
    inspect->add_option("--top", config.top_k, "Number of features to list")
        ->check(CLI::NonNegativeNumber);
    inspect->add_flag("--json", config.json_output, "Emit the listing as JSON");

    auto* knn = app.add_subcommand("knn", "K-nearest-neighbor baseline over raw counts");
    knn->add_option("--corpus", config.corpus_path, "Labeled corpus")->required();
    knn->add_option("--stopwords", config.stopwords_path, "Stop-word file")->required();
    knn->add_option("--thesaurus", config.thesaurus_path, "Thesaurus TSV file")->required();
    knn->add_option("--threshold", config.threshold, "Minimum corpus frequency (TV)")
        ->check(CLI::NonNegativeNumber);
    knn->add_option("--k", config.k, "Number of neighbors")->required()
        ->check(CLI::PositiveNumber);
    knn->add_option("--in", config.input_path, "Documents to classify")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInputError;
    }

    config.feature_mode = fscmm::feature_mode_from_string(feature_mode);

    try {
        if (train->parsed()) {
            fscmm::cmd_train(config, std::cout);
        } else if (predict->parsed()) {
            fscmm::cmd_predict(config);
        } else if (evaluate->parsed()) {
            fscmm::cmd_evaluate(config, std::cout);
        } else if (inspect->parsed()) {
            fscmm::cmd_inspect_features(config, std::cout);
        } else if (knn->parsed()) {
            fscmm::cmd_knn(config, std::cout);
        }
    } catch (const fscmm::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInputError;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kExitInternalError;
    }
    return kExitOk;
}

#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <sstream>

#include "fscmm/cli.hpp"
#include "fscmm/eval.hpp"
#include "test_util.hpp"

using namespace fscmm;

namespace {

std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string golden_corpus_jsonl() {
    std::string out;
    for (const auto& doc : testutil::golden_docs()) {
        nlohmann::json j{{"id", doc.id}, {"text", doc.text}, {"label", *doc.label}};
        out += j.dump();
        out += '\n';
    }
    return out;
}

// Scratch layout with the golden corpus and matching resources.
struct CliFixture {
    testutil::TempDir tmp;
    RunConfig config;

    CliFixture() {
        testutil::write_file(tmp.file("corpus.jsonl"), golden_corpus_jsonl());
        testutil::write_file(tmp.file("stops.txt"), "# none\n");
        testutil::write_file(tmp.file("th.tsv"), "alpha\nbeta\ngamma\n");
        config.corpus_path = tmp.file("corpus.jsonl");
        config.stopwords_path = tmp.file("stops.txt");
        config.thesaurus_path = tmp.file("th.tsv");
        config.model_path = tmp.file("model.json");
        config.threshold = 1;
    }
};

} // namespace

TEST_CASE("evaluate_documents counts accuracy and confusion") {
    auto g = testutil::golden_pipeline(1);
    auto table = build_membership_table(g.matrix);
    auto model = train_ovr(g.matrix, table, FeatureMode::fuzzy, Hyperparams{});
    model.thesaurus = testutil::golden_thesaurus();

    auto docs = testutil::golden_docs();
    auto report = evaluate_documents(model, docs);
    CHECK(report.total == 4);

    long long sum = 0, diag = 0;
    for (std::size_t i = 0; i < report.confusion.size(); ++i)
        for (std::size_t j = 0; j < report.confusion.size(); ++j) {
            sum += report.confusion[i][j];
            if (i == j) diag += report.confusion[i][j];
        }
    CHECK(sum == report.total);
    CHECK(report.accuracy == Catch::Approx(static_cast<double>(diag) / 4.0));
}

TEST_CASE("perfect predictions give a diagonal confusion matrix") {
    auto g = testutil::golden_pipeline(1);
    auto table = build_membership_table(g.matrix);
    auto model = train_ovr(g.matrix, table, FeatureMode::fuzzy, Hyperparams{});
    model.thesaurus = testutil::golden_thesaurus();

    auto report = evaluate_documents(model, testutil::golden_docs());
    if (report.accuracy == 1.0) {
        for (std::size_t i = 0; i < report.confusion.size(); ++i)
            for (std::size_t j = 0; j < report.confusion.size(); ++j)
                if (i != j) CHECK(report.confusion[i][j] == 0);
        for (const auto& pr : report.per_class) {
            CHECK(pr.precision == 1.0);
            CHECK(pr.recall == 1.0);
        }
    }
}

TEST_CASE("evaluate_documents rejects unusable labels") {
    auto g = testutil::golden_pipeline(1);
    auto table = build_membership_table(g.matrix);
    auto model = train_ovr(g.matrix, table, FeatureMode::fuzzy, Hyperparams{});
    model.thesaurus = testutil::golden_thesaurus();

    std::vector<Document> unlabeled{{"q", "alpha.", std::nullopt}};
    CHECK_THROWS_AS(evaluate_documents(model, unlabeled), MissingLabel);

    std::vector<Document> alien{{"q", "alpha.", std::string("Cx")}};
    CHECK_THROWS_AS(evaluate_documents(model, alien), UnknownClass);
}

TEST_CASE("knn matches its stated tie and majority rules") {
    auto g = testutil::golden_pipeline(1);

    // query equal to a training row, k=1
    CHECK(knn_baseline(g.matrix, 1, {4, 0, 0}) == "C3");
    CHECK(knn_baseline(g.matrix, 1, {1, 3, 0}) == "C2");

    // k = all rows: global majority is C2 (two documents)
    CHECK(knn_baseline(g.matrix, 4, {0, 0, 0}) == "C2");
}

TEST_CASE("knn validates its inputs") {
    auto g = testutil::golden_pipeline(1);
    CHECK_THROWS_AS(knn_baseline(g.matrix, 0, {0, 0, 0}), InvalidArgument);
    CHECK_THROWS_AS(knn_baseline(g.matrix, 5, {0, 0, 0}), InvalidArgument);
    CHECK_THROWS_AS(knn_baseline(g.matrix, 1, {0, 0}), DimensionMismatch);

    LabeledMatrix empty;
    CHECK_THROWS_AS(knn_baseline(empty, 1, {}), EmptyTrainingSet);
}

TEST_CASE("knn distance ties prefer the lower row index") {
    LabeledMatrix m;
    m.class_set.classes = {"A", "B"};
    m.index.features = {"f0"};
    m.index.total_freq = {4};
    m.index.doc_ids = {"r0", "r1"};
    m.index.matrix = {{2}, {2}};
    m.labels = {1, 0}; // equal distance; row 0 wins, so class B
    CHECK(knn_baseline(m, 1, {2}) == "B");

    // vote tie at k=2: both classes get one vote, lower class index wins
    CHECK(knn_baseline(m, 2, {2}) == "A");
}

TEST_CASE("report json mirrors the table contents") {
    EvalReport report;
    report.total = 4;
    report.accuracy = 0.75;
    report.confusion = {{2, 1}, {0, 1}};
    report.per_class = {{1.0, 2.0 / 3.0}, {0.5, 1.0}};
    report.reduction_ratio = 0.4;
    ClassSet classes;
    classes.classes = {"A", "B"};

    auto j = report_to_json(report, classes);
    CHECK(j["accuracy"] == 0.75);
    CHECK(j["documents"] == 4);
    CHECK(j["confusion"][0][1] == 1);
    CHECK(j["per_class"]["A"]["precision"] == 1.0);
    CHECK(j["reduction_ratio"] == 0.4);

    std::ostringstream table;
    print_report_table(table, report, classes);
    CHECK(table.str().find("accuracy: 0.75") != std::string::npos);
    CHECK(table.str().find("confusion matrix") != std::string::npos);
}

TEST_CASE("cmd_train writes a model and prints level counts") {
    CliFixture fx;
    std::ostringstream out;
    auto path = cmd_train(fx.config, out);
    CHECK(std::filesystem::exists(path));

    auto text = out.str();
    CHECK(text.find("features raw distinct: 3") != std::string::npos);
    CHECK(text.find("features after thesaurus: 3") != std::string::npos);
    CHECK(text.find("features after threshold (TV=1): 3") != std::string::npos);
    CHECK(text.find("reduction ratio:") != std::string::npos);

    auto model = load_model(path);
    CHECK(model.class_set.classes == std::vector<std::string>{"C1", "C2", "C3"});
    CHECK(model.index.features == std::vector<std::string>{"alpha", "beta", "gamma"});
    CHECK(model.reduction.raw_distinct == 3);
}

TEST_CASE("cmd_train surfaces single-class corpora as NotEnoughClasses") {
    CliFixture fx;
    std::string one_class;
    for (const auto& doc : testutil::golden_docs()) {
        nlohmann::json j{{"id", doc.id}, {"text", doc.text}, {"label", "C1"}};
        one_class += j.dump() + "\n";
    }
    testutil::write_file(fx.tmp.file("corpus.jsonl"), one_class);
    std::ostringstream out;
    CHECK_THROWS_AS(cmd_train(fx.config, out), NotEnoughClasses);
}

TEST_CASE("cmd_train fails cleanly on a missing thesaurus") {
    CliFixture fx;
    fx.config.thesaurus_path = fx.tmp.file("absent.tsv");
    std::ostringstream out;
    CHECK_THROWS_AS(cmd_train(fx.config, out), IoError);
}

TEST_CASE("cmd_predict writes one record per document") {
    CliFixture fx;
    std::ostringstream out;
    cmd_train(fx.config, out);

    fx.config.input_path = fx.config.corpus_path;
    fx.config.output_path = fx.tmp.file("pred.jsonl");
    cmd_predict(fx.config);

    std::istringstream lines(read_file(fx.config.output_path));
    std::string line;
    int count = 0, correct = 0;
    auto docs = testutil::golden_docs();
    while (std::getline(lines, line)) {
        auto j = nlohmann::json::parse(line);
        CHECK(j.contains("id"));
        CHECK(j.contains("predicted"));
        CHECK(j["scores"].size() == 3);
        if (j["predicted"] == *docs[count].label) ++correct;
        ++count;
    }
    CHECK(count == 4);

    // training-set replay agrees with cmd_evaluate's accuracy
    std::ostringstream eval_out;
    auto report = cmd_evaluate(fx.config, eval_out);
    CHECK(report.accuracy == Catch::Approx(static_cast<double>(correct) / 4.0));
}

TEST_CASE("cmd_predict on an empty corpus writes an empty file") {
    CliFixture fx;
    std::ostringstream out;
    cmd_train(fx.config, out);
    testutil::write_file(fx.tmp.file("empty.jsonl"), "");
    fx.config.input_path = fx.tmp.file("empty.jsonl");
    fx.config.output_path = fx.tmp.file("pred.jsonl");
    cmd_predict(fx.config);
    CHECK(read_file(fx.config.output_path).empty());
}

TEST_CASE("cmd_evaluate emits json when asked") {
    CliFixture fx;
    std::ostringstream out;
    cmd_train(fx.config, out);
    fx.config.input_path = fx.config.corpus_path;
    fx.config.json_output = true;
    std::ostringstream eval_out;
    auto report = cmd_evaluate(fx.config, eval_out);
    auto j = nlohmann::json::parse(eval_out.str());
    CHECK(j["accuracy"] == report.accuracy);
    CHECK(j["documents"] == 4);
}

TEST_CASE("cmd_inspect_features lists features in frequency order") {
    CliFixture fx;
    std::ostringstream out;
    cmd_train(fx.config, out);

    fx.config.top_k = 1;
    std::ostringstream listing;
    cmd_inspect_features(fx.config, listing);
    CHECK(listing.str().find("alpha") != std::string::npos);
    CHECK(listing.str().find("beta") == std::string::npos);

    fx.config.top_k = 0;
    std::ostringstream empty_listing;
    cmd_inspect_features(fx.config, empty_listing);
    CHECK(empty_listing.str().find("alpha") == std::string::npos);

    fx.config.top_k = 99; // clamps to the full listing
    std::ostringstream full;
    cmd_inspect_features(fx.config, full);
    CHECK(full.str().find("gamma") != std::string::npos);

    fx.config.top_k = 1;
    fx.config.json_output = true;
    std::ostringstream json_listing;
    cmd_inspect_features(fx.config, json_listing);
    auto j = nlohmann::json::parse(json_listing.str());
    REQUIRE(j["features"].size() == 1);
    CHECK(j["features"][0]["feature"] == "alpha");
    CHECK(j["features"][0]["total_freq"] == 6);
    REQUIRE(j["features"][0]["memberships"].size() == 3);
    CHECK(std::abs(j["features"][0]["memberships"][2].get<double>() - 4.0 / 6.0) < 1e-12);
}

TEST_CASE("cmd_knn classifies queries against the training matrix") {
    CliFixture fx;
    testutil::write_file(fx.tmp.file("query.jsonl"),
                         "{\"id\":\"q1\",\"text\":\"alpha alpha alpha alpha.\"}\n");
    fx.config.input_path = fx.tmp.file("query.jsonl");
    fx.config.k = 1;
    std::ostringstream out;
    cmd_knn(fx.config, out);
    auto j = nlohmann::json::parse(out.str());
    CHECK(j["id"] == "q1");
    CHECK(j["predicted"] == "C3");
}

TEST_CASE("cli exit codes follow the contract") {
    CliFixture fx;
    auto run = [](const std::string& args) {
        std::string cmd = std::string(FSCMM_CLI_PATH) + " " + args + " >/dev/null 2>&1";
        int status = std::system(cmd.c_str());
        return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    };
    auto train_args = "train --corpus " + fx.config.corpus_path.string() + " --stopwords " +
                      fx.config.stopwords_path.string() + " --thesaurus " +
                      fx.config.thesaurus_path.string() + " --threshold 1 --out " +
                      fx.config.model_path.string();
    CHECK(run(train_args) == 0);
    CHECK(run("--help") == 0);
    CHECK(run("train --corpus /no/such/file --stopwords " + fx.config.stopwords_path.string() +
              " --thesaurus " + fx.config.thesaurus_path.string() + " --out /tmp/x.json") == 2);
    CHECK(run("train") == 2);              // missing required options
    CHECK(run("no-such-subcommand") == 2); // unknown subcommand
    CHECK(run("evaluate --model " + fx.config.model_path.string() + " --in " +
              fx.config.corpus_path.string()) == 0);
}

TEST_CASE("run_training reduction statistics are consistent") {
    auto docs = testutil::golden_docs();
    auto stops = testutil::make_stops();
    auto thesaurus = testutil::golden_thesaurus();
    auto artifacts = run_training(docs, stops, thesaurus, 1, FeatureMode::fuzzy, Hyperparams{});
    CHECK(artifacts.stats.raw_distinct == 3);
    CHECK(artifacts.stats.post_thesaurus == 3);
    CHECK(artifacts.stats.post_threshold == 3);
    CHECK(artifacts.stats.reduction_ratio() == 0.0);

    // a tighter threshold shrinks the index, never the raw counts
    auto tighter = run_training(docs, stops, thesaurus, 3, FeatureMode::fuzzy, Hyperparams{});
    CHECK(tighter.stats.raw_distinct == 3);
    CHECK(tighter.stats.post_threshold == 2);
    CHECK(tighter.stats.reduction_ratio() >= artifacts.stats.reduction_ratio());
}

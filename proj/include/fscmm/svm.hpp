#ifndef FSCMM_SVM_HPP
#define FSCMM_SVM_HPP

// One-vs-rest linear maximum-margin classification with slack.
//
// Each binary model minimizes 0.5*||w||^2 + C * sum_i max(0, 1 - h_i*(w.x_i + b))
// by deterministic epoch-based subgradient descent: examples are swept
// in a fixed order, the step size at visit t is 1/(lambda*t) with
// lambda = 1/(C*n), and w starts at zero. The objective is convex
// piecewise-linear in the unregularized bias, so after every sweep the
// bias is set to its exact minimizer for the current weights, and the
// iterate with the lowest objective across epoch boundaries is
// returned. No source of randomness anywhere, so retraining on
// identical inputs is bit-identical.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <string>
#include <vector>

#include <json.hpp>

#include "fscmm/corpus.hpp"
#include "fscmm/errors.hpp"
#include "fscmm/features.hpp"
#include "fscmm/fuzzy.hpp"
#include "fscmm/text_prep.hpp"

namespace fscmm {

enum class FeatureMode { raw, fuzzy };

inline std::string to_string(FeatureMode mode) {
    return mode == FeatureMode::raw ? "raw" : "fuzzy";
}

inline FeatureMode feature_mode_from_string(const std::string& s) {
    if (s == "raw") return FeatureMode::raw;
    if (s == "fuzzy") return FeatureMode::fuzzy;
    throw InvalidArgument("unknown feature mode '" + s + "' (expected raw or fuzzy)");
}

struct Hyperparams {
    double c = 1.0;
    int epochs = 200;
    std::string step_schedule = "inv_t";

    void validate() const {
        if (!(c > 0.0)) throw InvalidArgument("regularization C must be positive");
        if (epochs < 1) throw InvalidArgument("epochs must be >= 1");
        if (step_schedule != "inv_t")
            throw InvalidArgument("unknown step schedule '" + step_schedule + "'");
    }
};

struct TrainingPattern {
    std::vector<double> x;
    int h = 0; // +1 or -1
};

struct LinearModel {
    std::vector<double> weights;
    double bias = 0.0;
    int class_idx = -1;

    double decision(const std::vector<double>& x) const {
        if (x.size() != weights.size())
            throw DimensionMismatch("input has " + std::to_string(x.size()) +
                                    " features, model expects " + std::to_string(weights.size()));
        double d = bias;
        for (std::size_t i = 0; i < weights.size(); ++i) d += weights[i] * x[i];
        return d;
    }
};

// Trained one-vs-rest bundle. Carries everything needed to featurize
// and score a new document, including copies of the text resources.
struct OvrModel {
    std::vector<LinearModel> binaries; // one per class, class-set order
    ClassSet class_set;
    CorpusIndex index;
    MembershipTable membership;
    FeatureMode feature_mode = FeatureMode::fuzzy;
    Hyperparams hyperparams;
    StopWordList stops;
    PseudoThesaurus thesaurus;
    ReductionStats reduction;
};

struct Prediction {
    std::string class_name;
    std::vector<double> scores; // decision value per class, class-set order
};

inline double hinge_objective(const std::vector<double>& w, double b,
                              const std::vector<TrainingPattern>& patterns, double c) {
    double obj = 0.0;
    for (double wi : w) obj += wi * wi;
    obj *= 0.5;
    for (const auto& p : patterns) {
        double margin = static_cast<double>(p.h) * (b + std::inner_product(
            w.begin(), w.end(), p.x.begin(), 0.0));
        obj += c * std::max(0.0, 1.0 - margin);
    }
    return obj;
}

namespace detail {

// Exact minimizer of b -> sum_i max(0, 1 - h_i*(s_i + b)) for fixed
// scores s_i = w.x_i. The sum is convex piecewise-linear in b, so the
// minimum sits on a breakpoint; ties resolve to the smallest b.
inline double optimal_bias(const std::vector<double>& scores,
                           const std::vector<TrainingPattern>& patterns) {
    std::vector<double> pos, neg, candidates;
    candidates.reserve(patterns.size());
    for (std::size_t i = 0; i < patterns.size(); ++i) {
        if (patterns[i].h == 1) {
            pos.push_back(1.0 - scores[i]); // hinge active while b < 1 - s_i
            candidates.push_back(1.0 - scores[i]);
        } else {
            neg.push_back(1.0 + scores[i]); // hinge active while b > -(1 + s_i)
            candidates.push_back(-(1.0 + scores[i]));
        }
    }
    std::sort(pos.begin(), pos.end());
    std::sort(neg.begin(), neg.end());
    std::vector<double> pos_suffix(pos.size() + 1, 0.0), neg_suffix(neg.size() + 1, 0.0);
    for (std::size_t i = pos.size(); i-- > 0;) pos_suffix[i] = pos_suffix[i + 1] + pos[i];
    for (std::size_t j = neg.size(); j-- > 0;) neg_suffix[j] = neg_suffix[j + 1] + neg[j];

    auto hinge_sum = [&](double b) {
        auto pi = static_cast<std::size_t>(std::upper_bound(pos.begin(), pos.end(), b) -
                                           pos.begin());
        double f = pos_suffix[pi] - b * static_cast<double>(pos.size() - pi);
        auto nj = static_cast<std::size_t>(std::upper_bound(neg.begin(), neg.end(), -b) -
                                           neg.begin());
        f += neg_suffix[nj] + b * static_cast<double>(neg.size() - nj);
        return f;
    };

    std::sort(candidates.begin(), candidates.end());
    double best_b = candidates.front();
    double best_f = hinge_sum(best_b);
    for (double b : candidates) {
        double f = hinge_sum(b);
        if (f < best_f) {
            best_f = f;
            best_b = b;
        }
    }
    return best_b;
}

} // namespace detail

inline LinearModel train_binary(const std::vector<TrainingPattern>& patterns,
                                const Hyperparams& hp, int class_idx = -1) {
    hp.validate();
    if (patterns.empty()) throw EmptyTrainingSet("no training patterns");
    const std::size_t dim = patterns.front().x.size();
    bool has_pos = false, has_neg = false;
    for (const auto& p : patterns) {
        if (p.x.size() != dim)
            throw DimensionMismatch("training patterns have inconsistent widths");
        if (p.h == 1) has_pos = true;
        else if (p.h == -1) has_neg = true;
        else throw InvalidArgument("training target must be +1 or -1");
    }
    if (!has_pos || !has_neg)
        throw DegenerateLabels("training set contains only one target value");

    const auto n = static_cast<double>(patterns.size());
    const double lambda = 1.0 / (hp.c * n);

    std::vector<double> w(dim, 0.0);
    double b = 0.0;
    std::vector<double> best_w = w;
    double best_b = 0.0;
    double best_obj = hinge_objective(w, b, patterns, hp.c); // w=0 upper bound
    std::vector<double> scores(patterns.size(), 0.0);

    std::size_t t = 0;
    for (int epoch = 0; epoch < hp.epochs; ++epoch) {
        for (const auto& p : patterns) {
            ++t;
            const double eta = 1.0 / (lambda * static_cast<double>(t));
            double margin = b;
            for (std::size_t i = 0; i < dim; ++i) margin += w[i] * p.x[i];
            margin *= p.h;

            const double shrink = 1.0 - eta * lambda; // = 1 - 1/t
            for (double& wi : w) wi *= shrink;
            if (margin < 1.0) {
                const double step = eta * p.h;
                for (std::size_t i = 0; i < dim; ++i) w[i] += step * p.x[i];
            }
        }

        for (std::size_t i = 0; i < patterns.size(); ++i)
            scores[i] = std::inner_product(w.begin(), w.end(), patterns[i].x.begin(), 0.0);
        b = detail::optimal_bias(scores, patterns);

        double obj = 0.0;
        for (double wi : w) obj += wi * wi;
        obj *= 0.5;
        for (std::size_t i = 0; i < patterns.size(); ++i)
            obj += hp.c * std::max(0.0, 1.0 - patterns[i].h * (scores[i] + b));
        if (obj < best_obj) {
            best_obj = obj;
            best_w = w;
            best_b = b;
        }
    }

    LinearModel model;
    model.weights = std::move(best_w);
    model.bias = best_b;
    model.class_idx = class_idx;
    return model;
}

namespace detail {

inline std::vector<double> raw_row(const std::vector<Count>& row) {
    std::vector<double> x(row.size());
    for (std::size_t i = 0; i < row.size(); ++i) x[i] = static_cast<double>(row[i]);
    return x;
}

inline std::vector<double> classifier_input(const std::vector<Count>& row,
                                            const MembershipTable& table, FeatureMode mode,
                                            std::size_t class_idx) {
    return mode == FeatureMode::fuzzy ? fuzzy_weighted_row(row, table, class_idx) : raw_row(row);
}

} // namespace detail

inline OvrModel train_ovr(const LabeledMatrix& matrix, const MembershipTable& membership,
                          FeatureMode feature_mode, const Hyperparams& hp) {
    hp.validate();
    if (matrix.class_set.size() < 2)
        throw NotEnoughClasses("one-vs-rest needs at least 2 classes, got " +
                               std::to_string(matrix.class_set.size()));
    if (membership.patterns.size() != matrix.index.feature_count())
        throw DimensionMismatch("membership table does not match the corpus index");

    OvrModel model;
    model.class_set = matrix.class_set;
    model.index = matrix.index;
    model.membership = membership;
    model.feature_mode = feature_mode;
    model.hyperparams = hp;

    for (std::size_t l = 0; l < matrix.class_set.size(); ++l) {
        std::vector<TrainingPattern> patterns;
        patterns.reserve(matrix.index.doc_count());
        for (std::size_t g = 0; g < matrix.index.doc_count(); ++g) {
            TrainingPattern p;
            p.x = detail::classifier_input(matrix.index.matrix[g], membership, feature_mode, l);
            p.h = matrix.labels[g] == static_cast<int>(l) ? 1 : -1;
            patterns.push_back(std::move(p));
        }
        model.binaries.push_back(train_binary(patterns, hp, static_cast<int>(l)));
    }
    return model;
}

// Scores a document against every class; argmax wins, ties go to the
// lowest class index. Out-of-vocabulary documents get the zero vector.
inline Prediction predict(const OvrModel& model, const Document& doc, const StopWordList& stops,
                          const PseudoThesaurus& thesaurus) {
    auto row = featurize(doc, stops, thesaurus, model.index);
    Prediction pred;
    pred.scores.reserve(model.binaries.size());
    for (std::size_t l = 0; l < model.binaries.size(); ++l) {
        auto x = detail::classifier_input(row, model.membership, model.feature_mode, l);
        pred.scores.push_back(model.binaries[l].decision(x));
    }
    auto best = std::max_element(pred.scores.begin(), pred.scores.end());
    pred.class_name = model.class_set.name(static_cast<std::size_t>(best - pred.scores.begin()));
    return pred;
}

inline Prediction predict(const OvrModel& model, const Document& doc) {
    return predict(model, doc, model.stops, model.thesaurus);
}

inline constexpr const char* kModelVersion = "fscmm-model/1";

inline void to_json(nlohmann::json& j, const LinearModel& m) {
    j = nlohmann::json{{"class_idx", m.class_idx}, {"weights", m.weights}, {"bias", m.bias}};
}

inline void from_json(const nlohmann::json& j, LinearModel& m) {
    j.at("class_idx").get_to(m.class_idx);
    j.at("weights").get_to(m.weights);
    j.at("bias").get_to(m.bias);
}

inline void to_json(nlohmann::json& j, const Hyperparams& hp) {
    j = nlohmann::json{{"c", hp.c}, {"epochs", hp.epochs}, {"step_schedule", hp.step_schedule}};
}

inline void from_json(const nlohmann::json& j, Hyperparams& hp) {
    j.at("c").get_to(hp.c);
    j.at("epochs").get_to(hp.epochs);
    j.at("step_schedule").get_to(hp.step_schedule);
}

inline nlohmann::json model_to_json(const OvrModel& model) {
    nlohmann::json thesaurus{
        {"vocabulary", std::vector<std::string>(model.thesaurus.vocabulary.begin(),
                                                model.thesaurus.vocabulary.end())},
        {"stem_map", model.thesaurus.stem_map}};
    return nlohmann::json{
        {"version", kModelVersion},
        {"class_set", model.class_set.classes},
        {"feature_mode", to_string(model.feature_mode)},
        {"hyperparams", model.hyperparams},
        {"index", model.index},
        {"membership", model.membership},
        {"binaries", model.binaries},
        {"stopwords", std::vector<std::string>(model.stops.words.begin(), model.stops.words.end())},
        {"thesaurus", thesaurus},
        {"reduction", model.reduction}};
}

inline OvrModel model_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("version") || j["version"] != kModelVersion)
        throw ParseError("not a " + std::string(kModelVersion) + " model file");
    OvrModel model;
    j.at("class_set").get_to(model.class_set.classes);
    model.feature_mode = feature_mode_from_string(j.at("feature_mode").get<std::string>());
    j.at("hyperparams").get_to(model.hyperparams);
    j.at("index").get_to(model.index);
    j.at("membership").get_to(model.membership);
    j.at("binaries").get_to(model.binaries);
    std::vector<std::string> stops;
    j.at("stopwords").get_to(stops);
    model.stops.words.insert(stops.begin(), stops.end());
    std::vector<std::string> vocab;
    j.at("thesaurus").at("vocabulary").get_to(vocab);
    model.thesaurus.vocabulary.insert(vocab.begin(), vocab.end());
    j.at("thesaurus").at("stem_map").get_to(model.thesaurus.stem_map);
    j.at("reduction").get_to(model.reduction);
    if (model.binaries.size() != model.class_set.size())
        throw ParseError("model binaries do not match the class set");
    for (const auto& bin : model.binaries)
        if (bin.weights.size() != model.index.feature_count())
            throw ParseError("model weights do not match the corpus index");
    return model;
}

inline void save_model(const OvrModel& model, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write model file '" + path.string() + "'");
    out << model_to_json(model).dump(2) << '\n';
}

inline OvrModel load_model(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open model file '" + path.string() + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("model file '" + path.string() + "': " + e.what());
    }
    return model_from_json(j);
}

} // namespace fscmm

#endif

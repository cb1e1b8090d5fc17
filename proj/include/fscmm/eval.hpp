#ifndef FSCMM_EVAL_HPP
#define FSCMM_EVAL_HPP

// Accuracy/confusion reporting and the k-nearest-neighbor baseline.

#include <algorithm>
#include <cstddef>
#include <iomanip>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "fscmm/corpus.hpp"
#include "fscmm/errors.hpp"
#include "fscmm/fuzzy.hpp"
#include "fscmm/svm.hpp"

namespace fscmm {

struct EvalReport {
    double accuracy = 0.0;
    std::vector<std::vector<long long>> confusion; // rows = true, cols = predicted
    struct ClassPR {
        double precision = 0.0;
        double recall = 0.0;
    };
    std::vector<ClassPR> per_class;
    double reduction_ratio = 0.0;
    long long total = 0;
};

inline EvalReport evaluate_documents(const OvrModel& model, const std::vector<Document>& docs,
                                     const StopWordList& stops, const PseudoThesaurus& thesaurus) {
    const std::size_t e = model.class_set.size();
    EvalReport report;
    report.confusion.assign(e, std::vector<long long>(e, 0));
    report.reduction_ratio = model.reduction.reduction_ratio();

    for (const auto& doc : docs) {
        if (!doc.label) throw MissingLabel("document '" + doc.id + "' has no label");
        int truth = model.class_set.index_of(*doc.label);
        if (truth < 0)
            throw UnknownClass("label '" + *doc.label + "' of document '" + doc.id +
                               "' is unknown to the model");
        auto pred = predict(model, doc, stops, thesaurus);
        int guess = model.class_set.index_of(pred.class_name);
        ++report.confusion[static_cast<std::size_t>(truth)][static_cast<std::size_t>(guess)];
        ++report.total;
    }

    long long diagonal = 0;
    for (std::size_t i = 0; i < e; ++i) diagonal += report.confusion[i][i];
    report.accuracy = report.total > 0 ? static_cast<double>(diagonal) /
                                             static_cast<double>(report.total)
                                       : 0.0;

    report.per_class.resize(e);
    for (std::size_t i = 0; i < e; ++i) {
        long long row = 0, col = 0;
        for (std::size_t k = 0; k < e; ++k) {
            row += report.confusion[i][k];
            col += report.confusion[k][i];
        }
        report.per_class[i].precision =
            col > 0 ? static_cast<double>(report.confusion[i][i]) / static_cast<double>(col) : 0.0;
        report.per_class[i].recall =
            row > 0 ? static_cast<double>(report.confusion[i][i]) / static_cast<double>(row) : 0.0;
    }
    return report;
}

inline EvalReport evaluate_documents(const OvrModel& model, const std::vector<Document>& docs) {
    return evaluate_documents(model, docs, model.stops, model.thesaurus);
}

// Majority class among the k nearest rows by Euclidean distance on raw
// counts. Distance ties prefer the lower row index, vote ties the lower
// class index.
inline std::string knn_baseline(const LabeledMatrix& matrix, int k,
                                const std::vector<Count>& query) {
    const std::size_t rows = matrix.index.doc_count();
    if (rows == 0) throw EmptyTrainingSet("knn requires a nonempty training matrix");
    if (k < 1 || static_cast<std::size_t>(k) > rows)
        throw InvalidArgument("k must lie in [1, " + std::to_string(rows) + "]");
    if (query.size() != matrix.index.feature_count())
        throw DimensionMismatch("query has " + std::to_string(query.size()) +
                                " entries, matrix has " +
                                std::to_string(matrix.index.feature_count()) + " features");

    struct Neighbor {
        long double dist2;
        std::size_t row;
    };
    std::vector<Neighbor> neighbors;
    neighbors.reserve(rows);
    for (std::size_t g = 0; g < rows; ++g) {
        long double d2 = 0.0L;
        for (std::size_t i = 0; i < query.size(); ++i) {
            auto diff = static_cast<long double>(matrix.index.matrix[g][i] - query[i]);
            d2 += diff * diff;
        }
        neighbors.push_back({d2, g});
    }
    std::sort(neighbors.begin(), neighbors.end(), [](const Neighbor& a, const Neighbor& b) {
        if (a.dist2 != b.dist2) return a.dist2 < b.dist2;
        return a.row < b.row;
    });

    std::vector<long long> votes(matrix.class_set.size(), 0);
    for (int i = 0; i < k; ++i) ++votes[static_cast<std::size_t>(matrix.labels[neighbors[i].row])];
    auto winner = std::max_element(votes.begin(), votes.end());
    return matrix.class_set.name(static_cast<std::size_t>(winner - votes.begin()));
}

inline nlohmann::json report_to_json(const EvalReport& report, const ClassSet& classes) {
    nlohmann::json per_class = nlohmann::json::object();
    for (std::size_t i = 0; i < classes.size(); ++i)
        per_class[classes.name(i)] = {{"precision", report.per_class[i].precision},
                                      {"recall", report.per_class[i].recall}};
    return nlohmann::json{{"accuracy", report.accuracy},
                          {"documents", report.total},
                          {"classes", classes.classes},
                          {"confusion", report.confusion},
                          {"per_class", per_class},
                          {"reduction_ratio", report.reduction_ratio}};
}

inline void print_report_table(std::ostream& out, const EvalReport& report,
                               const ClassSet& classes) {
    std::size_t width = 9;
    for (const auto& name : classes.classes) width = std::max(width, name.size() + 2);

    out << "documents evaluated: " << report.total << '\n';
    out << "accuracy: " << std::setprecision(6) << report.accuracy << '\n';
    out << "reduction ratio: " << std::setprecision(6) << report.reduction_ratio << '\n';
    out << '\n' << "confusion matrix (rows = true, cols = predicted):\n";
    out << std::setw(static_cast<int>(width)) << "";
    for (const auto& name : classes.classes) out << std::setw(static_cast<int>(width)) << name;
    out << '\n';
    for (std::size_t i = 0; i < classes.size(); ++i) {
        out << std::setw(static_cast<int>(width)) << classes.name(i);
        for (std::size_t j = 0; j < classes.size(); ++j)
            out << std::setw(static_cast<int>(width)) << report.confusion[i][j];
        out << '\n';
    }
    out << '\n' << "per-class precision/recall:\n";
    for (std::size_t i = 0; i < classes.size(); ++i) {
        out << std::setw(static_cast<int>(width)) << classes.name(i) << "  precision "
            << std::setw(8) << std::setprecision(4) << report.per_class[i].precision << "  recall "
            << std::setw(8) << std::setprecision(4) << report.per_class[i].recall << '\n';
    }
}

} // namespace fscmm

#endif

#ifndef FSCMM_FUZZY_HPP
#define FSCMM_FUZZY_HPP

// Per-feature fuzzy membership degrees over classes. The membership of
// feature f in class c is the fraction of f's corpus-wide occurrence
// mass located in documents labeled c, so each feature's degrees over
// all classes sum to 1.

#include <cstddef>
#include <string>
#include <vector>

#include <json.hpp>

#include "fscmm/corpus.hpp"
#include "fscmm/errors.hpp"
#include "fscmm/features.hpp"

namespace fscmm {

// Count matrix plus one class label per row.
struct LabeledMatrix {
    CorpusIndex index;
    std::vector<int> labels; // labels[g] = class index of row g
    ClassSet class_set;
};

struct FeaturePattern {
    std::string feature;
    std::vector<double> memberships; // one degree per class, class-set order
};

struct MembershipTable {
    std::vector<FeaturePattern> patterns; // one per index feature, index order

    std::size_t feature_count() const { return patterns.size(); }
    std::size_t class_count() const {
        return patterns.empty() ? 0 : patterns.front().memberships.size();
    }
};

// Attaches labels to an index's rows. Documents are matched by id and
// every row must correspond to a labeled document of a known class.
inline LabeledMatrix make_labeled_matrix(CorpusIndex index, const std::vector<Document>& docs,
                                         ClassSet class_set) {
    LabeledMatrix lm;
    lm.labels.reserve(index.doc_ids.size());
    for (const auto& doc_id : index.doc_ids) {
        auto it = std::find_if(docs.begin(), docs.end(),
                               [&](const Document& d) { return d.id == doc_id; });
        if (it == docs.end())
            throw InvalidArgument("no document with id '" + doc_id + "' for labeled matrix");
        if (!it->label) throw MissingLabel("document '" + doc_id + "' has no label");
        int cls = class_set.index_of(*it->label);
        if (cls < 0)
            throw UnknownClass("label '" + *it->label + "' of document '" + doc_id +
                               "' is not in the class set");
        lm.labels.push_back(cls);
    }
    lm.index = std::move(index);
    lm.class_set = std::move(class_set);
    return lm;
}

// Membership degree: sum of the feature's counts in documents of the
// class divided by its counts over all documents. Integer sums with a
// single final division keep small cases exact.
inline double membership(const LabeledMatrix& matrix, std::size_t feature_idx,
                         std::size_t class_idx) {
    if (feature_idx >= matrix.index.feature_count())
        throw InvalidArgument("feature index out of range");
    if (class_idx >= matrix.class_set.size())
        throw InvalidArgument("class index out of range");
    if (matrix.labels.size() != matrix.index.doc_count())
        throw DimensionMismatch("label count does not match matrix rows");

    Count in_class = 0;
    Count total = 0;
    for (std::size_t g = 0; g < matrix.index.matrix.size(); ++g) {
        Count c = matrix.index.matrix[g][feature_idx];
        total += c;
        if (matrix.labels[g] == static_cast<int>(class_idx)) in_class += c;
    }
    if (total == 0)
        throw ZeroFrequencyFeature("feature '" + matrix.index.features[feature_idx] +
                                   "' never occurs in the corpus");
    return static_cast<double>(in_class) / static_cast<double>(total);
}

inline MembershipTable build_membership_table(const LabeledMatrix& matrix) {
    MembershipTable table;
    table.patterns.reserve(matrix.index.feature_count());
    for (std::size_t i = 0; i < matrix.index.feature_count(); ++i) {
        FeaturePattern fp;
        fp.feature = matrix.index.features[i];
        fp.memberships.reserve(matrix.class_set.size());
        for (std::size_t j = 0; j < matrix.class_set.size(); ++j)
            fp.memberships.push_back(membership(matrix, i, j));
        table.patterns.push_back(std::move(fp));
    }
    return table;
}

// Componentwise product of a count row with one class's membership
// column; the bridge from membership analysis to per-class classifiers.
inline std::vector<double> fuzzy_weighted_row(const std::vector<Count>& row,
                                              const MembershipTable& table,
                                              std::size_t class_idx) {
    if (row.size() != table.patterns.size())
        throw DimensionMismatch("row has " + std::to_string(row.size()) + " entries, table has " +
                                std::to_string(table.patterns.size()));
    std::vector<double> weighted(row.size(), 0.0);
    for (std::size_t i = 0; i < row.size(); ++i) {
        const auto& degrees = table.patterns[i].memberships;
        if (class_idx >= degrees.size()) throw InvalidArgument("class index out of range");
        weighted[i] = static_cast<double>(row[i]) * degrees[class_idx];
    }
    return weighted;
}

inline void to_json(nlohmann::json& j, const MembershipTable& table) {
    j = nlohmann::json::array();
    for (const auto& fp : table.patterns)
        j.push_back({{"feature", fp.feature}, {"memberships", fp.memberships}});
}

inline void from_json(const nlohmann::json& j, MembershipTable& table) {
    table.patterns.clear();
    for (const auto& item : j) {
        FeaturePattern fp;
        item.at("feature").get_to(fp.feature);
        item.at("memberships").get_to(fp.memberships);
        table.patterns.push_back(std::move(fp));
    }
}

} // namespace fscmm

#endif

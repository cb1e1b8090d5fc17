#ifndef FSCMM_FEATURES_HPP
#define FSCMM_FEATURES_HPP

// Three-level feature construction and reduction: per-sentence term
// counts, document-level integration, and the corpus index with its
// frequency-threshold cutoff and document/feature count matrix.

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "fscmm/errors.hpp"
#include "fscmm/text_prep.hpp"

namespace fscmm {

using Count = std::int64_t;

// One entry per distinct feature term; counts are always >= 1.
struct FeatureVector {
    std::map<std::string, Count> counts;

    Count count_of(const std::string& term) const {
        auto it = counts.find(term);
        return it == counts.end() ? 0 : it->second;
    }

    bool operator==(const FeatureVector&) const = default;
};

struct DocumentFeatures {
    std::string doc_id;
    FeatureVector irfv;
};

// Corpus vocabulary after thesaurus filtering and threshold cutoff.
// Features are ordered by total frequency descending, ties broken
// lexicographically ascending. Matrix rows follow sorted document ids;
// a zero entry means the feature is absent from that document.
struct CorpusIndex {
    std::vector<std::string> features;
    std::vector<Count> total_freq;
    Count threshold = 0;
    std::vector<std::string> doc_ids;
    std::vector<std::vector<Count>> matrix;

    std::size_t feature_count() const { return features.size(); }
    std::size_t doc_count() const { return doc_ids.size(); }
};

// Feature-reduction statistics across the pipeline levels.
struct ReductionStats {
    Count raw_distinct = 0;    // distinct tokens before any filtering
    Count post_thesaurus = 0;  // distinct stems surviving stop/thesaurus filters
    Count post_threshold = 0;  // features kept in the corpus index

    double reduction_ratio() const {
        if (raw_distinct <= 0) return 0.0;
        return 1.0 - static_cast<double>(post_threshold) / static_cast<double>(raw_distinct);
    }
};

inline FeatureVector build_sentence_rfv(const std::vector<std::string>& tokens) {
    FeatureVector fv;
    for (const auto& token : tokens) ++fv.counts[token];
    return fv;
}

inline DocumentFeatures integrate_document(const std::vector<FeatureVector>& rfvs,
                                           std::string doc_id) {
    DocumentFeatures df;
    df.doc_id = std::move(doc_id);
    for (const auto& rfv : rfvs)
        for (const auto& [term, count] : rfv.counts) df.irfv.counts[term] += count;
    return df;
}

inline CorpusIndex build_corpus_index(const std::vector<DocumentFeatures>& docs,
                                      const PseudoThesaurus& thesaurus, Count threshold) {
    if (threshold < 0) throw InvalidArgument("threshold must be nonnegative");

    std::vector<const DocumentFeatures*> ordered;
    ordered.reserve(docs.size());
    for (const auto& doc : docs) ordered.push_back(&doc);
    std::sort(ordered.begin(), ordered.end(),
              [](const DocumentFeatures* a, const DocumentFeatures* b) {
                  return a->doc_id < b->doc_id;
              });
    for (std::size_t i = 1; i < ordered.size(); ++i) {
        if (ordered[i]->doc_id == ordered[i - 1]->doc_id)
            throw DuplicateId("duplicate document id '" + ordered[i]->doc_id + "'");
    }

    // Corpus totals first, cutoff after.
    std::map<std::string, Count> totals;
    for (const auto* doc : ordered)
        for (const auto& [term, count] : doc->irfv.counts) totals[term] += count;

    struct Entry {
        std::string term;
        Count total;
    };
    std::vector<Entry> kept;
    for (const auto& [term, total] : totals) {
        if (!thesaurus.valid_stem(term) && !is_numeral(term)) continue;
        if (total < threshold) continue;
        kept.push_back({term, total});
    }
    std::sort(kept.begin(), kept.end(), [](const Entry& a, const Entry& b) {
        if (a.total != b.total) return a.total > b.total;
        return a.term < b.term;
    });

    CorpusIndex index;
    index.threshold = threshold;
    index.features.reserve(kept.size());
    index.total_freq.reserve(kept.size());
    for (auto& entry : kept) {
        index.features.push_back(std::move(entry.term));
        index.total_freq.push_back(entry.total);
    }

    index.doc_ids.reserve(ordered.size());
    index.matrix.reserve(ordered.size());
    for (const auto* doc : ordered) {
        index.doc_ids.push_back(doc->doc_id);
        std::vector<Count> row(index.features.size(), 0);
        for (std::size_t i = 0; i < index.features.size(); ++i)
            row[i] = doc->irfv.count_of(index.features[i]);
        index.matrix.push_back(std::move(row));
    }
    return index;
}

// Count vector of a document over the index vocabulary; terms outside
// the index are ignored.
inline std::vector<Count> featurize(const Document& doc, const StopWordList& stops,
                                    const PseudoThesaurus& thesaurus, const CorpusIndex& index) {
    std::map<std::string, std::size_t> position;
    for (std::size_t i = 0; i < index.features.size(); ++i) position[index.features[i]] = i;

    std::vector<Count> row(index.features.size(), 0);
    for (const auto& sentence : prepare_document(doc, stops, thesaurus)) {
        for (const auto& token : sentence.tokens) {
            auto it = position.find(token);
            if (it != position.end()) ++row[it->second];
        }
    }
    return row;
}

inline void to_json(nlohmann::json& j, const CorpusIndex& index) {
    j = nlohmann::json{{"features", index.features},
                       {"total_freq", index.total_freq},
                       {"threshold", index.threshold},
                       {"doc_ids", index.doc_ids},
                       {"matrix", index.matrix}};
}

inline void from_json(const nlohmann::json& j, CorpusIndex& index) {
    j.at("features").get_to(index.features);
    j.at("total_freq").get_to(index.total_freq);
    j.at("threshold").get_to(index.threshold);
    j.at("doc_ids").get_to(index.doc_ids);
    j.at("matrix").get_to(index.matrix);
    if (index.total_freq.size() != index.features.size() ||
        index.matrix.size() != index.doc_ids.size())
        throw ParseError("corpus index fields have inconsistent sizes");
    for (const auto& row : index.matrix)
        if (row.size() != index.features.size())
            throw ParseError("corpus index matrix row width mismatch");
}

inline void to_json(nlohmann::json& j, const ReductionStats& stats) {
    j = nlohmann::json{{"raw_distinct", stats.raw_distinct},
                       {"post_thesaurus", stats.post_thesaurus},
                       {"post_threshold", stats.post_threshold}};
}

inline void from_json(const nlohmann::json& j, ReductionStats& stats) {
    j.at("raw_distinct").get_to(stats.raw_distinct);
    j.at("post_thesaurus").get_to(stats.post_thesaurus);
    j.at("post_threshold").get_to(stats.post_threshold);
}

} // namespace fscmm

#endif

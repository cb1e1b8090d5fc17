#ifndef FSCMM_CORPUS_HPP
#define FSCMM_CORPUS_HPP

// Labeled document collections: loading, validation, splitting.
//
// Two on-disk corpus formats are supported:
//   - JSON Lines: one object per line, keys exactly `id`, `text`,
//     optional `label`.
//   - Directory of .txt files plus an optional labels.csv
//     (header `id,label`); the document id is the file stem.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "fscmm/errors.hpp"

namespace fscmm {

struct Document {
    std::string id;
    std::string text;
    std::optional<std::string> label;

    bool operator==(const Document&) const = default;
};

// Ordered set of class names, sorted lexicographically at construction.
struct ClassSet {
    std::vector<std::string> classes;

    std::size_t size() const { return classes.size(); }
    const std::string& name(std::size_t idx) const { return classes.at(idx); }

    // Index of a class name, or -1 when unknown.
    int index_of(const std::string& name) const {
        auto it = std::lower_bound(classes.begin(), classes.end(), name);
        if (it == classes.end() || *it != name) return -1;
        return static_cast<int>(it - classes.begin());
    }

    bool operator==(const ClassSet&) const = default;
};

struct CorpusSplit {
    std::vector<Document> train;
    std::vector<Document> test;
};

enum class CorpusFormat { jsonl, dir_csv };

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

inline void sort_and_check_ids(std::vector<Document>& docs) {
    std::sort(docs.begin(), docs.end(),
              [](const Document& a, const Document& b) { return a.id < b.id; });
    for (std::size_t i = 1; i < docs.size(); ++i) {
        if (docs[i].id == docs[i - 1].id)
            throw DuplicateId("duplicate document id '" + docs[i].id + "'");
    }
}

inline Document parse_jsonl_record(const std::string& line, std::size_t line_no) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
    }
    if (!j.is_object())
        throw ParseError("line " + std::to_string(line_no) + ": record is not an object");
    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (key != "id" && key != "text" && key != "label")
            throw ParseError("line " + std::to_string(line_no) + ": unexpected key '" + key + "'");
    }
    if (!j.contains("id") || !j["id"].is_string() || j["id"].get<std::string>().empty())
        throw ParseError("line " + std::to_string(line_no) + ": missing or empty 'id'");
    if (!j.contains("text") || !j["text"].is_string())
        throw ParseError("line " + std::to_string(line_no) + ": missing 'text' string");

    Document doc;
    doc.id = j["id"].get<std::string>();
    doc.text = j["text"].get<std::string>();
    if (j.contains("label") && !j["label"].is_null()) {
        const auto& lab = j["label"];
        if (lab.is_string()) {
            doc.label = lab.get<std::string>();
        } else if (lab.is_array()) {
            if (lab.size() > 1)
                throw MultiLabelUnsupported("line " + std::to_string(line_no) +
                                            ": document '" + doc.id + "' carries " +
                                            std::to_string(lab.size()) + " labels");
            if (lab.size() == 1 && lab[0].is_string())
                doc.label = lab[0].get<std::string>();
            else if (!lab.empty())
                throw ParseError("line " + std::to_string(line_no) + ": label array must hold a string");
        } else {
            throw ParseError("line " + std::to_string(line_no) + ": 'label' must be a string");
        }
        if (doc.label && doc.label->empty())
            throw ParseError("line " + std::to_string(line_no) + ": empty label");
    }
    return doc;
}

inline std::vector<Document> load_jsonl(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open corpus file '" + path.string() + "'");
    std::vector<Document> docs;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        docs.push_back(parse_jsonl_record(line, line_no));
    }
    sort_and_check_ids(docs);
    return docs;
}

inline std::string read_whole_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open file '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline std::map<std::string, std::string> load_labels_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open labels file '" + path.string() + "'");
    std::map<std::string, std::string> labels;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line_no == 1) {
            if (line != "id,label")
                throw ParseError(path.string() + " line 1: expected header 'id,label'");
            continue;
        }
        if (trim(line).empty()) continue;
        std::size_t comma = line.find(',');
        if (comma == std::string::npos)
            throw ParseError(path.string() + " line " + std::to_string(line_no) + ": expected 'id,label'");
        std::string id = trim(line.substr(0, comma));
        std::string label = trim(line.substr(comma + 1));
        if (id.empty() || label.empty())
            throw ParseError(path.string() + " line " + std::to_string(line_no) + ": empty id or label");
        auto it = labels.find(id);
        if (it != labels.end()) {
            if (it->second != label)
                throw MultiLabelUnsupported("document '" + id + "' labeled both '" +
                                            it->second + "' and '" + label + "'");
            throw DuplicateId("id '" + id + "' listed twice in " + path.string());
        }
        labels.emplace(std::move(id), std::move(label));
    }
    return labels;
}

inline std::vector<Document> load_dir_csv(const std::filesystem::path& dir) {
    if (!std::filesystem::is_directory(dir))
        throw IoError("'" + dir.string() + "' is not a directory");

    std::vector<Document> docs;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (!entry.is_regular_file() || entry.path().extension() != ".txt") continue;
        Document doc;
        doc.id = entry.path().stem().string();
        doc.text = read_whole_file(entry.path());
        docs.push_back(std::move(doc));
    }
    sort_and_check_ids(docs);

    auto csv = dir / "labels.csv";
    if (std::filesystem::exists(csv)) {
        auto labels = load_labels_csv(csv);
        std::set<std::string> known;
        for (auto& doc : docs) {
            known.insert(doc.id);
            auto it = labels.find(doc.id);
            if (it != labels.end()) doc.label = it->second;
        }
        for (const auto& [id, label] : labels) {
            (void)label;
            if (!known.count(id))
                throw ParseError(csv.string() + ": label for unknown document '" + id + "'");
        }
    }
    return docs;
}

} // namespace detail

inline std::vector<Document> load_corpus(const std::filesystem::path& path, CorpusFormat format) {
    switch (format) {
        case CorpusFormat::jsonl: return detail::load_jsonl(path);
        case CorpusFormat::dir_csv: return detail::load_dir_csv(path);
    }
    throw InvalidArgument("unknown corpus format");
}

// Picks dir+csv for directories, JSON Lines otherwise.
inline std::vector<Document> load_corpus_auto(const std::filesystem::path& path) {
    return load_corpus(path, std::filesystem::is_directory(path) ? CorpusFormat::dir_csv
                                                                 : CorpusFormat::jsonl);
}

inline void save_corpus_jsonl(const std::vector<Document>& docs, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write corpus file '" + path.string() + "'");
    for (const auto& doc : docs) {
        nlohmann::json j{{"id", doc.id}, {"text", doc.text}};
        if (doc.label) j["label"] = *doc.label;
        out << j.dump() << '\n';
    }
}

inline ClassSet derive_class_set(const std::vector<Document>& docs) {
    std::set<std::string> names;
    for (const auto& doc : docs) {
        if (!doc.label)
            throw MissingLabel("document '" + doc.id + "' has no label");
        names.insert(*doc.label);
    }
    ClassSet cs;
    cs.classes.assign(names.begin(), names.end());
    return cs;
}

// Deterministic partition: |test| = floor(test_fraction * |docs|), same
// output for the same seed regardless of input order.
inline CorpusSplit split_corpus(const std::vector<Document>& docs, double test_fraction,
                                std::uint64_t seed) {
    if (!(test_fraction >= 0.0 && test_fraction < 1.0))
        throw InvalidFraction("test_fraction must lie in [0,1), got " + std::to_string(test_fraction));
    if (docs.empty()) throw InvalidArgument("cannot split an empty corpus");

    std::vector<std::size_t> order(docs.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return docs[a].id < docs[b].id; });

    // Explicit Fisher-Yates; std::shuffle's draw sequence is not pinned
    // by the standard.
    std::mt19937_64 gen(seed);
    for (std::size_t i = order.size() - 1; i > 0; --i) {
        std::size_t j = static_cast<std::size_t>(gen() % (i + 1));
        std::swap(order[i], order[j]);
    }

    auto n_test = static_cast<std::size_t>(
        std::floor(test_fraction * static_cast<double>(docs.size()) + 1e-9));
    CorpusSplit split;
    for (std::size_t i = 0; i < order.size(); ++i) {
        (i < n_test ? split.test : split.train).push_back(docs[order[i]]);
    }
    auto by_id = [](const Document& a, const Document& b) { return a.id < b.id; };
    std::sort(split.train.begin(), split.train.end(), by_id);
    std::sort(split.test.begin(), split.test.end(), by_id);
    return split;
}

} // namespace fscmm

#endif

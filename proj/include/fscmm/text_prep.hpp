#ifndef FSCMM_TEXT_PREP_HPP
#define FSCMM_TEXT_PREP_HPP

// Raw text -> filtered, stemmed token sequences per sentence.
//
// Resources:
//   - stop-word file: UTF-8, one lowercase word per line, `#` comments.
//   - thesaurus file: UTF-8 TSV; `variant<TAB>stem` lines define the
//     stemming map, single-field lines declare vocabulary stems. Stems
//     referenced by a variant line are added to the vocabulary.

#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "fscmm/corpus.hpp"
#include "fscmm/errors.hpp"

namespace fscmm {

struct SentenceTokens {
    int sentence_index = 0; // 1-based
    std::vector<std::string> tokens;

    bool operator==(const SentenceTokens&) const = default;
};

struct StopWordList {
    std::set<std::string> words;

    bool contains(const std::string& w) const { return words.count(w) != 0; }
};

struct PseudoThesaurus {
    std::set<std::string> vocabulary;
    std::map<std::string, std::string> stem_map; // variant -> stem

    bool valid_stem(const std::string& w) const { return vocabulary.count(w) != 0; }

    const std::string* stem_of(const std::string& w) const {
        auto it = stem_map.find(w);
        return it == stem_map.end() ? nullptr : &it->second;
    }
};

namespace detail {

inline bool is_space(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

inline char ascii_lower(char c) {
    return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

inline std::string to_lower(std::string s) {
    for (char& c : s) c = ascii_lower(c);
    return s;
}

} // namespace detail

inline bool is_numeral(std::string_view token) {
    if (token.empty()) return false;
    for (char c : token)
        if (c < '0' || c > '9') return false;
    return true;
}

inline StopWordList load_stop_words(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open stop-word file '" + path.string() + "'");
    StopWordList stops;
    std::string line;
    while (std::getline(in, line)) {
        std::string word = detail::trim(line);
        if (word.empty() || word[0] == '#') continue;
        stops.words.insert(detail::to_lower(word));
    }
    return stops;
}

inline PseudoThesaurus load_thesaurus(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open thesaurus file '" + path.string() + "'");
    PseudoThesaurus th;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (detail::trim(line).empty()) continue;
        std::size_t tab = line.find('\t');
        if (tab == std::string::npos) {
            th.vocabulary.insert(detail::to_lower(detail::trim(line)));
            continue;
        }
        if (line.find('\t', tab + 1) != std::string::npos)
            throw ParseError(path.string() + " line " + std::to_string(line_no) +
                             ": more than two fields");
        std::string variant = detail::to_lower(detail::trim(line.substr(0, tab)));
        std::string stem = detail::to_lower(detail::trim(line.substr(tab + 1)));
        if (variant.empty() || stem.empty())
            throw ParseError(path.string() + " line " + std::to_string(line_no) +
                             ": empty variant or stem");
        auto it = th.stem_map.find(variant);
        if (it != th.stem_map.end() && it->second != stem)
            throw ParseError(path.string() + " line " + std::to_string(line_no) + ": variant '" +
                             variant + "' mapped to both '" + it->second + "' and '" + stem + "'");
        th.stem_map[variant] = stem;
        th.vocabulary.insert(stem);
    }
    // A stem must be a fixed point; chained mappings would make stemming
    // non-idempotent.
    for (const auto& [variant, stem] : th.stem_map) {
        (void)variant;
        auto it = th.stem_map.find(stem);
        if (it != th.stem_map.end() && it->second != stem)
            throw ParseError(path.string() + ": stem '" + stem + "' is itself mapped to '" +
                             it->second + "'");
    }
    return th;
}

// Sentence boundaries are `.`/`?`/`!` followed by whitespace or end of
// input. The terminator stays with its sentence; boundary whitespace is
// dropped. A trailing fragment without a terminator is still a sentence.
inline std::vector<std::string> extract_sentences(std::string_view text) {
    std::vector<std::string> sentences;
    std::size_t i = 0;
    const std::size_t n = text.size();
    while (i < n) {
        while (i < n && detail::is_space(text[i])) ++i;
        if (i >= n) break;
        std::size_t end = n;
        for (std::size_t j = i; j < n; ++j) {
            char c = text[j];
            if ((c == '.' || c == '?' || c == '!') && (j + 1 >= n || detail::is_space(text[j + 1]))) {
                end = j + 1;
                break;
            }
        }
        std::size_t e = end;
        while (e > i && detail::is_space(text[e - 1])) --e;
        sentences.emplace_back(text.substr(i, e - i));
        i = end;
    }
    return sentences;
}

// Tokens are maximal runs of alphanumeric characters, ASCII-folded to
// lowercase. Bytes >= 0x80 (UTF-8 continuations and multibyte starts)
// count as word characters and pass through unchanged.
inline std::vector<std::string> tokenize(std::string_view sentence) {
    std::vector<std::string> tokens;
    std::string current;
    for (char ch : sentence) {
        auto uc = static_cast<unsigned char>(ch);
        bool word_char = (uc >= 'a' && uc <= 'z') || (uc >= 'A' && uc <= 'Z') ||
                         (uc >= '0' && uc <= '9') || uc >= 0x80;
        if (word_char) {
            current.push_back(detail::ascii_lower(ch));
        } else if (!current.empty()) {
            tokens.push_back(std::move(current));
            current.clear();
        }
    }
    if (!current.empty()) tokens.push_back(std::move(current));
    return tokens;
}

// Drops stop words, stems the survivors, then drops anything that is
// neither a vocabulary stem nor a pure numeral. Order preserved.
inline std::vector<std::string> filter_and_stem(const std::vector<std::string>& tokens,
                                                const StopWordList& stops,
                                                const PseudoThesaurus& thesaurus) {
    std::vector<std::string> out;
    out.reserve(tokens.size());
    for (const auto& token : tokens) {
        if (stops.contains(token)) continue;
        const std::string* mapped = thesaurus.stem_of(token);
        const std::string& stem = mapped ? *mapped : token;
        if (!thesaurus.valid_stem(stem) && !is_numeral(stem)) continue;
        out.push_back(stem);
    }
    return out;
}

// One SentenceTokens per extracted sentence, indices 1..m. Sentences
// left empty by filtering are still emitted so indices line up.
inline std::vector<SentenceTokens> prepare_document(const Document& doc, const StopWordList& stops,
                                                    const PseudoThesaurus& thesaurus) {
    std::vector<SentenceTokens> prepared;
    auto sentences = extract_sentences(doc.text);
    prepared.reserve(sentences.size());
    for (std::size_t j = 0; j < sentences.size(); ++j) {
        SentenceTokens st;
        st.sentence_index = static_cast<int>(j + 1);
        st.tokens = filter_and_stem(tokenize(sentences[j]), stops, thesaurus);
        prepared.push_back(std::move(st));
    }
    return prepared;
}

} // namespace fscmm

#endif

#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "fscmm/text_prep.hpp"
#include "test_util.hpp"

using namespace fscmm;

TEST_CASE("extract_sentences handles the boundary rule") {
    CHECK(extract_sentences("").empty());
    CHECK(extract_sentences("Hello world.") == std::vector<std::string>{"Hello world."});
    CHECK(extract_sentences("A b. C d? E!") == std::vector<std::string>{"A b.", "C d?", "E!"});
}

TEST_CASE("extract_sentences keeps non-boundary terminators inside") {
    // '.' not followed by whitespace is not a boundary
    CHECK(extract_sentences("v1.2 shipped. Done!") ==
          std::vector<std::string>{"v1.2 shipped.", "Done!"});
    CHECK(extract_sentences("Wait... ok.") == std::vector<std::string>{"Wait...", "ok."});
}

TEST_CASE("extract_sentences emits a trailing unterminated fragment") {
    CHECK(extract_sentences("One. two three") == std::vector<std::string>{"One.", "two three"});
    CHECK(extract_sentences("   \n\t  ").empty());
}

TEST_CASE("joined sentences reproduce input up to whitespace") {
    std::mt19937 gen(7);
    const std::string pieces[] = {"abc", "de", "x9",  ".",  "?", "!",
                                  " ",   "\n", "\t ", "..", "a.b"};
    for (int round = 0; round < 200; ++round) {
        std::string text;
        for (int i = 0; i < static_cast<int>(gen() % 30); ++i)
            text += pieces[gen() % std::size(pieces)];
        std::string joined;
        for (const auto& s : extract_sentences(text)) joined += s;
        auto strip = [](const std::string& s) {
            std::string out;
            for (char c : s)
                if (!detail::is_space(c)) out += c;
            return out;
        };
        CHECK(strip(joined) == strip(text));
    }
}

TEST_CASE("tokenize splits on delimiters and folds case") {
    CHECK(tokenize("Fuzzy logic, fuzzy sets.") ==
          std::vector<std::string>{"fuzzy", "logic", "fuzzy", "sets"});
    CHECK(tokenize("IPv6 2011") == std::vector<std::string>{"ipv6", "2011"});
    CHECK(tokenize("").empty());
    CHECK(tokenize("--- ;;; ...").empty());
    // multibyte UTF-8 stays in one token, ASCII around it still folds
    CHECK(tokenize("Caf\xc3\xa9 bar") == std::vector<std::string>{"caf\xc3\xa9", "bar"});
}

TEST_CASE("is_numeral accepts digit runs only") {
    CHECK(is_numeral("2011"));
    CHECK_FALSE(is_numeral("ipv6"));
    CHECK_FALSE(is_numeral(""));
}

TEST_CASE("filter_and_stem collapses variants to one stem") {
    auto th = testutil::make_thesaurus({}, {{"researching", "research"},
                                            {"researcher", "research"},
                                            {"researches", "research"}});
    auto stops = testutil::make_stops();
    CHECK(filter_and_stem({"researching", "researcher", "researches"}, stops, th) ==
          std::vector<std::string>{"research", "research", "research"});
}

TEST_CASE("filter_and_stem removes stop words and invalid words") {
    auto th = testutil::make_thesaurus({"research"});
    auto stops = testutil::make_stops({"the"});
    CHECK(filter_and_stem({"the", "research"}, stops, th) ==
          std::vector<std::string>{"research"});
    CHECK(filter_and_stem({"zzqx"}, stops, th).empty());
    // numerals survive without vocabulary membership
    CHECK(filter_and_stem({"42"}, stops, th) == std::vector<std::string>{"42"});
}

TEST_CASE("filter_and_stem is the identity without resources") {
    std::vector<std::string> tokens{"a", "b", "c", "a"};
    auto th = testutil::make_thesaurus({"a", "b", "c"});
    auto stops = testutil::make_stops();
    CHECK(filter_and_stem(tokens, stops, th) == tokens);
}

TEST_CASE("filter_and_stem is idempotent") {
    std::mt19937 gen(11);
    auto th = testutil::make_thesaurus({"research", "game", "market"},
                                       {{"researching", "research"},
                                        {"games", "game"},
                                        {"markets", "market"}});
    auto stops = testutil::make_stops({"the", "a"});
    const std::string pool[] = {"researching", "games",  "markets", "research", "game",
                                "market",      "the",    "a",       "junkword", "42",
                                "x1y",         "GAMES"};
    for (int round = 0; round < 100; ++round) {
        std::vector<std::string> tokens;
        for (int i = 0; i < static_cast<int>(gen() % 12); ++i)
            tokens.push_back(pool[gen() % std::size(pool)]);
        auto once = filter_and_stem(tokens, stops, th);
        auto twice = filter_and_stem(once, stops, th);
        CHECK(once == twice);
        CHECK(once.size() <= tokens.size());
    }
}

TEST_CASE("prepare_document composes extraction, tokenizing and filtering") {
    auto th = testutil::make_thesaurus({"research"}, {{"researching", "research"},
                                                      {"researches", "research"}});
    auto stops = testutil::make_stops({"the", "end"});
    Document doc{"d", "Researching researches. The end.", std::nullopt};
    auto prepared = prepare_document(doc, stops, th);
    REQUIRE(prepared.size() == 2);
    CHECK(prepared[0].sentence_index == 1);
    CHECK(prepared[0].tokens == std::vector<std::string>{"research", "research"});
    CHECK(prepared[1].sentence_index == 2);
    CHECK(prepared[1].tokens.empty());
}

TEST_CASE("prepare_document on empty and all-stop text") {
    auto th = testutil::make_thesaurus({"x"});
    auto stops = testutil::make_stops({"the"});
    CHECK(prepare_document({"d", "", std::nullopt}, stops, th).empty());

    auto prepared = prepare_document({"d", "The the the.", std::nullopt}, stops, th);
    REQUIRE(prepared.size() == 1);
    CHECK(prepared[0].tokens.empty());
}

TEST_CASE("stop-word file supports comments and case folding") {
    testutil::TempDir tmp;
    testutil::write_file(tmp.file("stops.txt"), "# comment\nThe\n\n  and  \n");
    auto stops = load_stop_words(tmp.file("stops.txt"));
    CHECK(stops.contains("the"));
    CHECK(stops.contains("and"));
    CHECK_FALSE(stops.contains("# comment"));
}

TEST_CASE("thesaurus file parses variants and vocabulary lines") {
    testutil::TempDir tmp;
    testutil::write_file(tmp.file("th.tsv"), "research\nresearching\tresearch\ngames\tgame\n");
    auto th = load_thesaurus(tmp.file("th.tsv"));
    CHECK(th.valid_stem("research"));
    CHECK(th.valid_stem("game")); // auto-added from the variant line
    REQUIRE(th.stem_of("researching") != nullptr);
    CHECK(*th.stem_of("researching") == "research");
    CHECK(th.stem_of("research") == nullptr);
}

TEST_CASE("thesaurus file rejects conflicts and chains") {
    testutil::TempDir tmp;
    testutil::write_file(tmp.file("conflict.tsv"), "a\tx\na\ty\n");
    CHECK_THROWS_AS(load_thesaurus(tmp.file("conflict.tsv")), ParseError);

    testutil::write_file(tmp.file("chain.tsv"), "a\tb\nb\tc\n");
    CHECK_THROWS_AS(load_thesaurus(tmp.file("chain.tsv")), ParseError);

    testutil::write_file(tmp.file("wide.tsv"), "a\tb\tc\n");
    CHECK_THROWS_AS(load_thesaurus(tmp.file("wide.tsv")), ParseError);
}

TEST_CASE("shipped resources keep filtering idempotent") {
    auto stops = load_stop_words(std::filesystem::path(FSCMM_DATA_DIR) / "stopwords_en.txt");
    auto th = load_thesaurus(std::filesystem::path(FSCMM_DATA_DIR) / "thesaurus_en.tsv");
    std::vector<std::string> vocab(th.vocabulary.begin(), th.vocabulary.end());
    std::vector<std::string> variants;
    for (const auto& [variant, stem] : th.stem_map) {
        (void)stem;
        variants.push_back(variant);
    }
    std::mt19937 gen(3);
    for (int round = 0; round < 100; ++round) {
        std::vector<std::string> tokens;
        for (int i = 0; i < 20; ++i) {
            switch (gen() % 3) {
                case 0: tokens.push_back(vocab[gen() % vocab.size()]); break;
                case 1: tokens.push_back(variants[gen() % variants.size()]); break;
                default: tokens.push_back("junk" + std::to_string(gen() % 5)); break;
            }
        }
        auto once = filter_and_stem(tokens, stops, th);
        CHECK(filter_and_stem(once, stops, th) == once);
    }
}

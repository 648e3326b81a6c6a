#include "support.hpp"

#include "tweetscope/error.hpp"
#include "tweetscope/lexicon.hpp"
#include "tweetscope/text.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

using namespace tweetscope;

namespace {

std::vector<std::string> read_lines(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::vector<std::string> lines;
    for (std::string line; std::getline(in, line);) lines.push_back(line);
    return lines;
}

void write_lines(const std::filesystem::path& p, const std::vector<std::string>& lines) {
    std::ofstream out(p);
    for (const auto& l : lines) out << l << '\n';
}

}  // namespace

TEST_SUITE("lexicon") {

TEST_CASE("bundled AFINN-111") {
    const auto lex = load_afinn(testing::data_dir() / "lexicons/AFINN-111.txt");
    CHECK(lex.size() == 2477);
    CHECK(lex.find("good") == 3);
    CHECK(lex.find("abandon") == -2);
    CHECK(lex.find("does not work") == -3);
    CHECK(lex.max_words() == 3);
    CHECK_FALSE(lex.find("virus"));
    for (const auto& [term, score] : lex.entries()) {
        CHECK(score >= -5);
        CHECK(score <= 5);
        CHECK(term == to_lower_utf8(term));
    }
}

TEST_CASE("AFINN rejects bad rows with line numbers") {
    testing::TempDir dir("lex");
    auto expect_line = [&](const std::string& body, std::size_t line) {
        testing::write_text(dir / "a.txt", body);
        try {
            load_afinn(dir / "a.txt");
            FAIL("expected MalformedLexicon for: " << body);
        } catch (const MalformedLexicon& e) {
            CHECK(e.line() == line);
        }
    };
    expect_line("good\t3\noops\t9\n", 2);
    expect_line("good\t3\nbad\tx\n", 2);
    expect_line("good\t3\ngood\t2\n", 2);
    expect_line("no tab here\n", 1);
    expect_line("good\t3.5\n", 1);
    expect_line("a  b\t1\n", 1);
    CHECK_THROWS_AS(load_afinn(dir / "missing.txt"), FileNotFound);
}

TEST_CASE("bundled NRC EmoLex") {
    const auto lex = load_nrc(testing::data_dir() / "lexicons/NRC-Emotion-Lexicon-Wordlevel.txt");
    const EmotionSet abandoned = lex.emotions("abandoned");
    CHECK(abandoned.test(static_cast<std::size_t>(Emotion::Anger)));
    CHECK(abandoned.test(static_cast<std::size_t>(Emotion::Fear)));
    CHECK(abandoned.test(static_cast<std::size_t>(Emotion::Sadness)));
    CHECK_FALSE(abandoned.test(static_cast<std::size_t>(Emotion::Joy)));
    CHECK(lex.emotions("notaword").none());

    std::set<std::string> words;
    for (const auto& line : read_lines(testing::data_dir() / "lexicons/NRC-Emotion-Lexicon-Wordlevel.txt")) {
        words.insert(line.substr(0, line.find('\t')));
    }
    CHECK(lex.size() == words.size());
}

TEST_CASE("NRC all-zero word and polarity rows") {
    testing::TempDir dir("lex");
    testing::write_text(dir / "n.txt",
                        "calm\tanger\t0\ncalm\tnegative\t0\ncalm\tpositive\t1\ncalm\tjoy\t0\n"
                        "grim\tsadness\t1\ngrim\tnegative\t1\n");
    const auto lex = load_nrc(dir / "n.txt");
    CHECK(lex.emotions("calm").none());
    CHECK(lex.size() == 2);
    CHECK(lex.emotions("grim").count() == 1);
}

TEST_CASE("NRC malformed rows") {
    testing::TempDir dir("lex");
    testing::write_text(dir / "n.txt", "word\tanger\t1\nword\tboredom\t1\n");
    try {
        load_nrc(dir / "n.txt");
        FAIL("expected MalformedLexicon");
    } catch (const MalformedLexicon& e) {
        CHECK(e.line() == 2);
    }
    testing::write_text(dir / "n.txt", "word\tanger\t2\n");
    CHECK_THROWS_AS(load_nrc(dir / "n.txt"), MalformedLexicon);
    testing::write_text(dir / "n.txt", "word\tanger\n");
    CHECK_THROWS_AS(load_nrc(dir / "n.txt"), MalformedLexicon);
}

TEST_CASE("property: loading is order independent") {
    testing::TempDir dir("lex");
    auto afinn_lines = read_lines(testing::data_dir() / "lexicons/AFINN-111.txt");
    auto nrc_lines = read_lines(testing::data_dir() / "lexicons/NRC-Emotion-Lexicon-Wordlevel.txt");
    const auto afinn = load_afinn(testing::data_dir() / "lexicons/AFINN-111.txt");
    const auto nrc = load_nrc(testing::data_dir() / "lexicons/NRC-Emotion-Lexicon-Wordlevel.txt");
    std::mt19937_64 rng(11);
    for (int i = 0; i < 3; ++i) {
        std::shuffle(afinn_lines.begin(), afinn_lines.end(), rng);
        std::shuffle(nrc_lines.begin(), nrc_lines.end(), rng);
        write_lines(dir / "a.txt", afinn_lines);
        write_lines(dir / "n.txt", nrc_lines);
        CHECK(load_afinn(dir / "a.txt") == afinn);
        CHECK(load_nrc(dir / "n.txt") == nrc);
    }
}

TEST_CASE("emotion names") {
    CHECK(emotion_from_name("anticipation") == Emotion::Anticipation);
    CHECK_FALSE(emotion_from_name("positive"));
    CHECK(kEmotionNames[static_cast<std::size_t>(Emotion::Joy)] == "joy");
}

}

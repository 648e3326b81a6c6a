#include "support.hpp"

#include "tweetscope/affect.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace tweetscope;
using Tokens = std::vector<std::string>;

namespace {

const SentimentLexicon& afinn() {
    static const auto lex = load_afinn(testing::data_dir() / "lexicons/AFINN-111.txt");
    return lex;
}

const EmotionLexicon& nrc() {
    static const auto lex = load_nrc(testing::data_dir() / "lexicons/NRC-Emotion-Lexicon-Wordlevel.txt");
    return lex;
}

std::size_t idx(Emotion e) { return static_cast<std::size_t>(e); }

bool has_multiword_match(const Tokens& tokens) {
    for (std::size_t i = 0; i + 1 < tokens.size(); ++i) {
        if (afinn().find(tokens[i] + " " + tokens[i + 1])) return true;
        if (i + 2 < tokens.size() && afinn().find(tokens[i] + " " + tokens[i + 1] + " " + tokens[i + 2]))
            return true;
    }
    return false;
}

void check_invariants(const SentimentScore& s) {
    CHECK(s.sum == s.positivity - s.negativity);
    CHECK(s.positivity >= 0);
    CHECK(s.negativity >= 0);
    if (s.matched == 0) {
        CHECK(s.sum == 0);
        CHECK(s.mean == 0.0);
    } else {
        CHECK(s.mean == doctest::Approx(static_cast<double>(s.sum) / static_cast<double>(s.matched)));
    }
}

}  // namespace

TEST_SUITE("affect") {

TEST_CASE("sentiment examples") {
    const SentimentScore good = score_sentiment(Tokens{"good"}, afinn());
    CHECK(good.sum == 3);
    CHECK(good.positivity == 3);
    CHECK(good.negativity == 0);
    CHECK(good.matched == 1);
    CHECK(good.mean == 3.0);

    const SentimentScore empty = score_sentiment(Tokens{}, afinn());
    CHECK(empty.sum == 0);
    CHECK(empty.matched == 0);
    CHECK(empty.mean == 0.0);

    const SentimentScore none = score_sentiment(Tokens{"the", "a", "of"}, afinn());
    CHECK(none.sum == 0);
    CHECK(none.matched == 0);
}

TEST_CASE("multi-word entries win over their parts") {
    // "cool stuff" = 3, "cool" = 1; "does not work" = -3, "work" absent
    REQUIRE(afinn().find("cool stuff") == 3);
    REQUIRE(afinn().find("cool") == 1);
    const SentimentScore s = score_sentiment(Tokens{"cool", "stuff", "cool"}, afinn());
    CHECK(s.sum == 4);
    CHECK(s.matched == 2);
    const SentimentScore t = score_sentiment(Tokens{"it", "does", "not", "work"}, afinn());
    CHECK(t.sum == -3);
    CHECK(t.matched == 1);
    const SentimentScore mixed = score_sentiment(Tokens{"good", "bad", "awful"}, afinn());
    CHECK(mixed.positivity == 3);
    CHECK(mixed.negativity == 3 + 3);
    check_invariants(mixed);
}

TEST_CASE("emotion examples") {
    const EmotionVector v = score_emotions(Tokens{"abandoned"}, nrc());
    CHECK(v.counts[idx(Emotion::Anger)] == 1);
    CHECK(v.counts[idx(Emotion::Fear)] == 1);
    CHECK(v.counts[idx(Emotion::Sadness)] == 1);
    CHECK(v.counts[idx(Emotion::Joy)] == 0);
    CHECK(v.total() == 3);
    CHECK(v.normalized[idx(Emotion::Anger)] == doctest::Approx(1.0 / 3.0));

    const EmotionVector e = score_emotions(Tokens{}, nrc());
    CHECK(e.total() == 0);
    for (double x : e.normalized) CHECK(x == 0.0);

    const EmotionVector twice = score_emotions(Tokens{"abandoned", "abandoned"}, nrc());
    CHECK(twice.counts[idx(Emotion::Anger)] == 2);
    CHECK(twice.counts[idx(Emotion::Fear)] == 2);
}

TEST_CASE("property: normalized emotions sum to one") {
    std::vector<std::string> words;
    for (const auto& [w, set] : nrc().entries()) words.push_back(w);
    std::sort(words.begin(), words.end());
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 300; ++trial) {
        Tokens tokens;
        for (int i = 0; i < 12; ++i) tokens.push_back(words[rng() % words.size()]);
        const EmotionVector v = score_emotions(tokens, nrc());
        double sum = 0;
        std::size_t count_sum = 0;
        for (std::size_t e = 0; e < kNumEmotions; ++e) {
            sum += v.normalized[e];
            count_sum += v.counts[e];
            if (v.total() > 0) {
                CHECK(v.normalized[e] ==
                      doctest::Approx(static_cast<double>(v.counts[e]) / static_cast<double>(v.total())));
            }
        }
        CHECK(count_sum == v.total());
        if (v.total() > 0) {
            CHECK(std::abs(sum - 1.0) <= 1e-9);
        } else {
            CHECK(sum == 0.0);
        }
    }
}

TEST_CASE("property: order insensitivity without multi-word matches") {
    std::vector<std::string> unigrams;
    for (const auto& [t, s] : afinn().entries()) {
        if (t.find(' ') == std::string::npos) unigrams.push_back(t);
    }
    std::sort(unigrams.begin(), unigrams.end());
    const Tokens noise = {"virus", "the", "city", "xyzzy", "today"};
    std::mt19937_64 rng(17);
    int tested = 0;
    for (int trial = 0; trial < 500; ++trial) {
        Tokens tokens;
        for (int i = 0; i < 10; ++i) {
            tokens.push_back(rng() % 2 ? unigrams[rng() % unigrams.size()] : noise[rng() % noise.size()]);
        }
        Tokens shuffled = tokens;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        if (has_multiword_match(tokens) || has_multiword_match(shuffled)) continue;
        ++tested;
        const SentimentScore a = score_sentiment(tokens, afinn());
        const SentimentScore b = score_sentiment(shuffled, afinn());
        CHECK(a.sum == b.sum);
        CHECK(a.positivity == b.positivity);
        CHECK(a.negativity == b.negativity);
        CHECK(a.matched == b.matched);
        CHECK(score_emotions(tokens, nrc()).counts == score_emotions(shuffled, nrc()).counts);
        check_invariants(a);
    }
    CHECK(tested > 400);
}

TEST_CASE("property: additivity across a clean seam") {
    std::vector<std::string> terms;
    for (const auto& [t, s] : afinn().entries()) terms.push_back(t);
    std::sort(terms.begin(), terms.end());
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 300; ++trial) {
        auto gen = [&] {
            Tokens out;
            for (int i = 0; i < 6; ++i) {
                const std::string& t = terms[rng() % terms.size()];
                std::istringstream ss(t);
                for (std::string w; ss >> w;) out.push_back(w);
                out.push_back("zzsep");  // noise word, never in either lexicon
            }
            return out;
        };
        const Tokens a = gen();
        const Tokens b = gen();
        Tokens ab = a;
        ab.insert(ab.end(), b.begin(), b.end());
        const SentimentScore sa = score_sentiment(a, afinn());
        const SentimentScore sb = score_sentiment(b, afinn());
        const SentimentScore sab = score_sentiment(ab, afinn());
        CHECK(sab.sum == sa.sum + sb.sum);
        CHECK(sab.positivity == sa.positivity + sb.positivity);
        CHECK(sab.negativity == sa.negativity + sb.negativity);
        CHECK(sab.matched == sa.matched + sb.matched);
        const EmotionVector ea = score_emotions(a, nrc());
        const EmotionVector eb = score_emotions(b, nrc());
        const EmotionVector eab = score_emotions(ab, nrc());
        for (std::size_t e = 0; e < kNumEmotions; ++e) CHECK(eab.counts[e] == ea.counts[e] + eb.counts[e]);
    }
}

}

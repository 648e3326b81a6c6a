#include "support.hpp"

#include "tweetscope/error.hpp"
#include "tweetscope/ingest.hpp"
#include "tweetscope/text.hpp"

#include <doctest.h>

using namespace tweetscope;
using Tokens = std::vector<std::string>;

namespace {

const StopwordSet& bundled_stopwords() {
    static const StopwordSet set = load_stopwords(testing::data_dir() / "stopwords/english.txt");
    return set;
}

RawTweet raw(std::string text, std::optional<std::string> lang = "en") {
    RawTweet t;
    t.id = "1";
    t.created_at = *parse_timestamp("2020-03-12T10:00:00Z");
    t.text = std::move(text);
    t.lang = std::move(lang);
    return t;
}

}  // namespace

TEST_SUITE("ingest") {

TEST_CASE("load_jsonl well-formed file") {
    testing::TempDir dir("ingest");
    testing::write_text(dir / "a.jsonl",
                        R"({"id":"1","created_at":"2020-03-12T10:00:00Z","text":"a"})" "\n"
                        R"({"id":"2","created_at":"2020-03-12T11:00:00Z","text":"b","lang":"en"})" "\n"
                        R"({"id":3,"created_at":"2020-03-12T12:00:00Z","text":"c","country":"US","extra":1})" "\n");
    const LoadResult r = load_jsonl(dir / "a.jsonl");
    CHECK(r.tweets.size() == 3);
    CHECK(r.skipped == 0);
    CHECK(r.loaded == 3);
    CHECK(r.tweets[2].id == "3");
    CHECK(r.tweets[2].country == "US");
    CHECK_FALSE(r.tweets[0].lang);
}

TEST_CASE("load_jsonl truncated line in skip mode") {
    testing::TempDir dir("ingest");
    testing::write_text(dir / "a.jsonl",
                        R"({"id":"1","created_at":"2020-03-12T10:00:00Z","text":"a"})" "\n"
                        R"({"id":"2","created_at":"2020-03-12T1)" "\n"
                        R"({"id":"3","created_at":"2020-03-12T12:00:00Z","text":"c"})" "\n");
    const LoadResult r = load_jsonl(dir / "a.jsonl", Strictness::SkipMalformed);
    CHECK(r.tweets.size() == 2);
    CHECK(r.skipped == 1);
    CHECK(r.loaded == 3);
}

TEST_CASE("load_jsonl fail-fast reports line number") {
    testing::TempDir dir("ingest");
    testing::write_text(dir / "a.jsonl",
                        R"({"id":"1","created_at":"2020-03-12T10:00:00Z","text":"a"})" "\n\n"
                        R"({"id":"2","created_at":"not a date","text":"b"})" "\n");
    try {
        load_jsonl(dir / "a.jsonl", Strictness::FailFast);
        FAIL("expected MalformedRecord");
    } catch (const MalformedRecord& e) {
        CHECK(e.line() == 3);
    }
}

TEST_CASE("load_jsonl missing file") {
    CHECK_THROWS_AS(load_jsonl("/nonexistent/tweets.jsonl"), FileNotFound);
}

TEST_CASE("parse_raw_tweet validation") {
    CHECK_THROWS(parse_raw_tweet(R"({"created_at":"2020-03-12T10:00:00Z","text":"a"})"));
    CHECK_THROWS(parse_raw_tweet(R"({"id":"","created_at":"2020-03-12T10:00:00Z","text":"a"})"));
    CHECK_THROWS(parse_raw_tweet(R"({"id":"1","created_at":"2020-03-12T10:00:00Z"})"));
    CHECK_THROWS(parse_raw_tweet(R"({"id":"1","created_at":"2020-03-12T10:00:00Z","text":"a","country":"usa"})"));
    CHECK_THROWS(parse_raw_tweet(R"({"id":"1","created_at":"2020-03-12T10:00:00Z","text":"a","country":"us"})"));
    CHECK_THROWS(parse_raw_tweet(R"({"id":"1","created_at":"2020-03-12T10:00:00Z","text":"a","is_retweet":"yes"})"));
    CHECK_THROWS(parse_raw_tweet("[1,2]"));
    const RawTweet t = parse_raw_tweet(
        R"({"id":"9","created_at":"Thu Mar 12 10:00:00 +0000 2020","text":"x","country":null,"is_retweet":true,"user_id":"u1"})");
    CHECK(t.id == "9");
    CHECK_FALSE(t.country);
    CHECK(t.is_retweet);
    CHECK(t.user_id == "u1");
}

TEST_CASE("duplicate ids are malformed") {
    testing::TempDir dir("ingest");
    testing::write_text(dir / "a.jsonl",
                        R"({"id":"1","created_at":"2020-03-12T10:00:00Z","text":"a"})" "\n"
                        R"({"id":"1","created_at":"2020-03-12T11:00:00Z","text":"b"})" "\n");
    const LoadResult r = load_jsonl(dir / "a.jsonl");
    CHECK(r.tweets.size() == 1);
    CHECK(r.skipped == 1);
}

TEST_CASE("bundled stopword list") {
    const auto& sw = bundled_stopwords();
    CHECK(sw.size() == 179);
    CHECK(sw.count("the"));
    CHECK(sw.count("is"));
    CHECK_FALSE(sw.count("virus"));
}

TEST_CASE("filter_language") {
    const LanguagePolicy policy{&bundled_stopwords()};
    CHECK(filter_language(raw("anything", "en"), policy));
    CHECK_FALSE(filter_language(raw("the virus is spreading", "fr"), policy));
    CHECK(filter_language(raw("the virus is spreading in the city", std::nullopt), policy));
    CHECK(stopword_ratio("the virus is spreading in the city", bundled_stopwords()) ==
          doctest::Approx(4.0 / 7.0));
    CHECK_FALSE(filter_language(raw("le virus se propage dans la ville", std::nullopt), policy));
    CHECK_FALSE(filter_language(raw("", std::nullopt), policy));
    CHECK(filter_language(raw("The, virus!", "und"), policy));
}

TEST_CASE("property: language filter is pure") {
    const LanguagePolicy policy{&bundled_stopwords()};
    const RawTweet t = raw("what a day in lockdown", std::nullopt);
    const bool first = filter_language(t, policy);
    for (int i = 0; i < 5; ++i) CHECK(filter_language(t, policy) == first);
}

TEST_CASE("preprocess") {
    const StopwordSet sw{"the"};
    const ProcessedTweet p = preprocess(raw("The spreading virus"), sw);
    CHECK(p.surface_tokens == Tokens{"the", "spreading", "virus"});
    CHECK(p.stemmed_tokens == Tokens{"spread", "viru"});
    CHECK(format_date(p.day) == "2020-03-12");
    CHECK(p.week.to_string() == "2020-W11");

    const ProcessedTweet e = preprocess(raw(""), sw);
    CHECK(e.surface_tokens.empty());
    CHECK(e.stemmed_tokens.empty());
}

TEST_CASE("preprocess buckets in UTC") {
    RawTweet t = raw("late night");
    t.created_at = *parse_timestamp("2020-03-15T23:30:00-02:00");  // Monday 01:30 UTC
    const ProcessedTweet p = preprocess(t, {});
    CHECK(format_date(p.day) == "2020-03-16");
    CHECK(p.week.to_string() == "2020-W12");
    CHECK(iso_week_of(std::chrono::sys_days{p.day}) == p.week);
}

TEST_CASE("property: stemmed tokens trace back to surface tokens") {
    const auto& sw = bundled_stopwords();
    const ProcessedTweet p =
        preprocess(raw("The nurses are running to the hospitals, #StayHome and stay safe!"), sw);
    CHECK(p.stemmed_tokens.size() <= p.surface_tokens.size());
    std::size_t j = 0;
    for (const auto& s : p.surface_tokens) {
        if (sw.count(s)) continue;
        REQUIRE(j < p.stemmed_tokens.size());
        CHECK(p.stemmed_tokens[j] == porter_stem(s));
        ++j;
    }
    CHECK(j == p.stemmed_tokens.size());
}

TEST_CASE("ingest_file count conservation") {
    testing::TempDir dir("ingest");
    testing::write_text(dir / "a.jsonl",
                        R"({"id":"1","created_at":"2020-03-12T10:00:00Z","text":"the virus","lang":"en"})" "\n"
                        R"({"id":"2","created_at":"2020-03-12T10:00:00Z","text":"le virus","lang":"fr"})" "\n"
                        "garbage\n"
                        R"({"id":"4","created_at":"2020-03-13T10:00:00Z","text":"it is what it is"})" "\n"
                        R"({"id":"5","created_at":"2020-03-13T10:00:00Z","text":"xyz qrs"})" "\n");
    const Corpus c = ingest_file(dir / "a.jsonl", bundled_stopwords());
    CHECK(c.counts.loaded == 5);
    CHECK(c.counts.skipped == 1);
    CHECK(c.counts.filtered == 2);
    CHECK(c.tweets.size() == 2);
    CHECK(c.counts.loaded == c.tweets.size() + c.counts.skipped + c.counts.filtered);
}

}

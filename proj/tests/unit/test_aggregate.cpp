#include "support.hpp"

#include "tweetscope/aggregate.hpp"
#include "tweetscope/error.hpp"

#include <doctest.h>

#include <random>

using namespace tweetscope;
using namespace std::chrono;

namespace {

ProcessedTweet at(std::string id, const char* ts, std::optional<std::string> country = std::nullopt) {
    ProcessedTweet t;
    t.id = std::move(id);
    t.created_at = *parse_timestamp(ts);
    t.day = utc_date(t.created_at);
    t.week = iso_week_of(sys_days{t.day});
    t.country = std::move(country);
    return t;
}

TweetScores mean_score(double mean, int pos = 0, int neg = 0) {
    TweetScores s;
    s.sentiment.mean = mean;
    s.sentiment.positivity = pos;
    s.sentiment.negativity = neg;
    s.sentiment.sum = pos - neg;
    s.sentiment.matched = 1;
    return s;
}

BucketKey week_key(const char* w, std::optional<std::string> country = std::nullopt) {
    return BucketKey{Granularity::Week, w, std::move(country)};
}

struct Built {
    Corpus corpus;
    std::vector<TweetScores> scores;
    AggregateSnapshot snap;
};

Built random_build(std::uint64_t seed, std::size_t n) {
    std::mt19937_64 rng(seed);
    Built b;
    const std::optional<std::string> countries[] = {"US", "GB", std::nullopt};
    const auto start = sys_days{year{2020} / 3 / 1};
    for (std::size_t i = 0; i < n; ++i) {
        ProcessedTweet t;
        t.id = std::to_string(i);
        t.created_at = time_point_cast<seconds>(start + seconds{static_cast<long>(rng() % (40 * 86400))});
        t.day = utc_date(t.created_at);
        t.week = iso_week_of(sys_days{t.day});
        t.country = countries[rng() % 3];
        b.corpus.tweets.push_back(t);
        TweetScores s = mean_score(static_cast<double>(rng() % 11) - 5.0, rng() % 4, rng() % 4);
        for (std::size_t e = 0; e < kNumEmotions; ++e) s.emotions.counts[e] = rng() % 3;
        const double total = static_cast<double>(s.emotions.total());
        for (std::size_t e = 0; e < kNumEmotions; ++e)
            s.emotions.normalized[e] = total > 0 ? static_cast<double>(s.emotions.counts[e]) / total : 0.0;
        b.scores.push_back(s);
    }
    b.snap = build_snapshot(b.corpus, b.scores, "2020-05-01T00:00:00Z");
    return b;
}

}  // namespace

TEST_SUITE("aggregate") {

TEST_CASE("three tweets in one week") {
    Corpus c;
    c.tweets = {at("1", "2020-03-09T01:00:00Z"), at("2", "2020-03-10T01:00:00Z"), at("3", "2020-03-12T01:00:00Z")};
    const std::vector<TweetScores> s = {mean_score(1), mean_score(2), mean_score(3)};
    const AggregateSnapshot snap = build_snapshot(c, s);
    CHECK(snap.volume.at(week_key("2020-W11")) == 3);
    CHECK(snap.sentiment.at(week_key("2020-W11")).mean == doctest::Approx(2.0));
    CHECK(snap.sentiment.at(week_key("2020-W11")).count == 3);
    CHECK(snap.volume.at(week_key("2020-W11", "unknown")) == 3);
}

TEST_CASE("five tweets across two days") {
    Corpus c;
    c.tweets = {at("1", "2020-03-09T01:00:00Z"), at("2", "2020-03-09T23:59:59Z"), at("3", "2020-03-10T00:00:00Z"),
                at("4", "2020-03-10T10:00:00Z"), at("5", "2020-03-10T11:00:00Z")};
    const AggregateSnapshot snap = build_snapshot(c, std::vector<TweetScores>(5));
    std::size_t total = 0;
    for (const auto& [k, v] : snap.volume)
        if (k.granularity == Granularity::Day && !k.country) total += v;
    CHECK(total == 5);
    CHECK(snap.volume.at(BucketKey{Granularity::Day, "2020-03-09", std::nullopt}) == 2);
}

TEST_CASE("no lexicon matches") {
    Corpus c;
    c.tweets = {at("1", "2020-03-09T01:00:00Z")};
    const AggregateSnapshot snap = build_snapshot(c, std::vector<TweetScores>(1));
    CHECK(snap.sentiment.at(week_key("2020-W11")).mean == 0.0);
    CHECK(snap.volume.at(week_key("2020-W11")) == 1);
}

TEST_CASE("score/corpus mismatch") {
    Corpus c;
    c.tweets = {at("1", "2020-03-09T01:00:00Z")};
    CHECK_THROWS_AS(build_snapshot(c, std::vector<TweetScores>(2)), ScoreCorpusMismatch);
}

TEST_CASE("built_at honours SOURCE_DATE_EPOCH") {
    Corpus c;
    c.tweets = {at("1", "2020-03-09T01:00:00Z")};
    ::setenv("SOURCE_DATE_EPOCH", "1584000000", 1);
    const AggregateSnapshot snap = build_snapshot(c, std::vector<TweetScores>(1));
    ::unsetenv("SOURCE_DATE_EPOCH");
    CHECK(snap.built_at == "2020-03-12T08:00:00Z");
    CHECK(snap.corpus_id.size() == 64);
}

TEST_CASE("property: partition conservation and country rollup") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const Built b = random_build(seed, 300);
        std::size_t days = 0, weeks = 0;
        std::map<std::pair<Granularity, std::string>, std::size_t> per_country_sum;
        for (const auto& [k, v] : b.snap.volume) {
            if (!k.country) {
                (k.granularity == Granularity::Day ? days : weeks) += v;
            } else {
                per_country_sum[{k.granularity, k.period}] += v;
                CHECK(v <= b.snap.volume.at(BucketKey{k.granularity, k.period, std::nullopt}));
            }
        }
        CHECK(days == 300);
        CHECK(weeks == 300);
        for (const auto& [gp, sum] : per_country_sum)
            CHECK(sum == b.snap.volume.at(BucketKey{gp.first, gp.second, std::nullopt}));
        for (const auto& [k, v] : b.snap.sentiment) CHECK(b.snap.volume.count(k));
        for (const auto& [k, v] : b.snap.emotions) CHECK(b.snap.volume.count(k));
    }
}

TEST_CASE("query gap-fills and orders") {
    Corpus c;
    c.tweets = {at("1", "2020-03-02T01:00:00Z", "US"), at("2", "2020-03-16T01:00:00Z")};
    const AggregateSnapshot snap = build_snapshot(c, std::vector<TweetScores>{mean_score(1), mean_score(-1)});
    const Series s = query(snap, Metric::Sentiment, Granularity::Week, "2020-W10", "2020-W12");
    REQUIRE(s.points.size() == 3);
    CHECK(s.points[0].period == "2020-W10");
    CHECK(s.points[1].count == 0);
    CHECK_FALSE(s.points[1].sentiment);
    CHECK(s.points[2].sentiment->mean == -1.0);

    const Series fr = query(snap, Metric::Volume, Granularity::Day, "2020-03-01", "2020-03-10", "FR");
    CHECK(fr.points.size() == 10);
    for (const auto& p : fr.points) CHECK(p.count == 0);

    const Series unk = query(snap, Metric::Volume, Granularity::Week, "2020-W10", "2020-W12", "unknown");
    CHECK(unk.points[2].count == 1);
    CHECK(unk.points[0].count == 0);

    CHECK_THROWS_AS(query(snap, Metric::Volume, Granularity::Week, "2020-W12", "2020-W10"), InvalidRange);
    CHECK_THROWS_AS(query(snap, Metric::Volume, Granularity::Week, "2020-03-01", "2020-W10"), InvalidArgument);
    CHECK_THROWS_AS(query(snap, Metric::Volume, Granularity::Day, "2020-01-01", "2199-01-01"), InvalidArgument);
    CHECK(query(snap, Metric::Emotions, Granularity::Week, "2020-W10", "2020-W12") ==
          query(snap, Metric::Emotions, Granularity::Week, "2020-W10", "2020-W12"));
}

TEST_CASE("period_range across a year boundary") {
    const auto weeks = period_range(Granularity::Week, "2020-W52", "2021-W02");
    CHECK(weeks == std::vector<std::string>{"2020-W52", "2020-W53", "2021-W01", "2021-W02"});
    const auto days = period_range(Granularity::Day, "2020-02-28", "2020-03-01");
    CHECK(days == std::vector<std::string>{"2020-02-28", "2020-02-29", "2020-03-01"});
}

TEST_CASE("persist and load round trip") {
    testing::TempDir dir("agg");
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        const Built b = random_build(seed, 150);
        persist(b.snap, dir / "s.json");
        CHECK(load_snapshot(dir / "s.json") == b.snap);
    }
    const AggregateSnapshot empty;
    persist(empty, dir / "e.json");
    CHECK(load_snapshot(dir / "e.json") == empty);
}

TEST_CASE("corrupt snapshots are rejected") {
    testing::TempDir dir("agg");
    const Built b = random_build(9, 50);
    persist(b.snap, dir / "s.json");
    const std::string good = testing::read_text(dir / "s.json");

    testing::write_text(dir / "t.json", good.substr(0, good.size() / 2));
    CHECK_THROWS_AS(load_snapshot(dir / "t.json"), CorruptSnapshot);

    std::string tampered = good;
    const auto pos = tampered.find("\"count\": ");
    REQUIRE(pos != std::string::npos);
    tampered[pos + 9] = tampered[pos + 9] == '9' ? '8' : '9';
    testing::write_text(dir / "m.json", tampered);
    CHECK_THROWS_AS(load_snapshot(dir / "m.json"), CorruptSnapshot);

    testing::write_text(dir / "x.json", "");
    CHECK_THROWS_AS(load_snapshot(dir / "x.json"), CorruptSnapshot);
    CHECK_THROWS_AS(load_snapshot(dir / "missing.json"), FileNotFound);
}

TEST_CASE("persist is byte-stable") {
    testing::TempDir dir("agg");
    const Built b = random_build(4, 80);
    persist(b.snap, dir / "a.json");
    persist(load_snapshot(dir / "a.json"), dir / "b.json");
    CHECK(testing::read_text(dir / "a.json") == testing::read_text(dir / "b.json"));
}

}

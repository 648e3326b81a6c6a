#include "tweetscope/aggregate.hpp"

#include "tweetscope/error.hpp"
#include "tweetscope/hash.hpp"

#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace tweetscope {

using nlohmann::ordered_json;

namespace {

struct Accumulator {
    std::size_t count = 0;
    double mean_sum = 0.0;
    double positivity_sum = 0.0;
    double negativity_sum = 0.0;
    std::array<double, kNumEmotions> emotion_sums{};
};

std::string now_utc() {
    if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH")) {
        char* end = nullptr;
        const long long secs = std::strtoll(epoch, &end, 10);
        if (end != epoch && *end == '\0') {
            return format_timestamp(Timestamp{std::chrono::seconds{secs}});
        }
    }
    return format_timestamp(std::chrono::floor<std::chrono::seconds>(std::chrono::system_clock::now()));
}

ordered_json key_json(const BucketKey& key) {
    ordered_json j;
    j["granularity"] = std::string(to_string(key.granularity));
    j["period"] = key.period;
    j["country"] = key.country ? ordered_json(*key.country) : ordered_json(nullptr);
    return j;
}

BucketKey key_from_json(const ordered_json& j) {
    const auto g = parse_granularity(j.at("granularity").get<std::string>());
    if (!g) {
        throw CorruptSnapshot("unknown granularity in snapshot");
    }
    BucketKey key{*g, j.at("period").get<std::string>(), std::nullopt};
    if (!j.at("country").is_null()) {
        key.country = j.at("country").get<std::string>();
    }
    return key;
}

ordered_json snapshot_body(const AggregateSnapshot& s) {
    ordered_json doc;
    doc["schema_version"] = 1;
    doc["corpus_id"] = s.corpus_id;
    doc["built_at"] = s.built_at;
    auto& volume = doc["volume"] = ordered_json::array();
    for (const auto& [key, count] : s.volume) {
        auto row = key_json(key);
        row["count"] = count;
        volume.push_back(std::move(row));
    }
    auto& sentiment = doc["sentiment"] = ordered_json::array();
    for (const auto& [key, b] : s.sentiment) {
        auto row = key_json(key);
        row["count"] = b.count;
        row["mean"] = b.mean;
        row["positivity"] = b.positivity;
        row["negativity"] = b.negativity;
        sentiment.push_back(std::move(row));
    }
    auto& emotions = doc["emotions"] = ordered_json::array();
    for (const auto& [key, b] : s.emotions) {
        auto row = key_json(key);
        row["count"] = b.count;
        row["means"] = b.means;
        emotions.push_back(std::move(row));
    }
    return doc;
}

std::string checksum_of(const ordered_json& body) {
    return "sha256:" + sha256_hex(body.dump());
}

}  // namespace

std::string_view to_string(Granularity g) {
    return g == Granularity::Day ? "day" : "week";
}

std::string_view to_string(Metric m) {
    switch (m) {
        case Metric::Volume:
            return "volume";
        case Metric::Sentiment:
            return "sentiment";
        case Metric::Emotions:
            return "emotions";
    }
    return "volume";
}

std::optional<Granularity> parse_granularity(std::string_view text) {
    if (text == "day") return Granularity::Day;
    if (text == "week") return Granularity::Week;
    return std::nullopt;
}

std::optional<Metric> parse_metric(std::string_view text) {
    if (text == "volume") return Metric::Volume;
    if (text == "sentiment") return Metric::Sentiment;
    if (text == "emotions") return Metric::Emotions;
    return std::nullopt;
}

std::string corpus_content_id(const Corpus& corpus) {
    std::string canon;
    for (const auto& t : corpus.tweets) {
        canon += t.id;
        canon += '\t';
        canon += format_timestamp(t.created_at);
        canon += '\t';
        canon += t.country.value_or("");
        canon += '\t';
        for (const auto& tok : t.surface_tokens) {
            canon += tok;
            canon += ' ';
        }
        canon += '\t';
        for (const auto& tok : t.stemmed_tokens) {
            canon += tok;
            canon += ' ';
        }
        canon += '\n';
    }
    return sha256_hex(canon);
}

AggregateSnapshot build_snapshot(const Corpus& corpus, std::span<const TweetScores> scores,
                                 std::optional<std::string> built_at) {
    if (scores.size() != corpus.tweets.size()) {
        throw ScoreCorpusMismatch("got " + std::to_string(scores.size()) + " scores for " +
                                  std::to_string(corpus.tweets.size()) + " tweets");
    }
    std::map<BucketKey, Accumulator> acc;
    for (std::size_t i = 0; i < corpus.tweets.size(); ++i) {
        const auto& tweet = corpus.tweets[i];
        const auto& score = scores[i];
        const std::string country = tweet.country.value_or(std::string(kUnknownCountryBucket));
        for (auto g : {Granularity::Day, Granularity::Week}) {
            const std::string period =
                g == Granularity::Day ? format_date(tweet.day) : tweet.week.to_string();
            for (const auto& c : {std::optional<std::string>{}, std::optional<std::string>{country}}) {
                Accumulator& a = acc[BucketKey{g, period, c}];
                ++a.count;
                a.mean_sum += score.sentiment.mean;
                a.positivity_sum += score.sentiment.positivity;
                a.negativity_sum += score.sentiment.negativity;
                for (std::size_t e = 0; e < kNumEmotions; ++e) {
                    a.emotion_sums[e] += score.emotions.normalized[e];
                }
            }
        }
    }

    AggregateSnapshot snapshot;
    snapshot.corpus_id = corpus_content_id(corpus);
    snapshot.built_at = built_at ? *built_at : now_utc();
    for (const auto& [key, a] : acc) {
        const double n = static_cast<double>(a.count);
        snapshot.volume[key] = a.count;
        snapshot.sentiment[key] =
            SentimentBucket{a.mean_sum / n, a.positivity_sum / n, a.negativity_sum / n, a.count};
        EmotionBucket eb;
        eb.count = a.count;
        for (std::size_t e = 0; e < kNumEmotions; ++e) {
            eb.means[e] = a.emotion_sums[e] / n;
        }
        snapshot.emotions[key] = eb;
    }
    return snapshot;
}

std::vector<std::string> period_range(Granularity granularity, std::string_view from,
                                      std::string_view to) {
    std::vector<std::string> out;
    if (granularity == Granularity::Day) {
        const auto a = parse_date(from);
        const auto b = parse_date(to);
        if (!a || !b) {
            throw InvalidArgument("periods must be YYYY-MM-DD for day granularity");
        }
        const std::chrono::sys_days first{*a};
        const std::chrono::sys_days last{*b};
        if (first > last) {
            throw InvalidRange("from " + std::string(from) + " is after to " + std::string(to));
        }
        if (static_cast<std::size_t>((last - first).count()) >= kMaxSeriesPoints) {
            throw InvalidArgument("range too long");
        }
        for (auto d = first; d <= last; d += std::chrono::days{1}) {
            out.push_back(format_date(Date{d}));
        }
    } else {
        const auto a = IsoWeek::parse(from);
        const auto b = IsoWeek::parse(to);
        if (!a || !b) {
            throw InvalidArgument("periods must be YYYY-Www for week granularity");
        }
        if (*a > *b) {
            throw InvalidRange("from " + std::string(from) + " is after to " + std::string(to));
        }
        if (static_cast<std::size_t>((b->monday() - a->monday()).count() / 7) >= kMaxSeriesPoints) {
            throw InvalidArgument("range too long");
        }
        for (IsoWeek w = *a; w <= *b; w = w.next()) {
            out.push_back(w.to_string());
        }
    }
    return out;
}

Series query(const AggregateSnapshot& snapshot, Metric metric, Granularity granularity,
             std::string_view from, std::string_view to, const std::optional<std::string>& country) {
    Series series;
    series.metric = metric;
    series.granularity = granularity;
    series.from = std::string(from);
    series.to = std::string(to);
    series.country = country;
    for (auto& period : period_range(granularity, from, to)) {
        BucketKey key{granularity, period, country};
        SeriesPoint point;
        point.period = std::move(period);
        if (auto it = snapshot.volume.find(key); it != snapshot.volume.end()) {
            point.count = it->second;
        }
        if (metric == Metric::Sentiment) {
            if (auto it = snapshot.sentiment.find(key); it != snapshot.sentiment.end()) {
                point.sentiment = it->second;
            }
        } else if (metric == Metric::Emotions) {
            if (auto it = snapshot.emotions.find(key); it != snapshot.emotions.end()) {
                point.emotions = it->second;
            }
        }
        series.points.push_back(std::move(point));
    }
    return series;
}

std::filesystem::path persist(const AggregateSnapshot& snapshot, const std::filesystem::path& path) {
    ordered_json doc = snapshot_body(snapshot);
    doc["checksum"] = checksum_of(doc);
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path());
    }
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw DataError("cannot write " + tmp.string());
        }
        out << doc.dump(1) << '\n';
        if (!out) {
            throw DataError("write failed: " + tmp.string());
        }
    }
    std::filesystem::rename(tmp, path);
    return path;
}

AggregateSnapshot load_snapshot(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw FileNotFound(path.string());
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    const std::string text = buffer.str();
    ordered_json doc = ordered_json::parse(text, nullptr, /*allow_exceptions=*/false);
    if (doc.is_discarded() || !doc.is_object()) {
        throw CorruptSnapshot("snapshot is not valid JSON: " + path.string());
    }
    auto it = doc.find("checksum");
    if (it == doc.end() || !it->is_string()) {
        throw CorruptSnapshot("snapshot has no checksum: " + path.string());
    }
    const std::string stored = it->get<std::string>();
    doc.erase("checksum");
    if (checksum_of(doc) != stored) {
        throw CorruptSnapshot("checksum mismatch: " + path.string());
    }
    try {
        if (doc.at("schema_version").get<int>() != 1) {
            throw CorruptSnapshot("unsupported schema_version in " + path.string());
        }
        AggregateSnapshot s;
        s.corpus_id = doc.at("corpus_id").get<std::string>();
        s.built_at = doc.at("built_at").get<std::string>();
        for (const auto& row : doc.at("volume")) {
            s.volume[key_from_json(row)] = row.at("count").get<std::size_t>();
        }
        for (const auto& row : doc.at("sentiment")) {
            s.sentiment[key_from_json(row)] =
                SentimentBucket{row.at("mean").get<double>(), row.at("positivity").get<double>(),
                                row.at("negativity").get<double>(), row.at("count").get<std::size_t>()};
        }
        for (const auto& row : doc.at("emotions")) {
            EmotionBucket b;
            b.count = row.at("count").get<std::size_t>();
            b.means = row.at("means").get<std::array<double, kNumEmotions>>();
            s.emotions[key_from_json(row)] = b;
        }
        return s;
    } catch (const nlohmann::json::exception& e) {
        throw CorruptSnapshot(std::string("snapshot schema error: ") + e.what());
    }
}

}  // namespace tweetscope

#pragma once

#include "tweetscope/affect.hpp"
#include "tweetscope/ingest.hpp"

#include <array>
#include <compare>
#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tweetscope {

enum class Granularity { Day, Week };
enum class Metric { Volume, Sentiment, Emotions };

std::string_view to_string(Granularity g);
std::string_view to_string(Metric m);
std::optional<Granularity> parse_granularity(std::string_view text);
std::optional<Metric> parse_metric(std::string_view text);

/// Country bucket for tweets without a country code.
inline constexpr std::string_view kUnknownCountryBucket = "unknown";

struct BucketKey {
    Granularity granularity = Granularity::Day;
    std::string period;                  ///< "2020-03-12" or "2020-W11"
    std::optional<std::string> country;  ///< nullopt = all countries

    friend auto operator<=>(const BucketKey&, const BucketKey&) = default;
    friend bool operator==(const BucketKey&, const BucketKey&) = default;
};

struct SentimentBucket {
    double mean = 0.0;  ///< mean of per-tweet mean scores
    double positivity = 0.0;
    double negativity = 0.0;
    std::size_t count = 0;

    friend bool operator==(const SentimentBucket&, const SentimentBucket&) = default;
};

struct EmotionBucket {
    std::array<double, kNumEmotions> means{};  ///< means of normalized components
    std::size_t count = 0;

    friend bool operator==(const EmotionBucket&, const EmotionBucket&) = default;
};

struct AggregateSnapshot {
    std::map<BucketKey, std::size_t> volume;
    std::map<BucketKey, SentimentBucket> sentiment;
    std::map<BucketKey, EmotionBucket> emotions;
    std::string built_at;
    std::string corpus_id;

    friend bool operator==(const AggregateSnapshot&, const AggregateSnapshot&) = default;
};

struct TweetScores {
    SentimentScore sentiment;
    EmotionVector emotions;
};

/// SHA-256 over a canonical rendering of the processed tweets.
std::string corpus_content_id(const Corpus& corpus);

/// Throws ScoreCorpusMismatch when scores.size() != corpus.tweets.size().
/// built_at defaults to the current UTC time, or SOURCE_DATE_EPOCH when set.
AggregateSnapshot build_snapshot(const Corpus& corpus, std::span<const TweetScores> scores,
                                 std::optional<std::string> built_at = std::nullopt);

struct SeriesPoint {
    std::string period;
    std::size_t count = 0;
    std::optional<SentimentBucket> sentiment;
    std::optional<EmotionBucket> emotions;

    friend bool operator==(const SeriesPoint&, const SeriesPoint&) = default;
};

struct Series {
    Metric metric = Metric::Volume;
    Granularity granularity = Granularity::Day;
    std::string from;
    std::string to;
    std::optional<std::string> country;
    std::vector<SeriesPoint> points;

    friend bool operator==(const Series&, const Series&) = default;
};

inline constexpr std::size_t kMaxSeriesPoints = 20000;

/// Contiguous, ascending, gap-filled series over [from, to]. Missing buckets
/// carry count 0 and no measurement. Throws InvalidRange when from > to and
/// InvalidArgument on an unparseable period or an oversized range.
Series query(const AggregateSnapshot& snapshot, Metric metric, Granularity granularity,
             std::string_view from, std::string_view to,
             const std::optional<std::string>& country = std::nullopt);

/// Every period between from and to inclusive.
std::vector<std::string> period_range(Granularity granularity, std::string_view from,
                                      std::string_view to);

/// Write atomically (temp file + rename). Returns the path written.
std::filesystem::path persist(const AggregateSnapshot& snapshot, const std::filesystem::path& path);

/// Throws FileNotFound or CorruptSnapshot.
AggregateSnapshot load_snapshot(const std::filesystem::path& path);

}  // namespace tweetscope

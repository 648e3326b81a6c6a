#pragma once

#include "tweetscope/calendar.hpp"

#include <cstddef>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace tweetscope {

using StopwordSet = std::unordered_set<std::string>;

struct RawTweet {
    std::string id;
    Timestamp created_at{};
    std::string text;
    std::optional<std::string> lang;
    std::optional<std::string> country;
    std::string user_id;
    bool is_retweet = false;
};

struct ProcessedTweet {
    std::string id;
    Timestamp created_at{};
    Date day{};
    IsoWeek week{};
    std::optional<std::string> country;
    std::string user_id;
    bool is_retweet = false;
    std::vector<std::string> surface_tokens;
    std::vector<std::string> stemmed_tokens;

    friend bool operator==(const ProcessedTweet&, const ProcessedTweet&) = default;
};

struct CorpusCounts {
    std::size_t loaded = 0;
    std::size_t skipped = 0;
    std::size_t filtered = 0;

    friend bool operator==(const CorpusCounts&, const CorpusCounts&) = default;
};

struct Corpus {
    std::vector<ProcessedTweet> tweets;
    CorpusCounts counts;
};

enum class Strictness { SkipMalformed, FailFast };

struct LoadResult {
    std::vector<RawTweet> tweets;
    std::size_t loaded = 0;   ///< non-blank lines read
    std::size_t skipped = 0;  ///< malformed lines
};

/// Parse one JSONL line. Throws std::invalid_argument describing the defect.
RawTweet parse_raw_tweet(std::string_view line);

/// Read a JSONL tweet dump. Blank lines are ignored; duplicate ids count as
/// malformed. Throws FileNotFound, or MalformedRecord in FailFast mode.
LoadResult load_jsonl(const std::filesystem::path& path,
                      Strictness strictness = Strictness::SkipMalformed);

/// Stream variant: `sink` receives each well-formed record in file order.
LoadResult load_jsonl(const std::filesystem::path& path, Strictness strictness,
                      const std::function<void(RawTweet&&)>& sink);

StopwordSet load_stopwords(const std::filesystem::path& path);

struct LanguagePolicy {
    const StopwordSet* stopwords = nullptr;
    double min_stopword_ratio = 0.10;
};

/// Keep lang == "en". Without a language tag, keep when the share of
/// whitespace-separated words found in the stopword list reaches the policy
/// threshold.
bool filter_language(const RawTweet& tweet, const LanguagePolicy& policy);

/// Fraction of whitespace-separated lowercase words present in `stopwords`.
double stopword_ratio(std::string_view text, const StopwordSet& stopwords);

ProcessedTweet preprocess(const RawTweet& raw, const StopwordSet& stopwords);

/// load_jsonl + filter_language + preprocess, with counts kept consistent:
/// loaded = tweets + skipped + filtered.
Corpus ingest_file(const std::filesystem::path& path, const StopwordSet& stopwords,
                   Strictness strictness = Strictness::SkipMalformed);

}  // namespace tweetscope

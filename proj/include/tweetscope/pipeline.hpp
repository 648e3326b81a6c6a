#pragma once

#include "tweetscope/aggregate.hpp"
#include "tweetscope/ingest.hpp"
#include "tweetscope/lexicon.hpp"
#include "tweetscope/topics.hpp"

#include <json.hpp>

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace tweetscope {

/// Lexicon, stopword and term-list files used by the stages.
struct ResourcePaths {
    std::filesystem::path afinn;
    std::filesystem::path nrc;
    std::filesystem::path stopwords;
    std::filesystem::path terms;

    /// Bundled files under TWEETSCOPE_RESOURCE_DIR, or the build-time data
    /// directory when the variable is unset.
    static ResourcePaths defaults();
    static ResourcePaths under(const std::filesystem::path& data_root);
};

struct StageTiming {
    std::string stage;
    double seconds = 0.0;
};

struct RunManifest {
    std::string command;
    std::map<std::string, std::string> inputs;
    nlohmann::json config = nlohmann::json::object();
    std::optional<CorpusCounts> counts;
    std::vector<std::filesystem::path> outputs;
    std::vector<StageTiming> durations;
    std::string finished_at;

    nlohmann::json to_json() const;
};

std::vector<TweetScores> score_corpus(const Corpus& corpus, const SentimentLexicon& afinn,
                                      const EmotionLexicon& nrc);

RunManifest run_ingest(const std::filesystem::path& input, const std::filesystem::path& out_dir,
                       const ResourcePaths& resources,
                       Strictness strictness = Strictness::SkipMalformed);

RunManifest run_analyze(const std::filesystem::path& dir, const ResourcePaths& resources);

struct TopicsOptions {
    LdaConfig config = LdaConfig::with_topics(10);
    VocabularyOptions vocab;
    std::size_t n_words = 50;
    bool include_matrices = false;
    unsigned threads = 0;
};

RunManifest run_topics(const std::filesystem::path& dir, const TopicsOptions& options);

RunManifest run_controversy(const std::filesystem::path& dir, const ResourcePaths& resources);

/// RFC-4180 CSV of a series: header row plus one row per period. Missing
/// measurements are empty cells.
std::string series_csv(const Series& series);

/// Query the directory's snapshot; from/to default to the snapshot's range.
Series load_series(const std::filesystem::path& dir, Metric metric, Granularity granularity,
                   std::optional<std::string> from, std::optional<std::string> to,
                   std::optional<std::string> country);

/// Write manifests/<command>.json and return its path.
std::filesystem::path write_manifest(const std::filesystem::path& dir, const RunManifest& manifest);

}  // namespace tweetscope

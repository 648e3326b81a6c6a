#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace tweetscope {

/// A vocabulary theme planted in one week of the synthetic corpus.
struct PlantedTheme {
    std::size_t week_offset;  ///< 0-based week within the corpus
    std::string signature;    ///< surface form, always present in theme tweets
    std::vector<std::string> words;
};

struct SynthOptions {
    std::size_t num_tweets = 2000;
    std::uint64_t seed = 42;
    int start_year = 2020;
    unsigned start_week = 9;  ///< ISO week of the first week
    std::size_t num_weeks = 6;
    std::size_t negative_week_offset = 2;  ///< 0-based; the third week
    double theme_rate = 0.30;       ///< share of a theme week's tweets carrying the theme
    double controversy_rate = 0.08;
    double us_share = 0.60;         ///< share of controversy tweets tagged US
    double foreign_rate = 0.02;     ///< non-English tweets (dropped at ingest)
    double untagged_lang_rate = 0.15;
};

/// Themes planted by generate_synthetic_tweets.
std::vector<PlantedTheme> planted_themes();

/// JSONL lines for a synthetic pandemic-discussion corpus with a planted
/// negative week, US-heavy controversial-term usage, and weekly themes.
std::vector<std::string> generate_synthetic_tweets(const SynthOptions& options = {});

void write_synthetic_tweets(const std::filesystem::path& path, const SynthOptions& options = {});

}  // namespace tweetscope

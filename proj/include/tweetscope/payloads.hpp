#pragma once

// JSON documents served under /api/v1. Batch tools and the HTTP server both
// render through these functions so their outputs agree byte for byte.

#include "tweetscope/aggregate.hpp"
#include "tweetscope/artifacts.hpp"
#include "tweetscope/controversy.hpp"
#include "tweetscope/topics.hpp"

#include <json.hpp>

#include <span>
#include <string>

namespace tweetscope {

nlohmann::json series_json(const Series& series);

nlohmann::json topics_json(const std::string& week, const WeekTopics& topics, std::size_t n_words);

nlohmann::json terms_json(std::span<const std::string> phrases,
                          std::span<const ControversyHit> hits);

nlohmann::json cooccurrence_json(const CooccurrenceTable& table, std::size_t top_n);

nlohmann::json meta_json(const AggregateSnapshot& snapshot, const WeeklyTopics* topics);

nlohmann::json error_json(std::string_view code, std::string_view message);

}  // namespace tweetscope

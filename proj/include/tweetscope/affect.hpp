#pragma once

#include "tweetscope/lexicon.hpp"

#include <array>
#include <cstddef>
#include <span>
#include <string>

namespace tweetscope {

struct SentimentScore {
    int sum = 0;
    double mean = 0.0;    ///< sum / matched, 0 without matches
    int positivity = 0;   ///< sum of positive valences
    int negativity = 0;   ///< absolute sum of negative valences
    std::size_t matched = 0;

    friend bool operator==(const SentimentScore&, const SentimentScore&) = default;
};

struct EmotionVector {
    std::array<std::size_t, kNumEmotions> counts{};
    std::array<double, kNumEmotions> normalized{};

    std::size_t total() const noexcept;

    friend bool operator==(const EmotionVector&, const EmotionVector&) = default;
};

/// Greedy left-to-right longest match over the lexicon's multi-word terms;
/// a token is consumed by at most one match.
SentimentScore score_sentiment(std::span<const std::string> tokens, const SentimentLexicon& lex);

/// Count every token occurrence once per emotion its word carries.
EmotionVector score_emotions(std::span<const std::string> tokens, const EmotionLexicon& lex);

}  // namespace tweetscope

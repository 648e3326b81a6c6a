#include "tweetscope/affect.hpp"

#include <algorithm>
#include <numeric>

namespace tweetscope {

std::size_t EmotionVector::total() const noexcept {
    return std::accumulate(counts.begin(), counts.end(), std::size_t{0});
}

SentimentScore score_sentiment(std::span<const std::string> tokens, const SentimentLexicon& lex) {
    SentimentScore score;
    const std::size_t longest = std::max<std::size_t>(lex.max_words(), 1);
    std::string window;
    std::size_t i = 0;
    while (i < tokens.size()) {
        std::size_t consumed = 1;
        for (std::size_t width = std::min(longest, tokens.size() - i); width >= 1; --width) {
            window = tokens[i];
            for (std::size_t j = 1; j < width; ++j) {
                window += ' ';
                window += tokens[i + j];
            }
            if (auto valence = lex.find(window)) {
                score.sum += *valence;
                if (*valence > 0) {
                    score.positivity += *valence;
                } else {
                    score.negativity -= *valence;
                }
                ++score.matched;
                consumed = width;
                break;
            }
        }
        i += consumed;
    }
    if (score.matched > 0) {
        score.mean = static_cast<double>(score.sum) / static_cast<double>(score.matched);
    }
    return score;
}

EmotionVector score_emotions(std::span<const std::string> tokens, const EmotionLexicon& lex) {
    EmotionVector vec;
    for (const auto& token : tokens) {
        const EmotionSet set = lex.emotions(token);
        for (std::size_t e = 0; e < kNumEmotions; ++e) {
            vec.counts[e] += set[e] ? 1 : 0;
        }
    }
    const std::size_t total = vec.total();
    if (total > 0) {
        for (std::size_t e = 0; e < kNumEmotions; ++e) {
            vec.normalized[e] = static_cast<double>(vec.counts[e]) / static_cast<double>(total);
        }
    }
    return vec;
}

}  // namespace tweetscope

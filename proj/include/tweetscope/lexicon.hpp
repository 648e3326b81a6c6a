#pragma once

#include <array>
#include <bitset>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>

namespace tweetscope {

/// Plutchik's eight primary emotions, in reporting order.
enum class Emotion : std::size_t {
    Anger,
    Fear,
    Sadness,
    Disgust,
    Surprise,
    Anticipation,
    Trust,
    Joy,
};

inline constexpr std::size_t kNumEmotions = 8;

inline constexpr std::array<std::string_view, kNumEmotions> kEmotionNames = {
    "anger", "fear", "sadness", "disgust", "surprise", "anticipation", "trust", "joy"};

std::optional<Emotion> emotion_from_name(std::string_view name);

using EmotionSet = std::bitset<kNumEmotions>;

/// AFINN-style term -> integer valence in [-5, +5]. Terms hold 1-3
/// space-separated words.
class SentimentLexicon {
public:
    SentimentLexicon() = default;

    /// Throws std::invalid_argument on an invalid term or score, or a duplicate.
    void add(std::string term, int score);

    std::optional<int> find(std::string_view term) const;
    std::size_t size() const noexcept { return entries_.size(); }
    /// Longest term length in words (0 when empty).
    std::size_t max_words() const noexcept { return max_words_; }
    const std::unordered_map<std::string, int>& entries() const noexcept { return entries_; }

    friend bool operator==(const SentimentLexicon& a, const SentimentLexicon& b) {
        return a.entries_ == b.entries_;
    }

private:
    std::unordered_map<std::string, int> entries_;
    std::size_t max_words_ = 0;
};

/// NRC EmoLex word -> subset of the eight emotions. Words whose flags are all
/// zero are kept with an empty set.
class EmotionLexicon {
public:
    EmotionLexicon() = default;

    void add(const std::string& word, std::optional<Emotion> emotion);

    /// Empty set for unknown words.
    EmotionSet emotions(std::string_view word) const;
    bool contains(std::string_view word) const;
    std::size_t size() const noexcept { return entries_.size(); }
    const std::unordered_map<std::string, EmotionSet>& entries() const noexcept {
        return entries_;
    }

    friend bool operator==(const EmotionLexicon& a, const EmotionLexicon& b) {
        return a.entries_ == b.entries_;
    }

private:
    std::unordered_map<std::string, EmotionSet> entries_;
};

/// Load an AFINN TSV file (`term<TAB>score`). Throws FileNotFound or
/// MalformedLexicon.
SentimentLexicon load_afinn(const std::filesystem::path& path);

/// Load an NRC EmoLex word-level TSV file (`word<TAB>category<TAB>flag`).
/// The positive/negative categories are accepted and discarded.
EmotionLexicon load_nrc(const std::filesystem::path& path);

}  // namespace tweetscope

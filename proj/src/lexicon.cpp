#include "tweetscope/lexicon.hpp"

#include "tweetscope/error.hpp"
#include "tweetscope/text.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <stdexcept>
#include <vector>

namespace tweetscope {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

std::vector<std::string_view> split_tabs(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t tab = line.find('\t', start);
        if (tab == std::string_view::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, tab - start));
        start = tab + 1;
    }
}

std::size_t word_count(std::string_view term) {
    return static_cast<std::size_t>(std::count(term.begin(), term.end(), ' ')) + 1;
}

template <typename Fn>
void for_each_line(const std::filesystem::path& path, Fn&& fn) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw FileNotFound(path.string());
    }
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) {
            continue;
        }
        try {
            fn(std::string_view(line));
        } catch (const std::invalid_argument& e) {
            throw MalformedLexicon(e.what(), path.string(), line_no);
        }
    }
}

}  // namespace

std::optional<Emotion> emotion_from_name(std::string_view name) {
    for (std::size_t i = 0; i < kEmotionNames.size(); ++i) {
        if (kEmotionNames[i] == name) {
            return static_cast<Emotion>(i);
        }
    }
    return std::nullopt;
}

void SentimentLexicon::add(std::string term, int score) {
    if (score < -5 || score > 5) {
        throw std::invalid_argument("score " + std::to_string(score) + " outside [-5, 5]");
    }
    if (term.empty() || term.front() == ' ' || term.back() == ' ' ||
        term.find("  ") != std::string::npos) {
        throw std::invalid_argument("badly spaced term '" + term + "'");
    }
    const std::size_t words = word_count(term);
    if (words > 3) {
        throw std::invalid_argument("term '" + term + "' has more than three words");
    }
    const std::string key = term;
    if (!entries_.emplace(std::move(term), score).second) {
        throw std::invalid_argument("duplicate term '" + key + "'");
    }
    max_words_ = std::max(max_words_, words);
}

std::optional<int> SentimentLexicon::find(std::string_view term) const {
    auto it = entries_.find(std::string(term));
    if (it == entries_.end()) {
        return std::nullopt;
    }
    return it->second;
}

void EmotionLexicon::add(const std::string& word, std::optional<Emotion> emotion) {
    EmotionSet& set = entries_[word];
    if (emotion) {
        set.set(static_cast<std::size_t>(*emotion));
    }
}

EmotionSet EmotionLexicon::emotions(std::string_view word) const {
    auto it = entries_.find(std::string(word));
    return it == entries_.end() ? EmotionSet{} : it->second;
}

bool EmotionLexicon::contains(std::string_view word) const {
    return entries_.contains(std::string(word));
}

SentimentLexicon load_afinn(const std::filesystem::path& path) {
    SentimentLexicon lexicon;
    for_each_line(path, [&](std::string_view line) {
        const auto fields = split_tabs(line);
        if (fields.size() != 2) {
            throw std::invalid_argument("expected 'term<TAB>score'");
        }
        const std::string term = to_lower_utf8(trim(fields[0]));
        const std::string_view score_text = trim(fields[1]);
        int score = 0;
        const char* first = score_text.data();
        const char* last = first + score_text.size();
        if (first != last && *first == '+') {
            ++first;
        }
        auto [ptr, ec] = std::from_chars(first, last, score);
        if (first == last || ec != std::errc{} || ptr != last) {
            throw std::invalid_argument("bad score '" + std::string(score_text) + "'");
        }
        lexicon.add(term, score);
    });
    return lexicon;
}

EmotionLexicon load_nrc(const std::filesystem::path& path) {
    EmotionLexicon lexicon;
    for_each_line(path, [&](std::string_view line) {
        const auto fields = split_tabs(line);
        if (fields.size() != 3) {
            throw std::invalid_argument("expected 'word<TAB>category<TAB>flag'");
        }
        const std::string word = to_lower_utf8(trim(fields[0]));
        const std::string_view category = trim(fields[1]);
        const std::string_view flag = trim(fields[2]);
        if (word.empty()) {
            throw std::invalid_argument("empty word");
        }
        if (flag != "0" && flag != "1") {
            throw std::invalid_argument("flag must be 0 or 1, got '" + std::string(flag) + "'");
        }
        const auto emotion = emotion_from_name(category);
        if (!emotion && category != "positive" && category != "negative") {
            throw std::invalid_argument("unknown category '" + std::string(category) + "'");
        }
        lexicon.add(word, flag == "1" ? emotion : std::nullopt);
    });
    return lexicon;
}

}  // namespace tweetscope

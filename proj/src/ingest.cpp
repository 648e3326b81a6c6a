#include "tweetscope/ingest.hpp"

#include "tweetscope/error.hpp"
#include "tweetscope/text.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <stdexcept>

namespace tweetscope {

using nlohmann::json;

namespace {

std::optional<std::string> optional_string(const json& obj, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) {
        return std::nullopt;
    }
    if (!it->is_string()) {
        throw std::invalid_argument(std::string("field '") + key + "' is not a string");
    }
    return it->get<std::string>();
}

bool valid_country(const std::string& code) {
    return code.size() == 2 && std::all_of(code.begin(), code.end(),
                                           [](char c) { return c >= 'A' && c <= 'Z'; });
}

std::string_view trim_punct(std::string_view word) {
    auto is_punct = [](char c) {
        const auto u = static_cast<unsigned char>(c);
        return u < 0x80 && !((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '\'');
    };
    while (!word.empty() && is_punct(word.front())) word.remove_prefix(1);
    while (!word.empty() && is_punct(word.back())) word.remove_suffix(1);
    return word;
}

}  // namespace

RawTweet parse_raw_tweet(std::string_view line) {
    json obj = json::parse(line.begin(), line.end(), nullptr, /*allow_exceptions=*/false);
    if (obj.is_discarded()) {
        throw std::invalid_argument("invalid JSON");
    }
    if (!obj.is_object()) {
        throw std::invalid_argument("record is not a JSON object");
    }

    RawTweet tweet;
    auto id = obj.find("id");
    if (id == obj.end() || id->is_null()) {
        throw std::invalid_argument("missing id");
    }
    if (id->is_string()) {
        tweet.id = id->get<std::string>();
    } else if (id->is_number_integer()) {
        tweet.id = id->dump();
    } else {
        throw std::invalid_argument("id must be a string");
    }
    if (tweet.id.empty()) {
        throw std::invalid_argument("empty id");
    }

    auto created = optional_string(obj, "created_at");
    if (!created) {
        throw std::invalid_argument("missing created_at");
    }
    auto ts = parse_timestamp(*created);
    if (!ts) {
        throw std::invalid_argument("unparseable created_at '" + *created + "'");
    }
    tweet.created_at = *ts;

    auto text = optional_string(obj, "text");
    if (!text) {
        throw std::invalid_argument("missing text");
    }
    tweet.text = std::move(*text);

    tweet.lang = optional_string(obj, "lang");
    tweet.country = optional_string(obj, "country");
    if (tweet.country && !valid_country(*tweet.country)) {
        throw std::invalid_argument("country '" + *tweet.country +
                                    "' is not an ISO 3166-1 alpha-2 code");
    }
    tweet.user_id = optional_string(obj, "user_id").value_or("");
    if (auto rt = obj.find("is_retweet"); rt != obj.end() && !rt->is_null()) {
        if (!rt->is_boolean()) {
            throw std::invalid_argument("is_retweet is not a boolean");
        }
        tweet.is_retweet = rt->get<bool>();
    }
    return tweet;
}

LoadResult load_jsonl(const std::filesystem::path& path, Strictness strictness,
                      const std::function<void(RawTweet&&)>& sink) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw FileNotFound(path.string());
    }
    LoadResult result;
    std::unordered_set<std::string> seen;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.find_first_not_of(" \t") == std::string::npos) {
            continue;
        }
        ++result.loaded;
        try {
            RawTweet tweet = parse_raw_tweet(line);
            if (!seen.insert(tweet.id).second) {
                throw std::invalid_argument("duplicate id '" + tweet.id + "'");
            }
            sink(std::move(tweet));
        } catch (const std::invalid_argument& e) {
            if (strictness == Strictness::FailFast) {
                throw MalformedRecord(e.what(), path.string(), line_no);
            }
            ++result.skipped;
        }
    }
    return result;
}

LoadResult load_jsonl(const std::filesystem::path& path, Strictness strictness) {
    std::vector<RawTweet> tweets;
    LoadResult result =
        load_jsonl(path, strictness, [&](RawTweet&& t) { tweets.push_back(std::move(t)); });
    result.tweets = std::move(tweets);
    return result;
}

StopwordSet load_stopwords(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw FileNotFound(path.string());
    }
    StopwordSet words;
    std::string line;
    while (std::getline(in, line)) {
        std::string_view w = line;
        while (!w.empty() && (w.back() == '\r' || w.back() == ' ' || w.back() == '\t')) {
            w.remove_suffix(1);
        }
        while (!w.empty() && (w.front() == ' ' || w.front() == '\t')) {
            w.remove_prefix(1);
        }
        if (!w.empty() && w.front() != '#') {
            words.insert(to_lower_utf8(w));
        }
    }
    return words;
}

double stopword_ratio(std::string_view text, const StopwordSet& stopwords) {
    const std::string lower = to_lower_utf8(text);
    std::size_t words = 0;
    std::size_t hits = 0;
    std::size_t i = 0;
    while (i < lower.size()) {
        while (i < lower.size() && std::isspace(static_cast<unsigned char>(lower[i]))) ++i;
        std::size_t end = i;
        while (end < lower.size() && !std::isspace(static_cast<unsigned char>(lower[end]))) ++end;
        if (end > i) {
            ++words;
            const std::string_view word = trim_punct(std::string_view(lower).substr(i, end - i));
            if (!word.empty() && stopwords.contains(std::string(word))) {
                ++hits;
            }
        }
        i = end;
    }
    return words == 0 ? 0.0 : static_cast<double>(hits) / static_cast<double>(words);
}

bool filter_language(const RawTweet& tweet, const LanguagePolicy& policy) {
    if (tweet.lang && *tweet.lang != "und") {
        return *tweet.lang == "en";
    }
    if (policy.stopwords == nullptr) {
        return false;
    }
    return stopword_ratio(tweet.text, *policy.stopwords) >= policy.min_stopword_ratio;
}

ProcessedTweet preprocess(const RawTweet& raw, const StopwordSet& stopwords) {
    ProcessedTweet out;
    out.id = raw.id;
    out.created_at = raw.created_at;
    const auto day = std::chrono::floor<std::chrono::days>(raw.created_at);
    out.day = Date{day};
    out.week = iso_week_of(day);
    out.country = raw.country;
    out.user_id = raw.user_id;
    out.is_retweet = raw.is_retweet;
    out.surface_tokens = tokenize(raw.text);
    for (const auto& token : out.surface_tokens) {
        if (!stopwords.contains(token)) {
            out.stemmed_tokens.push_back(porter_stem(token));
        }
    }
    return out;
}

Corpus ingest_file(const std::filesystem::path& path, const StopwordSet& stopwords,
                   Strictness strictness) {
    Corpus corpus;
    const LanguagePolicy policy{&stopwords};
    const LoadResult result = load_jsonl(path, strictness, [&](RawTweet&& raw) {
        if (filter_language(raw, policy)) {
            corpus.tweets.push_back(preprocess(raw, stopwords));
        } else {
            ++corpus.counts.filtered;
        }
    });
    corpus.counts.loaded = result.loaded;
    corpus.counts.skipped = result.skipped;
    return corpus;
}

}  // namespace tweetscope

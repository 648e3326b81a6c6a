#include "tweetscope/controversy.hpp"

#include "tweetscope/error.hpp"
#include "tweetscope/text.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <unordered_set>

namespace tweetscope {

namespace {

std::vector<std::string> split_words(std::string_view phrase) {
    std::vector<std::string> words;
    std::size_t i = 0;
    while (i < phrase.size()) {
        while (i < phrase.size() && phrase[i] == ' ') ++i;
        std::size_t end = i;
        while (end < phrase.size() && phrase[end] != ' ') ++end;
        if (end > i) words.emplace_back(phrase.substr(i, end - i));
        i = end;
    }
    return words;
}

}  // namespace

TermList::TermList(std::vector<std::string> phrases) {
    if (phrases.empty()) {
        throw InvalidArgument("term list is empty");
    }
    for (auto& raw : phrases) {
        auto words = split_words(raw);
        if (words.empty() || words.size() > 3) {
            throw InvalidArgument("phrase '" + raw + "' must have 1-3 words");
        }
        std::string phrase;
        std::string joined;
        for (const auto& w : words) {
            if (to_lower_utf8(w) != w) {
                throw InvalidArgument("phrase '" + raw + "' is not lowercase");
            }
            if (!phrase.empty()) phrase += ' ';
            phrase += w;
            joined += w;
        }
        if (index_of(phrase)) {
            continue;
        }
        const std::size_t idx = phrases_.size();
        phrases_.push_back(phrase);
        by_first_word_[words.front()].push_back(idx);
        by_concatenated_[joined].push_back(idx);
        words_.push_back(std::move(words));
        concatenated_.push_back(std::move(joined));
    }
}

std::optional<std::size_t> TermList::index_of(std::string_view phrase) const {
    for (std::size_t i = 0; i < phrases_.size(); ++i) {
        if (phrases_[i] == phrase) return i;
    }
    return std::nullopt;
}

TermList load_term_list(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw FileNotFound(path.string());
    }
    std::vector<std::string> phrases;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view v = line;
        while (!v.empty() && (v.back() == '\r' || v.back() == ' ' || v.back() == '\t')) v.remove_suffix(1);
        while (!v.empty() && (v.front() == ' ' || v.front() == '\t')) v.remove_prefix(1);
        if (v.empty() || v.front() == '#') continue;
        const auto words = split_words(v);
        if (words.size() > 3 || to_lower_utf8(v) != v || v.find('\t') != std::string_view::npos) {
            throw MalformedConfig("phrase must be 1-3 lowercase words", path.string(), line_no);
        }
        phrases.emplace_back(v);
    }
    if (phrases.empty()) {
        throw MalformedConfig("term list has no phrases", path.string(), line_no);
    }
    return TermList(std::move(phrases));
}

std::vector<std::string> match_terms(std::span<const std::string> tokens, const TermList& terms) {
    std::vector<bool> found(terms.phrases_.size(), false);
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (auto it = terms.by_concatenated_.find(tokens[i]); it != terms.by_concatenated_.end()) {
            for (std::size_t idx : it->second) found[idx] = true;
        }
        auto it = terms.by_first_word_.find(tokens[i]);
        if (it == terms.by_first_word_.end()) continue;
        for (std::size_t idx : it->second) {
            const auto& words = terms.words_[idx];
            if (i + words.size() > tokens.size()) continue;
            if (std::equal(words.begin(), words.end(), tokens.begin() + static_cast<std::ptrdiff_t>(i))) {
                found[idx] = true;
            }
        }
    }
    std::vector<std::string> out;
    for (std::size_t idx = 0; idx < found.size(); ++idx) {
        if (found[idx]) out.push_back(terms.phrases_[idx]);
    }
    return out;
}

std::vector<ControversyHit> scan_corpus(const Corpus& corpus, const TermList& terms) {
    std::vector<ControversyHit> hits;
    for (const auto& tweet : corpus.tweets) {
        for (auto& term : match_terms(tweet.surface_tokens, terms)) {
            hits.push_back(ControversyHit{tweet.id, std::move(term), tweet.day, tweet.week, tweet.country});
        }
    }
    return hits;
}

CountryBreakdown country_breakdown(std::span<const ControversyHit> hits) {
    CountryBreakdown out;
    std::size_t known = 0;
    for (const auto& hit : hits) {
        if (hit.country) {
            ++out.counts[*hit.country];
            ++known;
        } else {
            ++out.counts[std::string(kUnknownCountry)];
        }
    }
    for (const auto& [country, count] : out.counts) {
        if (country != kUnknownCountry) {
            out.fractions[country] = static_cast<double>(count) / static_cast<double>(known);
        }
    }
    return out;
}

CooccurrenceTable truncate(CooccurrenceTable table, std::size_t top_n) {
    if (table.counts.size() > top_n) {
        table.counts.resize(top_n);
    }
    return table;
}

CooccurrenceTable cooccurrence(const Corpus& corpus, std::span<const ControversyHit> hits,
                               const TermList& terms, std::string_view term,
                               const StopwordSet& stopwords, std::size_t top_n) {
    const auto idx = terms.index_of(term);
    if (!idx) {
        throw UnknownTerm(std::string(term));
    }
    std::unordered_set<std::string> excluded(terms.phrase_words()[*idx].begin(),
                                             terms.phrase_words()[*idx].end());
    excluded.insert(terms.concatenated(*idx));

    std::unordered_set<std::string_view> hit_ids;
    for (const auto& hit : hits) {
        if (hit.term == term) hit_ids.insert(hit.tweet_id);
    }

    CooccurrenceTable table;
    table.term = std::string(term);
    std::map<std::string, std::size_t> counts;
    for (const auto& tweet : corpus.tweets) {
        if (!hit_ids.contains(tweet.id)) continue;
        ++table.total_hits;
        const std::set<std::string_view> distinct(tweet.surface_tokens.begin(), tweet.surface_tokens.end());
        for (auto token : distinct) {
            const std::string key(token);
            if (stopwords.contains(key) || excluded.contains(key)) continue;
            ++counts[key];
        }
    }
    table.counts.assign(counts.begin(), counts.end());
    std::stable_sort(table.counts.begin(), table.counts.end(),
                     [](const auto& a, const auto& b) { return a.second > b.second; });
    return truncate(std::move(table), top_n);
}

}  // namespace tweetscope

#pragma once

#include "tweetscope/ingest.hpp"

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace tweetscope {

/// Controversial phrases (1-3 lowercase words). A multi-word phrase also
/// matches its words joined into one token, the hashtag form.
class TermList {
public:
    TermList() = default;
    /// Throws InvalidArgument on an empty list or an invalid phrase.
    explicit TermList(std::vector<std::string> phrases);

    const std::vector<std::string>& phrases() const noexcept { return phrases_; }
    const std::vector<std::vector<std::string>>& phrase_words() const noexcept { return words_; }
    /// Joined single-token form of phrase i ("wuhan virus" -> "wuhanvirus").
    const std::string& concatenated(std::size_t i) const { return concatenated_[i]; }
    std::optional<std::size_t> index_of(std::string_view phrase) const;
    bool empty() const noexcept { return phrases_.empty(); }

private:
    std::vector<std::string> phrases_;
    std::vector<std::vector<std::string>> words_;
    std::vector<std::string> concatenated_;
    std::unordered_map<std::string, std::vector<std::size_t>> by_first_word_;
    std::unordered_map<std::string, std::vector<std::size_t>> by_concatenated_;

    friend std::vector<std::string> match_terms(std::span<const std::string>, const TermList&);
};

/// Plain text, one phrase per line; blank and '#' lines ignored.
TermList load_term_list(const std::filesystem::path& path);

struct ControversyHit {
    std::string tweet_id;
    std::string term;
    Date day{};
    IsoWeek week{};
    std::optional<std::string> country;

    friend bool operator==(const ControversyHit&, const ControversyHit&) = default;
};

/// Canonical phrases found in the tokens, each at most once, in TermList order.
std::vector<std::string> match_terms(std::span<const std::string> tokens, const TermList& terms);

std::vector<ControversyHit> scan_corpus(const Corpus& corpus, const TermList& terms);

inline constexpr std::string_view kUnknownCountry = "unknown";

struct CountryBreakdown {
    std::map<std::string, std::size_t> counts;  ///< includes "unknown" when present
    std::map<std::string, double> fractions;    ///< known countries only

    friend bool operator==(const CountryBreakdown&, const CountryBreakdown&) = default;
};

CountryBreakdown country_breakdown(std::span<const ControversyHit> hits);

struct CooccurrenceTable {
    std::string term;
    std::vector<std::pair<std::string, std::size_t>> counts;  ///< count desc, then term asc
    std::size_t total_hits = 0;

    friend bool operator==(const CooccurrenceTable&, const CooccurrenceTable&) = default;
};

/// Tweet-level co-occurrence counts for the hit tweets of `term`, excluding
/// stopwords and the phrase's own words. Throws UnknownTerm.
CooccurrenceTable cooccurrence(const Corpus& corpus, std::span<const ControversyHit> hits,
                               const TermList& terms, std::string_view term,
                               const StopwordSet& stopwords, std::size_t top_n);

/// First top_n rows of an already ranked table.
CooccurrenceTable truncate(CooccurrenceTable table, std::size_t top_n);

}  // namespace tweetscope

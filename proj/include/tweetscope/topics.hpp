#pragma once

#include "tweetscope/ingest.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace tweetscope {

/// Dense row-major matrix.
template <typename T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, T fill = T{})
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<T> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    std::span<const T> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using TokenDocs = std::vector<std::vector<std::string>>;

struct Vocabulary {
    std::vector<std::string> terms;  ///< lexicographic
    std::unordered_map<std::string, std::size_t> index;
    std::vector<std::size_t> doc_freq;  ///< parallel to terms

    std::size_t size() const noexcept { return terms.size(); }
    std::optional<std::size_t> find(std::string_view term) const;
};

/// Keep terms whose document frequency lies in [min_df, max_df_ratio * |docs|].
/// Throws EmptyVocabulary when nothing survives, InvalidArgument on bad bounds.
Vocabulary build_vocab(const TokenDocs& docs, std::size_t min_df, double max_df_ratio);

struct LdaConfig {
    std::size_t num_topics = 10;
    double alpha = 5.0;  ///< symmetric document-topic prior
    double beta = 0.01;  ///< symmetric topic-word prior
    std::size_t iterations = 1000;
    std::uint64_t seed = 42;
    std::size_t burn_in = 100;

    /// K topics with alpha = 50 / K and the remaining defaults.
    static LdaConfig with_topics(std::size_t k);

    /// Throws InvalidArgument when a field is out of its domain.
    void validate() const;

    friend bool operator==(const LdaConfig&, const LdaConfig&) = default;
};

/// Collapsed Gibbs sampler state. Each sweep resamples every token position
/// from p(k) ~ (n_dk + alpha) (n_kw + beta) / (n_k + V beta), with the
/// position's own assignment removed from the counts.
class GibbsSampler {
public:
    GibbsSampler(std::vector<std::vector<std::size_t>> docs, std::size_t vocab_size,
                 const LdaConfig& config);

    void sweep();

    std::size_t sweeps_done() const noexcept { return sweeps_; }
    std::size_t num_docs() const noexcept { return docs_.size(); }
    std::size_t vocab_size() const noexcept { return vocab_size_; }
    const LdaConfig& config() const noexcept { return config_; }

    const std::vector<std::vector<std::size_t>>& docs() const noexcept { return docs_; }
    const std::vector<std::vector<std::uint32_t>>& assignments() const noexcept { return z_; }
    const Matrix<std::uint32_t>& doc_topic() const noexcept { return n_dk_; }
    const Matrix<std::uint32_t>& topic_word() const noexcept { return n_kw_; }
    const std::vector<std::uint64_t>& topic_totals() const noexcept { return n_k_; }

    /// theta[d][k] = (n_dk + alpha) / (len(d) + K alpha)
    Matrix<double> theta() const;
    /// phi[k][w] = (n_kw + beta) / (n_k + V beta)
    Matrix<double> phi() const;

private:
    std::size_t draw_topic(std::size_t doc, std::size_t word);

    LdaConfig config_;
    std::size_t vocab_size_;
    std::vector<std::vector<std::size_t>> docs_;
    std::vector<std::vector<std::uint32_t>> z_;
    Matrix<std::uint32_t> n_dk_;
    Matrix<std::uint32_t> n_kw_;
    std::vector<std::uint64_t> n_k_;
    std::vector<double> weights_;
    std::mt19937_64 rng_;
    std::size_t sweeps_ = 0;
};

struct LdaModel {
    LdaConfig config;
    Vocabulary vocab;
    std::vector<std::size_t> doc_index;  ///< input position of each modelled doc
    std::vector<std::vector<std::size_t>> docs;
    std::vector<std::vector<std::uint32_t>> z;
    Matrix<std::uint32_t> n_dk;
    Matrix<std::uint32_t> n_kw;
    std::vector<std::uint64_t> n_k;
    Matrix<double> theta;
    Matrix<double> phi;

    std::size_t num_topics() const noexcept { return config.num_topics; }
};

/// Map token documents onto vocabulary ids, dropping out-of-vocabulary tokens
/// and documents left empty. `kept` receives input positions of the survivors.
std::vector<std::vector<std::size_t>> encode_docs(const TokenDocs& docs, const Vocabulary& vocab,
                                                  std::vector<std::size_t>* kept = nullptr);

/// Fit over an explicit vocabulary. Throws EmptyCorpus when no document has an
/// in-vocabulary token.
LdaModel fit_lda(const TokenDocs& docs, const LdaConfig& config, Vocabulary vocab);

/// Fit with every term of `docs` in the vocabulary.
LdaModel fit_lda(const TokenDocs& docs, const LdaConfig& config);

using TopWord = std::pair<std::string, double>;

/// n highest-phi terms of topic k, ties broken lexicographically.
std::vector<TopWord> top_words(const LdaModel& model, std::size_t topic, std::size_t n);

struct VocabularyOptions {
    std::size_t min_df = 5;
    double max_df_ratio = 0.5;
};

struct WeekTopics {
    LdaConfig config;  ///< seed is the week-derived seed
    std::size_t num_docs = 0;
    std::vector<std::string> vocabulary;
    std::vector<std::vector<TopWord>> topics;
    std::optional<LdaModel> model;  ///< kept only when requested
};

struct WeeklyTopics {
    LdaConfig config;
    VocabularyOptions vocab_options;
    std::size_t n_words = 0;
    std::map<std::string, WeekTopics> weeks;  ///< keyed by ISO week
    std::vector<std::string> warnings;
};

/// FNV-1a 64-bit, used to derive per-week seeds.
std::uint64_t fnv1a64(std::string_view text);

/// One independent LDA per ISO week over stemmed tokens; week seed is
/// config.seed XOR fnv1a64(week key). Weeks with fewer non-empty documents
/// than topics, or without vocabulary, are skipped with a warning. Weeks are
/// fitted concurrently on up to `threads` workers (0 = hardware concurrency).
WeeklyTopics weekly_topics(const Corpus& corpus, const LdaConfig& config, std::size_t n_words,
                           const VocabularyOptions& vocab_options = {}, bool keep_models = false,
                           unsigned threads = 0);

}  // namespace tweetscope

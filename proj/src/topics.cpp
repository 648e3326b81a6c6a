#include "tweetscope/topics.hpp"

#include "tweetscope/error.hpp"
#include "tweetscope/random.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <limits>
#include <set>
#include <thread>

namespace tweetscope {


std::optional<std::size_t> Vocabulary::find(std::string_view term) const {
    auto it = index.find(std::string(term));
    if (it == index.end()) {
        return std::nullopt;
    }
    return it->second;
}

Vocabulary build_vocab(const TokenDocs& docs, std::size_t min_df, double max_df_ratio) {
    if (min_df < 1) {
        throw InvalidArgument("min_df must be >= 1");
    }
    if (!(max_df_ratio > 0.0 && max_df_ratio <= 1.0)) {
        throw InvalidArgument("max_df_ratio must lie in (0, 1]");
    }
    std::map<std::string, std::size_t> df;
    for (const auto& doc : docs) {
        const std::set<std::string_view> distinct(doc.begin(), doc.end());
        for (auto term : distinct) {
            ++df[std::string(term)];
        }
    }
    const double max_df = max_df_ratio * static_cast<double>(docs.size());
    Vocabulary vocab;
    for (const auto& [term, count] : df) {
        if (count >= min_df && static_cast<double>(count) <= max_df + 1e-9) {
            vocab.index.emplace(term, vocab.terms.size());
            vocab.terms.push_back(term);
            vocab.doc_freq.push_back(count);
        }
    }
    if (vocab.terms.empty()) {
        throw EmptyVocabulary();
    }
    return vocab;
}

LdaConfig LdaConfig::with_topics(std::size_t k) {
    LdaConfig config;
    config.num_topics = k;
    config.alpha = 50.0 / static_cast<double>(k);
    return config;
}

void LdaConfig::validate() const {
    if (num_topics < 1) {
        throw InvalidArgument("number of topics must be >= 1");
    }
    if (num_topics > std::numeric_limits<std::uint32_t>::max()) {
        throw InvalidArgument("number of topics too large");
    }
    if (!(alpha > 0.0)) {
        throw InvalidArgument("alpha must be > 0");
    }
    if (!(beta > 0.0)) {
        throw InvalidArgument("beta must be > 0");
    }
    if (iterations < 1) {
        throw InvalidArgument("iterations must be >= 1");
    }
    if (burn_in >= iterations) {
        throw InvalidArgument("burn_in must be < iterations");
    }
}

GibbsSampler::GibbsSampler(std::vector<std::vector<std::size_t>> docs, std::size_t vocab_size,
                           const LdaConfig& config)
    : config_(config),
      vocab_size_(vocab_size),
      docs_(std::move(docs)),
      n_dk_(docs_.size(), config.num_topics),
      n_kw_(config.num_topics, vocab_size),
      n_k_(config.num_topics, 0),
      weights_(config.num_topics, 0.0),
      rng_(config.seed) {
    config_.validate();
    if (docs_.empty()) {
        throw EmptyCorpus();
    }
    if (vocab_size_ == 0) {
        throw EmptyVocabulary();
    }
    const std::size_t k_count = config_.num_topics;
    z_.resize(docs_.size());
    for (std::size_t d = 0; d < docs_.size(); ++d) {
        z_[d].resize(docs_[d].size());
        for (std::size_t i = 0; i < docs_[d].size(); ++i) {
            const std::size_t w = docs_[d][i];
            if (w >= vocab_size_) {
                throw InvalidArgument("word id outside vocabulary");
            }
            const std::size_t k = uniform_index(rng_, k_count);
            z_[d][i] = static_cast<std::uint32_t>(k);
            ++n_dk_(d, k);
            ++n_kw_(k, w);
            ++n_k_[k];
        }
    }
}

std::size_t GibbsSampler::draw_topic(std::size_t doc, std::size_t word) {
    const std::size_t k_count = config_.num_topics;
    const double v_beta = static_cast<double>(vocab_size_) * config_.beta;
    double total = 0.0;
    for (std::size_t k = 0; k < k_count; ++k) {
        total += (n_dk_(doc, k) + config_.alpha) * (n_kw_(k, word) + config_.beta) /
                 (static_cast<double>(n_k_[k]) + v_beta);
        weights_[k] = total;
    }
    const double u = uniform_unit(rng_) * total;
    for (std::size_t k = 0; k + 1 < k_count; ++k) {
        if (u < weights_[k]) {
            return k;
        }
    }
    return k_count - 1;
}

void GibbsSampler::sweep() {
    for (std::size_t d = 0; d < docs_.size(); ++d) {
        for (std::size_t i = 0; i < docs_[d].size(); ++i) {
            const std::size_t w = docs_[d][i];
            const std::size_t old_k = z_[d][i];
            --n_dk_(d, old_k);
            --n_kw_(old_k, w);
            --n_k_[old_k];

            const std::size_t new_k = draw_topic(d, w);
            z_[d][i] = static_cast<std::uint32_t>(new_k);
            ++n_dk_(d, new_k);
            ++n_kw_(new_k, w);
            ++n_k_[new_k];
        }
    }
    ++sweeps_;
}

Matrix<double> GibbsSampler::theta() const {
    const std::size_t k_count = config_.num_topics;
    Matrix<double> theta(docs_.size(), k_count);
    const double k_alpha = static_cast<double>(k_count) * config_.alpha;
    for (std::size_t d = 0; d < docs_.size(); ++d) {
        const double denom = static_cast<double>(docs_[d].size()) + k_alpha;
        for (std::size_t k = 0; k < k_count; ++k) {
            theta(d, k) = (n_dk_(d, k) + config_.alpha) / denom;
        }
    }
    return theta;
}

Matrix<double> GibbsSampler::phi() const {
    const std::size_t k_count = config_.num_topics;
    Matrix<double> phi(k_count, vocab_size_);
    const double v_beta = static_cast<double>(vocab_size_) * config_.beta;
    for (std::size_t k = 0; k < k_count; ++k) {
        const double denom = static_cast<double>(n_k_[k]) + v_beta;
        for (std::size_t w = 0; w < vocab_size_; ++w) {
            phi(k, w) = (n_kw_(k, w) + config_.beta) / denom;
        }
    }
    return phi;
}

std::vector<std::vector<std::size_t>> encode_docs(const TokenDocs& docs, const Vocabulary& vocab,
                                                  std::vector<std::size_t>* kept) {
    std::vector<std::vector<std::size_t>> encoded;
    for (std::size_t d = 0; d < docs.size(); ++d) {
        std::vector<std::size_t> ids;
        for (const auto& token : docs[d]) {
            if (auto id = vocab.find(token)) {
                ids.push_back(*id);
            }
        }
        if (!ids.empty()) {
            encoded.push_back(std::move(ids));
            if (kept != nullptr) {
                kept->push_back(d);
            }
        }
    }
    return encoded;
}

LdaModel fit_lda(const TokenDocs& docs, const LdaConfig& config, Vocabulary vocab) {
    config.validate();
    if (docs.empty()) {
        throw EmptyCorpus();
    }
    if (vocab.size() == 0) {
        throw EmptyVocabulary();
    }
    LdaModel model;
    model.config = config;
    auto encoded = encode_docs(docs, vocab, &model.doc_index);
    if (encoded.empty()) {
        throw EmptyCorpus();
    }
    GibbsSampler sampler(std::move(encoded), vocab.size(), config);
    for (std::size_t it = 0; it < config.iterations; ++it) {
        sampler.sweep();
    }
    model.vocab = std::move(vocab);
    model.docs = sampler.docs();
    model.z = sampler.assignments();
    model.n_dk = sampler.doc_topic();
    model.n_kw = sampler.topic_word();
    model.n_k = sampler.topic_totals();
    model.theta = sampler.theta();
    model.phi = sampler.phi();
    return model;
}

LdaModel fit_lda(const TokenDocs& docs, const LdaConfig& config) {
    if (std::all_of(docs.begin(), docs.end(), [](const auto& d) { return d.empty(); })) {
        throw EmptyCorpus();
    }
    return fit_lda(docs, config, build_vocab(docs, 1, 1.0));
}

std::vector<TopWord> top_words(const LdaModel& model, std::size_t topic, std::size_t n) {
    if (topic >= model.num_topics()) {
        throw TopicOutOfRange(topic, model.num_topics());
    }
    const auto row = model.phi.row(topic);
    std::vector<std::size_t> order(row.size());
    for (std::size_t w = 0; w < order.size(); ++w) {
        order[w] = w;
    }
    const std::size_t count = std::min(n, order.size());
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(count), order.end(),
                      [&](std::size_t a, std::size_t b) {
                          if (row[a] != row[b]) {
                              return row[a] > row[b];
                          }
                          return model.vocab.terms[a] < model.vocab.terms[b];
                      });
    std::vector<TopWord> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        out.emplace_back(model.vocab.terms[order[i]], row[order[i]]);
    }
    return out;
}

std::uint64_t fnv1a64(std::string_view text) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        hash ^= c;
        hash *= 0x100000001b3ULL;
    }
    return hash;
}

WeeklyTopics weekly_topics(const Corpus& corpus, const LdaConfig& config, std::size_t n_words,
                           const VocabularyOptions& vocab_options, bool keep_models,
                           unsigned threads) {
    config.validate();
    WeeklyTopics result;
    result.config = config;
    result.vocab_options = vocab_options;
    result.n_words = n_words;

    std::map<std::string, TokenDocs> by_week;
    for (const auto& tweet : corpus.tweets) {
        by_week[tweet.week.to_string()].push_back(tweet.stemmed_tokens);
    }

    struct Job {
        std::string week;
        const TokenDocs* docs;
        std::optional<WeekTopics> topics;
        std::string warning;
        std::exception_ptr error;
    };
    std::vector<Job> jobs;
    for (const auto& [week, docs] : by_week) {
        jobs.push_back(Job{week, &docs, std::nullopt, {}, nullptr});
    }

    auto run = [&](Job& job) {
        const TokenDocs& docs = *job.docs;
        Vocabulary vocab;
        try {
            vocab = build_vocab(docs, vocab_options.min_df, vocab_options.max_df_ratio);
        } catch (const EmptyVocabulary&) {
            job.warning = "week " + job.week + ": empty vocabulary after filtering, skipped";
            return;
        }
        const std::size_t usable = encode_docs(docs, vocab).size();
        if (usable < config.num_topics) {
            job.warning = "week " + job.week + ": " + std::to_string(usable) +
                          " documents < K=" + std::to_string(config.num_topics) + ", skipped";
            return;
        }
        LdaConfig week_config = config;
        week_config.seed = config.seed ^ fnv1a64(job.week);
        LdaModel model = fit_lda(docs, week_config, std::move(vocab));

        WeekTopics out;
        out.config = week_config;
        out.num_docs = model.docs.size();
        out.vocabulary = model.vocab.terms;
        for (std::size_t k = 0; k < model.num_topics(); ++k) {
            out.topics.push_back(top_words(model, k, n_words));
        }
        if (keep_models) {
            out.model = std::move(model);
        }
        job.topics = std::move(out);
    };

    auto run_guarded = [&](Job& job) {
        try {
            run(job);
        } catch (...) {
            job.error = std::current_exception();
        }
    };

    unsigned workers = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
    workers = std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(jobs.size(), 1)));
    if (workers <= 1) {
        for (auto& job : jobs) {
            run_guarded(job);
        }
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < workers; ++t) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < jobs.size(); i = next++) {
                    run_guarded(jobs[i]);
                }
            });
        }
    }

    for (auto& job : jobs) {
        if (job.error) {
            std::rethrow_exception(job.error);
        }
        if (job.topics) {
            result.weeks.emplace(job.week, std::move(*job.topics));
        } else {
            result.warnings.push_back(job.warning);
        }
    }
    return result;
}

}  // namespace tweetscope

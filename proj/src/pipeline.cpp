#include "tweetscope/pipeline.hpp"

#include "tweetscope/artifacts.hpp"
#include "tweetscope/controversy.hpp"
#include "tweetscope/error.hpp"

#include <chrono>
#include <cstdlib>
#include <iostream>

#ifndef TWEETSCOPE_DATA_DIR
#define TWEETSCOPE_DATA_DIR "data"
#endif

namespace tweetscope {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

class StageClock {
public:
    explicit StageClock(RunManifest& manifest, std::string stage)
        : manifest_(manifest), stage_(std::move(stage)), start_(std::chrono::steady_clock::now()) {
        std::clog << "[tweetscope] " << manifest_.command << ": " << stage_ << "\n";
    }
    ~StageClock() {
        const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start_;
        manifest_.durations.push_back(StageTiming{stage_, elapsed.count()});
    }

private:
    RunManifest& manifest_;
    std::string stage_;
    std::chrono::steady_clock::time_point start_;
};

std::string now_utc() {
    return format_timestamp(std::chrono::floor<std::chrono::seconds>(std::chrono::system_clock::now()));
}

std::string csv_field(std::string_view value) {
    if (value.find_first_of(",\"\r\n") == std::string_view::npos) {
        return std::string(value);
    }
    std::string out = "\"";
    for (char c : value) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string number(double v) {
    return json(v).dump();
}

}  // namespace

ResourcePaths ResourcePaths::under(const fs::path& root) {
    return ResourcePaths{root / "lexicons" / "AFINN-111.txt",
                         root / "lexicons" / "NRC-Emotion-Lexicon-Wordlevel.txt",
                         root / "stopwords" / "english.txt", root / "terms" / "controversial.txt"};
}

ResourcePaths ResourcePaths::defaults() {
    if (const char* dir = std::getenv("TWEETSCOPE_RESOURCE_DIR"); dir != nullptr && *dir != '\0') {
        return under(dir);
    }
    return under(TWEETSCOPE_DATA_DIR);
}

json RunManifest::to_json() const {
    json outs = json::array();
    for (const auto& p : outputs) {
        outs.push_back(p.string());
    }
    json timings = json::object();
    for (const auto& t : durations) {
        timings[t.stage] = t.seconds;
    }
    json doc{{"command", command},
             {"inputs", inputs},
             {"config", config},
             {"outputs", std::move(outs)},
             {"durations_seconds", std::move(timings)},
             {"finished_at", finished_at}};
    if (counts) {
        doc["counts"] = json{{"loaded", counts->loaded},
                             {"skipped", counts->skipped},
                             {"filtered", counts->filtered},
                             {"kept", counts->loaded - counts->skipped - counts->filtered}};
    }
    return doc;
}

fs::path write_manifest(const fs::path& dir, const RunManifest& manifest) {
    for (const auto& out : manifest.outputs) {
        if (!fs::exists(out)) {
            throw Error("manifest lists missing output " + out.string());
        }
    }
    const fs::path path = dir / layout::kManifestDir / (manifest.command + ".json");
    RunManifest stamped = manifest;
    stamped.finished_at = now_utc();
    write_file_atomic(path, stamped.to_json().dump(2) + "\n");
    return path;
}

std::vector<TweetScores> score_corpus(const Corpus& corpus, const SentimentLexicon& afinn,
                                      const EmotionLexicon& nrc) {
    std::vector<TweetScores> scores;
    scores.reserve(corpus.tweets.size());
    for (const auto& tweet : corpus.tweets) {
        scores.push_back(TweetScores{score_sentiment(tweet.surface_tokens, afinn),
                                     score_emotions(tweet.surface_tokens, nrc)});
    }
    return scores;
}

RunManifest run_ingest(const fs::path& input, const fs::path& out_dir, const ResourcePaths& resources,
                       Strictness strictness) {
    RunManifest manifest;
    manifest.command = "ingest";
    manifest.inputs = {{"input", input.string()}, {"stopwords", resources.stopwords.string()}};
    manifest.config = json{{"strictness", strictness == Strictness::FailFast ? "fail-fast" : "skip-malformed"},
                           {"min_stopword_ratio", LanguagePolicy{}.min_stopword_ratio}};
    Corpus corpus;
    {
        StageClock clock(manifest, "load+preprocess");
        const StopwordSet stopwords = load_stopwords(resources.stopwords);
        corpus = ingest_file(input, stopwords, strictness);
    }
    {
        StageClock clock(manifest, "write");
        manifest.outputs = write_corpus(out_dir, corpus);
    }
    manifest.counts = corpus.counts;
    manifest.outputs.push_back(write_manifest(out_dir, manifest));
    return manifest;
}

RunManifest run_analyze(const fs::path& dir, const ResourcePaths& resources) {
    RunManifest manifest;
    manifest.command = "analyze";
    manifest.inputs = {{"corpus", (dir / layout::kCorpusDir).string()},
                       {"afinn", resources.afinn.string()},
                       {"nrc", resources.nrc.string()}};
    const Corpus corpus = read_corpus(dir);
    std::vector<TweetScores> scores;
    {
        StageClock clock(manifest, "score");
        const SentimentLexicon afinn = load_afinn(resources.afinn);
        const EmotionLexicon nrc = load_nrc(resources.nrc);
        scores = score_corpus(corpus, afinn, nrc);
    }
    {
        StageClock clock(manifest, "aggregate");
        const AggregateSnapshot snapshot = build_snapshot(corpus, scores);
        manifest.outputs.push_back(persist(snapshot, dir / layout::kSnapshot));
        manifest.config = json{{"corpus_id", snapshot.corpus_id}, {"sentiment_bucket", "mean of per-tweet means"}};
    }
    manifest.counts = corpus.counts;
    manifest.outputs.push_back(write_manifest(dir, manifest));
    return manifest;
}

RunManifest run_topics(const fs::path& dir, const TopicsOptions& options) {
    RunManifest manifest;
    manifest.command = "topics";
    manifest.inputs = {{"corpus", (dir / layout::kCorpusDir).string()}};
    const auto& c = options.config;
    manifest.config = json{{"num_topics", c.num_topics}, {"alpha", c.alpha},
                           {"beta", c.beta},             {"iterations", c.iterations},
                           {"burn_in", c.burn_in},       {"seed", c.seed},
                           {"min_df", options.vocab.min_df},
                           {"max_df_ratio", options.vocab.max_df_ratio},
                           {"n_words", options.n_words}};
    const Corpus corpus = read_corpus(dir);
    WeeklyTopics topics;
    {
        StageClock clock(manifest, "fit");
        topics = weekly_topics(corpus, options.config, options.n_words, options.vocab,
                               options.include_matrices, options.threads);
    }
    for (const auto& w : topics.warnings) {
        std::clog << "[tweetscope] warning: " << w << "\n";
    }
    manifest.config["warnings"] = topics.warnings;
    write_topics(dir / layout::kTopics, topics, options.include_matrices);
    manifest.outputs.push_back(dir / layout::kTopics);
    manifest.counts = corpus.counts;
    manifest.outputs.push_back(write_manifest(dir, manifest));
    return manifest;
}

RunManifest run_controversy(const fs::path& dir, const ResourcePaths& resources) {
    RunManifest manifest;
    manifest.command = "controversy";
    manifest.inputs = {{"corpus", (dir / layout::kCorpusDir).string()},
                       {"terms", resources.terms.string()},
                       {"stopwords", resources.stopwords.string()}};
    const Corpus corpus = read_corpus(dir);
    {
        StageClock clock(manifest, "scan");
        const TermList terms = load_term_list(resources.terms);
        const StopwordSet stopwords = load_stopwords(resources.stopwords);
        const ControversyResults results = analyze_controversy(corpus, terms, stopwords);
        manifest.config = json{{"phrases", results.phrases}, {"hits", results.hits.size()}};
        write_controversy(dir / layout::kControversy, results);
    }
    manifest.outputs.push_back(dir / layout::kControversy);
    manifest.counts = corpus.counts;
    manifest.outputs.push_back(write_manifest(dir, manifest));
    return manifest;
}

Series load_series(const fs::path& dir, Metric metric, Granularity granularity,
                   std::optional<std::string> from, std::optional<std::string> to,
                   std::optional<std::string> country) {
    const fs::path path = dir / layout::kSnapshot;
    if (!fs::exists(path)) {
        throw DataError("no snapshot found in " + dir.string() + " (run `analyze` first)");
    }
    const AggregateSnapshot snapshot = load_snapshot(path);
    if (!from || !to) {
        std::optional<std::string> lo;
        std::optional<std::string> hi;
        for (const auto& [key, count] : snapshot.volume) {
            if (key.granularity != granularity || key.country) continue;
            if (!lo || key.period < *lo) lo = key.period;
            if (!hi || key.period > *hi) hi = key.period;
        }
        if (!lo) {
            throw DataError("snapshot is empty; pass --from and --to");
        }
        if (!from) from = lo;
        if (!to) to = hi;
    }
    return query(snapshot, metric, granularity, *from, *to, country);
}

std::string series_csv(const Series& series) {
    std::string out;
    auto row = [&out](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i > 0) out += ',';
            out += csv_field(cells[i]);
        }
        out += "\r\n";
    };
    std::vector<std::string> header{"period", "count"};
    if (series.metric == Metric::Sentiment) {
        header.insert(header.end(), {"mean", "positivity", "negativity"});
    } else if (series.metric == Metric::Emotions) {
        for (auto name : kEmotionNames) header.emplace_back(name);
    }
    row(header);
    for (const auto& p : series.points) {
        std::vector<std::string> cells{p.period, std::to_string(p.count)};
        if (series.metric == Metric::Sentiment) {
            if (p.sentiment) {
                cells.push_back(number(p.sentiment->mean));
                cells.push_back(number(p.sentiment->positivity));
                cells.push_back(number(p.sentiment->negativity));
            } else {
                cells.insert(cells.end(), 3, "");
            }
        } else if (series.metric == Metric::Emotions) {
            for (std::size_t e = 0; e < kNumEmotions; ++e) {
                cells.push_back(p.emotions ? number(p.emotions->means[e]) : "");
            }
        }
        row(cells);
    }
    return out;
}

}  // namespace tweetscope

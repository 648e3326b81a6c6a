#include "tweetscope/artifacts.hpp"

#include "tweetscope/error.hpp"

#include <json.hpp>

#include <fstream>
#include <limits>
#include <sstream>

namespace tweetscope {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

json optional_json(const std::optional<std::string>& v) {
    return v ? json(*v) : json(nullptr);
}

std::optional<std::string> optional_from(const json& j) {
    if (j.is_null()) return std::nullopt;
    return j.get<std::string>();
}

json tweet_json(const ProcessedTweet& t) {
    return json{{"id", t.id},
                {"created_at", format_timestamp(t.created_at)},
                {"day", format_date(t.day)},
                {"week", t.week.to_string()},
                {"country", optional_json(t.country)},
                {"user_id", t.user_id},
                {"is_retweet", t.is_retweet},
                {"surface", t.surface_tokens},
                {"stemmed", t.stemmed_tokens}};
}

ProcessedTweet tweet_from_json(const json& j) {
    ProcessedTweet t;
    t.id = j.at("id").get<std::string>();
    const auto ts = parse_timestamp(j.at("created_at").get<std::string>());
    const auto day = parse_date(j.at("day").get<std::string>());
    const auto week = IsoWeek::parse(j.at("week").get<std::string>());
    if (!ts || !day || !week) {
        throw std::invalid_argument("bad date fields");
    }
    t.created_at = *ts;
    t.day = *day;
    t.week = *week;
    t.country = optional_from(j.at("country"));
    t.user_id = j.at("user_id").get<std::string>();
    t.is_retweet = j.at("is_retweet").get<bool>();
    t.surface_tokens = j.at("surface").get<std::vector<std::string>>();
    t.stemmed_tokens = j.at("stemmed").get<std::vector<std::string>>();
    return t;
}

json read_json_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw FileNotFound(path.string());
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    json doc = json::parse(buffer.str(), nullptr, /*allow_exceptions=*/false);
    if (doc.is_discarded()) {
        throw DataError("invalid JSON in " + path.string());
    }
    return doc;
}

json config_json(const LdaConfig& c) {
    return json{{"num_topics", c.num_topics}, {"alpha", c.alpha},         {"beta", c.beta},
                {"iterations", c.iterations}, {"seed", c.seed},           {"burn_in", c.burn_in}};
}

LdaConfig config_from_json(const json& j) {
    LdaConfig c;
    c.num_topics = j.at("num_topics").get<std::size_t>();
    c.alpha = j.at("alpha").get<double>();
    c.beta = j.at("beta").get<double>();
    c.iterations = j.at("iterations").get<std::size_t>();
    c.seed = j.at("seed").get<std::uint64_t>();
    c.burn_in = j.at("burn_in").get<std::size_t>();
    return c;
}

template <typename T>
json matrix_json(const Matrix<T>& m) {
    json rows = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        const auto row = m.row(r);
        rows.push_back(std::vector<T>(row.begin(), row.end()));
    }
    return rows;
}

json hit_json(const ControversyHit& h) {
    return json{{"tweet_id", h.tweet_id},
                {"term", h.term},
                {"day", format_date(h.day)},
                {"week", h.week.to_string()},
                {"country", optional_json(h.country)}};
}

}  // namespace

void write_file_atomic(const fs::path& path, const std::string& content) {
    if (path.has_parent_path()) {
        fs::create_directories(path.parent_path());
    }
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw DataError("cannot write " + tmp.string());
        }
        out << content;
        if (!out) {
            throw DataError("write failed: " + tmp.string());
        }
    }
    fs::rename(tmp, path);
}

std::vector<fs::path> write_corpus(const fs::path& dir, const Corpus& corpus) {
    const fs::path corpus_dir = dir / layout::kCorpusDir;
    fs::remove_all(corpus_dir);
    fs::create_directories(corpus_dir);

    std::map<std::string, std::vector<const ProcessedTweet*>> by_week;
    for (const auto& t : corpus.tweets) {
        by_week[t.week.to_string()].push_back(&t);
    }
    Corpus ordered;
    ordered.counts = corpus.counts;
    std::vector<fs::path> written;
    for (const auto& [week, tweets] : by_week) {
        std::string content;
        for (const auto* t : tweets) {
            content += tweet_json(*t).dump();
            content += '\n';
            ordered.tweets.push_back(*t);
        }
        const fs::path file = corpus_dir / (week + ".jsonl");
        write_file_atomic(file, content);
        written.push_back(file);
    }
    const json stats{{"loaded", corpus.counts.loaded},
                     {"skipped", corpus.counts.skipped},
                     {"filtered", corpus.counts.filtered},
                     {"kept", corpus.tweets.size()},
                     {"corpus_id", corpus_content_id(ordered)}};
    write_file_atomic(dir / layout::kCorpusStats, stats.dump(2) + "\n");
    written.push_back(dir / layout::kCorpusStats);
    return written;
}

bool has_corpus(const fs::path& dir) {
    return fs::is_regular_file(dir / layout::kCorpusStats);
}

Corpus read_corpus(const fs::path& dir) {
    if (!has_corpus(dir)) {
        throw DataError("no processed corpus found in " + dir.string() + " (run `ingest` first)");
    }
    Corpus corpus;
    const json stats = read_json_file(dir / layout::kCorpusStats);
    corpus.counts.loaded = stats.at("loaded").get<std::size_t>();
    corpus.counts.skipped = stats.at("skipped").get<std::size_t>();
    corpus.counts.filtered = stats.at("filtered").get<std::size_t>();

    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir / layout::kCorpusDir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".jsonl") {
            files.push_back(entry.path());
        }
    }
    std::sort(files.begin(), files.end());
    for (const auto& file : files) {
        std::ifstream in(file, std::ios::binary);
        std::string line;
        std::size_t line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            if (line.empty()) continue;
            try {
                corpus.tweets.push_back(tweet_from_json(json::parse(line)));
            } catch (const std::exception& e) {
                throw MalformedRecord(e.what(), file.string(), line_no);
            }
        }
    }
    if (corpus.tweets.size() != stats.at("kept").get<std::size_t>()) {
        throw DataError("processed corpus in " + dir.string() + " does not match its stats.json");
    }
    return corpus;
}

void write_topics(const fs::path& path, const WeeklyTopics& topics, bool include_matrices) {
    json weeks = json::object();
    for (const auto& [week, wt] : topics.weeks) {
        json topic_rows = json::array();
        for (const auto& words : wt.topics) {
            json row = json::array();
            for (const auto& [term, p] : words) {
                row.push_back(json{{"term", term}, {"p", p}});
            }
            topic_rows.push_back(std::move(row));
        }
        json entry{{"seed", wt.config.seed},
                   {"num_docs", wt.num_docs},
                   {"vocabulary", wt.vocabulary},
                   {"topics", std::move(topic_rows)}};
        if (include_matrices && wt.model) {
            entry["theta"] = matrix_json(wt.model->theta);
            entry["phi"] = matrix_json(wt.model->phi);
        }
        weeks[week] = std::move(entry);
    }
    const json doc{{"schema_version", 1},
                   {"config", config_json(topics.config)},
                   {"vocabulary_options",
                    {{"min_df", topics.vocab_options.min_df},
                     {"max_df_ratio", topics.vocab_options.max_df_ratio}}},
                   {"n_words", topics.n_words},
                   {"weeks", std::move(weeks)},
                   {"warnings", topics.warnings}};
    write_file_atomic(path, doc.dump(1) + "\n");
}

WeeklyTopics read_topics(const fs::path& path) {
    const json doc = read_json_file(path);
    try {
        WeeklyTopics out;
        out.config = config_from_json(doc.at("config"));
        out.vocab_options.min_df = doc.at("vocabulary_options").at("min_df").get<std::size_t>();
        out.vocab_options.max_df_ratio =
            doc.at("vocabulary_options").at("max_df_ratio").get<double>();
        out.n_words = doc.at("n_words").get<std::size_t>();
        out.warnings = doc.at("warnings").get<std::vector<std::string>>();
        for (const auto& [week, entry] : doc.at("weeks").items()) {
            WeekTopics wt;
            wt.config = out.config;
            wt.config.seed = entry.at("seed").get<std::uint64_t>();
            wt.num_docs = entry.at("num_docs").get<std::size_t>();
            wt.vocabulary = entry.at("vocabulary").get<std::vector<std::string>>();
            for (const auto& row : entry.at("topics")) {
                std::vector<TopWord> words;
                for (const auto& w : row) {
                    words.emplace_back(w.at("term").get<std::string>(), w.at("p").get<double>());
                }
                wt.topics.push_back(std::move(words));
            }
            out.weeks.emplace(week, std::move(wt));
        }
        return out;
    } catch (const json::exception& e) {
        throw DataError("malformed topic export " + path.string() + ": " + e.what());
    }
}

ControversyResults analyze_controversy(const Corpus& corpus, const TermList& terms,
                                       const StopwordSet& stopwords) {
    ControversyResults out;
    out.phrases = terms.phrases();
    out.hits = scan_corpus(corpus, terms);
    for (const auto& phrase : terms.phrases()) {
        out.cooccurrence[phrase] = cooccurrence(corpus, out.hits, terms, phrase, stopwords,
                                                std::numeric_limits<std::size_t>::max());
    }
    return out;
}

void write_controversy(const fs::path& path, const ControversyResults& results) {
    json hits = json::array();
    for (const auto& h : results.hits) {
        hits.push_back(hit_json(h));
    }
    json tables = json::object();
    for (const auto& [phrase, table] : results.cooccurrence) {
        json counts = json::array();
        for (const auto& [word, count] : table.counts) {
            counts.push_back(json::array({word, count}));
        }
        tables[phrase] = json{{"total_hits", table.total_hits}, {"counts", std::move(counts)}};
    }
    const json doc{{"schema_version", 1},
                   {"phrases", results.phrases},
                   {"hits", std::move(hits)},
                   {"cooccurrence", std::move(tables)}};
    write_file_atomic(path, doc.dump(1) + "\n");
}

ControversyResults read_controversy(const fs::path& path) {
    const json doc = read_json_file(path);
    try {
        ControversyResults out;
        out.phrases = doc.at("phrases").get<std::vector<std::string>>();
        for (const auto& h : doc.at("hits")) {
            ControversyHit hit;
            hit.tweet_id = h.at("tweet_id").get<std::string>();
            hit.term = h.at("term").get<std::string>();
            const auto day = parse_date(h.at("day").get<std::string>());
            const auto week = IsoWeek::parse(h.at("week").get<std::string>());
            if (!day || !week) {
                throw DataError("bad hit dates in " + path.string());
            }
            hit.day = *day;
            hit.week = *week;
            hit.country = optional_from(h.at("country"));
            out.hits.push_back(std::move(hit));
        }
        for (const auto& [phrase, t] : doc.at("cooccurrence").items()) {
            CooccurrenceTable table;
            table.term = phrase;
            table.total_hits = t.at("total_hits").get<std::size_t>();
            for (const auto& row : t.at("counts")) {
                table.counts.emplace_back(row.at(0).get<std::string>(), row.at(1).get<std::size_t>());
            }
            out.cooccurrence.emplace(phrase, std::move(table));
        }
        return out;
    } catch (const json::exception& e) {
        throw DataError("malformed controversy export " + path.string() + ": " + e.what());
    }
}

}  // namespace tweetscope

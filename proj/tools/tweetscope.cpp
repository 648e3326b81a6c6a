// tweetscope: operator CLI for the tweet analytics pipeline.
//
// Exit codes: 0 success, 1 usage error, 2 data error, 3 internal error.

#include "tweetscope/aggregate.hpp"
#include "tweetscope/api.hpp"
#include "tweetscope/error.hpp"
#include "tweetscope/pipeline.hpp"
#include "tweetscope/synth.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <chrono>
#include <csignal>
#include <fstream>
#include <iostream>
#include <thread>

namespace fs = std::filesystem;
using namespace tweetscope;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitInternal = 3;

std::atomic<bool> g_stop{false};
std::atomic<bool> g_reload{false};

extern "C" void on_signal(int sig) {
    if (sig == SIGHUP) {
        g_reload = true;
    } else {
        g_stop = true;
    }
}

int serve(const fs::path& dir, const std::string& config_file, std::optional<int> port,
          std::optional<std::string> host, std::optional<std::string> cors) {
    ApiConfig config;
    if (!config_file.empty()) {
        config = load_api_config(config_file, config);
    }
    config = apply_env_overrides(config);
    if (!dir.empty()) config.data_dir = dir;
    if (port) config.port = *port;
    if (host) config.host = *host;
    if (cors) config.cors_origin = *cors;

    ApiServer server(config);
    if (auto err = server.reload()) {
        std::cerr << "tweetscope: " << *err << "\n";
        return kExitData;
    }
    const int bound = server.bind();
    if (bound < 0) {
        std::cerr << "tweetscope: cannot bind " << config.host << ":" << config.port << "\n";
        return kExitData;
    }
    std::signal(SIGINT, on_signal);
    std::signal(SIGTERM, on_signal);
    std::signal(SIGHUP, on_signal);
    std::cout << "serving " << config.data_dir.string() << " on http://" << config.host << ":"
              << bound << "/api/v1/" << std::endl;

    std::thread watcher([&] {
        while (!g_stop) {
            if (g_reload.exchange(false)) {
                if (auto err = server.reload()) {
                    std::clog << "[tweetscope] reload failed, keeping previous artifacts: " << *err << "\n";
                } else {
                    std::clog << "[tweetscope] artifacts reloaded\n";
                }
            }
            std::this_thread::sleep_for(std::chrono::milliseconds(100));
        }
        server.stop();
    });
    server.listen();
    g_stop = true;
    watcher.join();
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"tweetscope - tweet sentiment, emotion, topic and controversy analytics"};
    app.require_subcommand(1);

    std::string resource_dir;
    std::string afinn_path;
    std::string nrc_path;
    std::string stopwords_path;
    app.add_option("--resource-dir", resource_dir, "Directory with lexicons/, stopwords/, terms/");
    app.add_option("--afinn", afinn_path, "AFINN lexicon TSV");
    app.add_option("--nrc", nrc_path, "NRC EmoLex word-level TSV");
    app.add_option("--stopwords", stopwords_path, "Stopword list, one word per line");

    // ingest
    auto* ingest = app.add_subcommand("ingest", "Load, filter and preprocess a JSONL tweet dump");
    std::string ingest_input;
    std::string ingest_out;
    bool fail_fast = false;
    ingest->add_option("input", ingest_input, "Input JSONL file")->required();
    ingest->add_option("--out", ingest_out, "Output data directory")->required();
    ingest->add_flag("--fail-fast", fail_fast, "Abort on the first malformed record");

    // analyze
    auto* analyze = app.add_subcommand("analyze", "Score sentiment/emotions and build the aggregate snapshot");
    std::string analyze_dir;
    analyze->add_option("dir", analyze_dir, "Data directory")->required();

    // topics
    auto* topics = app.add_subcommand("topics", "Fit one LDA model per ISO week");
    std::string topics_dir;
    TopicsOptions topic_opts;
    std::optional<double> alpha;
    topics->add_option("dir", topics_dir, "Data directory")->required();
    topics->add_option("--k", topic_opts.config.num_topics, "Topics per week")->capture_default_str();
    topics->add_option("--alpha", alpha, "Document-topic prior (default 50/K)");
    topics->add_option("--beta", topic_opts.config.beta, "Topic-word prior")->capture_default_str();
    topics->add_option("--iters", topic_opts.config.iterations, "Gibbs sweeps")->capture_default_str();
    topics->add_option("--burn-in", topic_opts.config.burn_in, "Burn-in sweeps")->capture_default_str();
    topics->add_option("--seed", topic_opts.config.seed, "Random seed")->capture_default_str();
    topics->add_option("--min-df", topic_opts.vocab.min_df, "Minimum document frequency")->capture_default_str();
    topics->add_option("--max-df", topic_opts.vocab.max_df_ratio, "Maximum document frequency ratio")
        ->capture_default_str();
    topics->add_option("--n-words", topic_opts.n_words, "Top words exported per topic")->capture_default_str();
    topics->add_option("--threads", topic_opts.threads, "Worker threads (0 = all cores)");
    topics->add_flag("--include-matrices", topic_opts.include_matrices, "Export theta and phi");

    // controversy
    auto* controversy = app.add_subcommand("controversy", "Scan for controversial terms");
    std::string controversy_dir;
    std::string terms_path;
    controversy->add_option("dir", controversy_dir, "Data directory")->required();
    controversy->add_option("--terms", terms_path, "Term list file");

    // serve
    auto* serve_cmd = app.add_subcommand("serve", "Serve the directory's artifacts over HTTP");
    std::string serve_dir;
    std::string serve_config;
    std::optional<int> serve_port;
    std::optional<std::string> serve_host;
    std::optional<std::string> serve_cors;
    serve_cmd->add_option("dir", serve_dir, "Data directory");
    serve_cmd->add_option("--port", serve_port, "Port (0 picks a free one)");
    serve_cmd->add_option("--host", serve_host, "Bind address");
    serve_cmd->add_option("--config", serve_config, "key = value config file");
    serve_cmd->add_option("--cors-origin", serve_cors, "Allowed dashboard origin");

    // export
    auto* export_cmd = app.add_subcommand("export", "Export a series as CSV");
    std::string export_dir;
    std::string metric_name;
    std::string format = "csv";
    std::string granularity_name = "week";
    std::optional<std::string> from;
    std::optional<std::string> to;
    std::optional<std::string> country;
    std::string export_out;
    export_cmd->add_option("dir", export_dir, "Data directory")->required();
    export_cmd->add_option("--metric", metric_name, "volume | sentiment | emotions")
        ->required()
        ->check(CLI::IsMember({"volume", "sentiment", "emotions"}));
    export_cmd->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv"}));
    export_cmd->add_option("--granularity", granularity_name, "day | week")
        ->check(CLI::IsMember({"day", "week"}))
        ->capture_default_str();
    export_cmd->add_option("--from", from, "First period");
    export_cmd->add_option("--to", to, "Last period");
    export_cmd->add_option("--country", country, "Country code or 'unknown'");
    export_cmd->add_option("--out", export_out, "Output file (default stdout)");

    // synth
    auto* synth = app.add_subcommand("synth", "Write the synthetic evaluation corpus");
    std::string synth_out;
    SynthOptions synth_opts;
    synth->add_option("--out", synth_out, "Output JSONL file")->required();
    synth->add_option("--count", synth_opts.num_tweets, "Number of tweets")->capture_default_str();
    synth->add_option("--seed", synth_opts.seed, "Random seed")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        ResourcePaths resources =
            resource_dir.empty() ? ResourcePaths::defaults() : ResourcePaths::under(resource_dir);
        if (!afinn_path.empty()) resources.afinn = afinn_path;
        if (!nrc_path.empty()) resources.nrc = nrc_path;
        if (!stopwords_path.empty()) resources.stopwords = stopwords_path;
        if (!terms_path.empty()) resources.terms = terms_path;

        if (*ingest) {
            const auto m = run_ingest(ingest_input, ingest_out, resources,
                                      fail_fast ? Strictness::FailFast : Strictness::SkipMalformed);
            std::cout << "ingested " << m.counts->loaded << " records: "
                      << m.counts->loaded - m.counts->skipped - m.counts->filtered << " kept, "
                      << m.counts->skipped << " malformed, " << m.counts->filtered << " filtered\n";
        } else if (*analyze) {
            run_analyze(analyze_dir, resources);
            std::cout << "snapshot written to " << (fs::path(analyze_dir) / "snapshot.json").string() << "\n";
        } else if (*topics) {
            if (topic_opts.config.num_topics == 0) {
                throw InvalidArgument("--k must be >= 1");
            }
            topic_opts.config.alpha =
                alpha ? *alpha : 50.0 / static_cast<double>(topic_opts.config.num_topics);
            const auto m = run_topics(topics_dir, topic_opts);
            std::cout << "topics written to " << (fs::path(topics_dir) / "topics.json").string() << "\n";
        } else if (*controversy) {
            run_controversy(controversy_dir, resources);
            std::cout << "controversy results written to "
                      << (fs::path(controversy_dir) / "controversy.json").string() << "\n";
        } else if (*serve_cmd) {
            return serve(serve_dir, serve_config, serve_port, serve_host, serve_cors);
        } else if (*export_cmd) {
            const Series series = load_series(export_dir, *parse_metric(metric_name),
                                              *parse_granularity(granularity_name), from, to, country);
            const std::string csv = series_csv(series);
            if (export_out.empty()) {
                std::cout << csv;
            } else {
                std::ofstream out(export_out, std::ios::binary);
                if (!out) {
                    throw DataError("cannot write " + export_out);
                }
                out << csv;
            }
        } else if (*synth) {
            write_synthetic_tweets(synth_out, synth_opts);
            std::cout << "wrote " << synth_opts.num_tweets << " tweets to " << synth_out << "\n";
        }
    } catch (const InvalidArgument& e) {
        std::cerr << "tweetscope: " << e.what() << "\n";
        return kExitUsage;
    } catch (const DataError& e) {
        std::cerr << "tweetscope: " << e.what() << "\n";
        return kExitData;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "tweetscope: " << e.what() << "\n";
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << "tweetscope: internal error: " << e.what() << "\n";
        return kExitInternal;
    }
    return 0;
}

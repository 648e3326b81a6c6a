#include "support.hpp"

#include "tweetscope/api.hpp"
#include "tweetscope/error.hpp"
#include "tweetscope/payloads.hpp"
#include "tweetscope/pipeline.hpp"
#include "tweetscope/synth.hpp"

#include <doctest.h>

#include <httplib.h>
#include <json.hpp>

#include <thread>

using namespace tweetscope;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

// Small processed data directory shared by the cases below.
const fs::path& fixture_dir() {
    static testing::TempDir dir("api");
    static const bool built = [] {
        SynthOptions opts;
        opts.num_tweets = 500;
        write_synthetic_tweets(dir / "in.jsonl", opts);
        const ResourcePaths res = ResourcePaths::under(testing::data_dir());
        run_ingest(dir / "in.jsonl", dir / "d", res);
        run_analyze(dir / "d", res);
        TopicsOptions t;
        t.config = LdaConfig::with_topics(3);
        t.config.iterations = 30;
        t.config.burn_in = 0;
        t.n_words = 12;
        run_topics(dir / "d", t);
        run_controversy(dir / "d", res);
        return true;
    }();
    (void)built;
    static const fs::path path = dir / "d";
    return path;
}

const Artifacts& fixture() {
    static const auto a = load_artifacts(fixture_dir());
    return *a;
}

ApiResponse get(std::string_view path, QueryParams params = {}) {
    return handle_request(&fixture(), path, params);
}

std::string code_of(const ApiResponse& r) { return json::parse(r.body).at("error").at("code"); }

}  // namespace

TEST_SUITE("api") {

TEST_CASE("not ready before a snapshot is loaded") {
    const ApiResponse r = handle_request(nullptr, "/api/v1/volume", {});
    CHECK(r.status == 503);
    CHECK(code_of(r) == "not_ready");
}

TEST_CASE("unknown endpoints") {
    CHECK(get("/api/v1/nothing").status == 404);
    CHECK(get("/api/v2/volume").status == 404);
    CHECK(get("/").status == 404);
}

TEST_CASE("series endpoints") {
    const ApiResponse r = get("/api/v1/sentiment", {{"granularity", "week"}});
    REQUIRE(r.status == 200);
    const json j = json::parse(r.body);
    CHECK(j.at("granularity") == "week");
    CHECK(j.at("points").size() == 6);
    CHECK(j.at("points")[0].contains("mean"));

    const ApiResponse bad = get("/api/v1/sentiment", {{"granularity", "week"}, {"from", "2020-W12"}, {"to", "2020-W10"}});
    CHECK(bad.status == 400);
    CHECK(code_of(bad) == "invalid_range");

    CHECK(code_of(get("/api/v1/volume", {{"granularity", "month"}})) == "bad_parameter");
    CHECK(code_of(get("/api/v1/volume", {{"country", "usa"}})) == "bad_parameter");
    CHECK(code_of(get("/api/v1/volume", {{"granularity", "week"}, {"from", "2020-13-01"}, {"to", "2020-W10"}})) ==
          "bad_parameter");
    CHECK(get("/api/v1/emotions", {{"country", "unknown"}}).status == 200);

    const json us = json::parse(get("/api/v1/volume", {{"granularity", "week"}, {"country", "ZZ"}}).body);
    CHECK(us.at("points").size() == 6);
    for (const auto& p : us.at("points")) CHECK(p.at("count") == 0);
}

TEST_CASE("topics endpoint") {
    const std::string week = fixture().topics->weeks.begin()->first;
    const ApiResponse r = get("/api/v1/topics", {{"week", week}, {"n_words", "5"}});
    REQUIRE(r.status == 200);
    const json j = json::parse(r.body);
    CHECK(j.at("topics").size() == 3);
    CHECK(j.at("topics")[0].at("words").size() == 5);
    CHECK(j == topics_json(week, fixture().topics->weeks.at(week), 5));

    CHECK(code_of(get("/api/v1/topics", {})) == "bad_parameter");
    CHECK(code_of(get("/api/v1/topics", {{"week", "2019-W01"}})) == "unknown_week");
    CHECK(get("/api/v1/topics", {{"week", "2019-W01"}}).status == 404);
    CHECK(code_of(get("/api/v1/topics", {{"week", week}, {"n_words", "13"}})) == "bad_parameter");
    CHECK(code_of(get("/api/v1/topics", {{"week", week}, {"n_words", "0"}})) == "bad_parameter");
    CHECK(code_of(get("/api/v1/topics", {{"week", "W11"}})) == "bad_parameter");
}

TEST_CASE("controversy endpoints") {
    const ApiResponse terms = get("/api/v1/controversy/terms");
    REQUIRE(terms.status == 200);
    CHECK(json::parse(terms.body).at("terms").size() == 3);

    const ApiResponse co = get("/api/v1/controversy/cooccurrence", {{"term", "kung flu"}, {"top_n", "3"}});
    REQUIRE(co.status == 200);
    CHECK(json::parse(co.body).at("words").size() <= 3);

    const ApiResponse unknown = get("/api/v1/controversy/cooccurrence", {{"term", "unlisted"}});
    CHECK(unknown.status == 404);
    CHECK(code_of(unknown) == "unknown_term");
    CHECK(code_of(get("/api/v1/controversy/cooccurrence", {})) == "bad_parameter");
    CHECK(code_of(get("/api/v1/controversy/cooccurrence", {{"term", "kung flu"}, {"top_n", "x"}})) ==
          "bad_parameter");
}

TEST_CASE("meta endpoint") {
    const json j = json::parse(get("/api/v1/meta").body);
    CHECK(j.at("corpus_id") == fixture().snapshot.corpus_id);
    CHECK(j.at("weeks").size() == 6);
    CHECK(j.at("date_range").at("from").get<std::string>() <= j.at("date_range").at("to").get<std::string>());
    for (const auto& c : j.at("countries")) CHECK(c != "unknown");
}

TEST_CASE("property: responses are deterministic and order independent") {
    const std::vector<std::pair<std::string, QueryParams>> requests = {
        {"/api/v1/volume", {}},
        {"/api/v1/meta", {}},
        {"/api/v1/controversy/terms", {}},
        {"/api/v1/emotions", {{"granularity", "week"}}},
        {"/api/v1/controversy/cooccurrence", {{"term", "wuhan virus"}}},
    };
    std::vector<std::string> forward;
    for (const auto& [p, q] : requests) forward.push_back(get(p, q).body);
    for (std::size_t i = requests.size(); i-- > 0;) {
        CHECK(get(requests[i].first, requests[i].second).body == forward[i]);
    }
}

TEST_CASE("config file parsing") {
    testing::TempDir dir("cfg");
    testing::write_text(dir / "c.toml",
                        "# server\n[server]\nport = 9001\nhost = \"0.0.0.0\"\ndata_dir = /srv/data\n"
                        "cors_origin = \"http://localhost:5173\"\n");
    const ApiConfig c = load_api_config(dir / "c.toml");
    CHECK(c.port == 9001);
    CHECK(c.host == "0.0.0.0");
    CHECK(c.data_dir == "/srv/data");
    CHECK(c.cors_origin == "http://localhost:5173");

    testing::write_text(dir / "bad.toml", "port = 80\nprot = 81\n");
    try {
        load_api_config(dir / "bad.toml");
        FAIL("expected MalformedConfig");
    } catch (const MalformedConfig& e) {
        CHECK(e.line() == 2);
    }
    testing::write_text(dir / "bad.toml", "port = eighty\n");
    CHECK_THROWS_AS(load_api_config(dir / "bad.toml"), MalformedConfig);
    testing::write_text(dir / "bad.toml", "just words\n");
    CHECK_THROWS_AS(load_api_config(dir / "bad.toml"), MalformedConfig);
    CHECK_THROWS_AS(load_api_config(dir / "none.toml"), FileNotFound);
}

TEST_CASE("environment overrides") {
    std::map<std::string, std::string> env = {{"TWEETSCOPE_PORT", "7000"}, {"TWEETSCOPE_DATA_DIR", "/x"}};
    auto lookup = [&](const char* name) -> const char* {
        auto it = env.find(name);
        return it == env.end() ? nullptr : it->second.c_str();
    };
    ApiConfig base;
    base.host = "h";
    const ApiConfig c = apply_env_overrides(base, lookup);
    CHECK(c.port == 7000);
    CHECK(c.data_dir == "/x");
    CHECK(c.host == "h");
    env["TWEETSCOPE_PORT"] = "70000";
    CHECK_THROWS_AS(apply_env_overrides(base, lookup), InvalidArgument);
}

TEST_CASE("live server over loopback") {
    ApiConfig config;
    config.port = 0;
    config.data_dir = fixture_dir();
    config.cors_origin = "http://dash.local";
    ApiServer server(config);
    const int port = server.bind();
    REQUIRE(port > 0);

    std::thread t([&] { server.listen(); });
    httplib::Client c("127.0.0.1", port);
    c.set_connection_timeout(5);

    auto before = c.Get("/api/v1/meta");
    REQUIRE(before);
    CHECK(before->status == 503);

    REQUIRE_FALSE(server.reload());
    auto meta = c.Get("/api/v1/meta");
    REQUIRE(meta);
    CHECK(meta->status == 200);
    CHECK(meta->body == get("/api/v1/meta").body);
    CHECK(meta->get_header_value("Access-Control-Allow-Origin") == "http://dash.local");
    CHECK(meta->get_header_value("Content-Type") == "application/json");

    auto range = c.Get("/api/v1/sentiment?granularity=week&from=2020-W14&to=2020-W10");
    REQUIRE(range);
    CHECK(range->status == 400);

    auto missing = c.Get("/api/v1/controversy/cooccurrence?term=unlisted");
    REQUIRE(missing);
    CHECK(missing->status == 404);

    // reload failure keeps the previous artifacts
    server.stop();
    t.join();
    ApiServer other(ApiConfig{"127.0.0.1", 0, "/nonexistent", ""});
    CHECK(other.reload().has_value());
    CHECK(other.artifacts() == nullptr);
}

}

#include "tweetscope/api.hpp"

#include "tweetscope/error.hpp"
#include "tweetscope/payloads.hpp"

#include <httplib.h>

#include <charconv>
#include <cstdlib>
#include <fstream>

namespace tweetscope {

namespace fs = std::filesystem;

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::optional<long long> parse_int(std::string_view text) {
    long long value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
        return std::nullopt;
    }
    return value;
}

struct ApiFailure {
    int status;
    std::string code;
    std::string message;
};

ApiFailure bad_parameter(std::string message) {
    return {400, "bad_parameter", std::move(message)};
}

const std::string* param(const QueryParams& params, std::string_view name) {
    auto it = params.find(name);
    return it == params.end() ? nullptr : &it->second;
}

std::size_t count_param(const QueryParams& params, std::string_view name, std::size_t fallback,
                        std::size_t max) {
    const std::string* raw = param(params, name);
    if (raw == nullptr) {
        return fallback;
    }
    const auto value = parse_int(*raw);
    if (!value || *value < 1 || static_cast<unsigned long long>(*value) > max) {
        throw bad_parameter(std::string(name) + " must be an integer in [1, " + std::to_string(max) + "]");
    }
    return static_cast<std::size_t>(*value);
}

// Earliest and latest all-countries period for a granularity.
std::optional<std::pair<std::string, std::string>> period_bounds(const AggregateSnapshot& s,
                                                                 Granularity g) {
    std::optional<std::pair<std::string, std::string>> out;
    for (const auto& [key, count] : s.volume) {
        if (key.granularity != g || key.country) continue;
        if (!out) {
            out.emplace(key.period, key.period);
        } else {
            out->first = std::min(out->first, key.period);
            out->second = std::max(out->second, key.period);
        }
    }
    return out;
}

nlohmann::json series_endpoint(const Artifacts& a, Metric metric, const QueryParams& params) {
    Granularity granularity = Granularity::Day;
    if (const std::string* g = param(params, "granularity")) {
        const auto parsed = parse_granularity(*g);
        if (!parsed) {
            throw bad_parameter("granularity must be 'day' or 'week'");
        }
        granularity = *parsed;
    }
    std::optional<std::string> country;
    if (const std::string* c = param(params, "country"); c != nullptr && !c->empty()) {
        const bool code = c->size() == 2 && std::isupper(static_cast<unsigned char>((*c)[0])) &&
                          std::isupper(static_cast<unsigned char>((*c)[1]));
        if (!code && *c != kUnknownCountryBucket) {
            throw bad_parameter("country must be an ISO 3166-1 alpha-2 code or 'unknown'");
        }
        country = *c;
    }
    const std::string* from = param(params, "from");
    const std::string* to = param(params, "to");
    std::string from_value;
    std::string to_value;
    if (from == nullptr || to == nullptr) {
        const auto bounds = period_bounds(a.snapshot, granularity);
        if (!bounds) {
            throw bad_parameter("from and to are required for an empty snapshot");
        }
        from_value = from ? *from : bounds->first;
        to_value = to ? *to : bounds->second;
    } else {
        from_value = *from;
        to_value = *to;
    }
    try {
        return series_json(query(a.snapshot, metric, granularity, from_value, to_value, country));
    } catch (const InvalidRange& e) {
        throw ApiFailure{400, "invalid_range", e.what()};
    } catch (const InvalidArgument& e) {
        throw bad_parameter(e.what());
    }
}

nlohmann::json topics_endpoint(const Artifacts& a, const QueryParams& params) {
    const std::string* week = param(params, "week");
    if (week == nullptr) {
        throw bad_parameter("week is required");
    }
    if (!IsoWeek::parse(*week)) {
        throw bad_parameter("week must look like 2020-W11");
    }
    if (!a.topics) {
        throw ApiFailure{503, "not_ready", "no topic export loaded"};
    }
    const std::size_t limit = std::max<std::size_t>(a.topics->n_words, 1);
    const std::size_t n_words = count_param(params, "n_words", std::min<std::size_t>(10, limit), limit);
    auto it = a.topics->weeks.find(*week);
    if (it == a.topics->weeks.end()) {
        throw ApiFailure{404, "unknown_week", "no topic model for week " + *week};
    }
    return topics_json(it->first, it->second, n_words);
}

nlohmann::json cooccurrence_endpoint(const Artifacts& a, const QueryParams& params) {
    const std::string* term = param(params, "term");
    if (term == nullptr || term->empty()) {
        throw bad_parameter("term is required");
    }
    const std::size_t top_n = count_param(params, "top_n", 20, 10000);
    if (!a.controversy) {
        throw ApiFailure{503, "not_ready", "no controversy results loaded"};
    }
    auto it = a.controversy->cooccurrence.find(*term);
    if (it == a.controversy->cooccurrence.end()) {
        throw ApiFailure{404, "unknown_term", "term is not tracked: " + *term};
    }
    return cooccurrence_json(it->second, top_n);
}

ApiResponse respond(int status, const nlohmann::json& body) {
    return ApiResponse{status, body.dump()};
}

}  // namespace

ApiConfig load_api_config(const fs::path& path, ApiConfig config) {
    std::ifstream in(path);
    if (!in) {
        throw FileNotFound(path.string());
    }
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view v = trim(line);
        if (v.empty() || v.front() == '#' || v.front() == '[') {
            continue;
        }
        const auto eq = v.find('=');
        if (eq == std::string_view::npos) {
            throw MalformedConfig("expected key = value", path.string(), line_no);
        }
        const std::string key(trim(v.substr(0, eq)));
        std::string_view value = trim(v.substr(eq + 1));
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
            value = value.substr(1, value.size() - 2);
        }
        if (key == "host") {
            config.host = value;
        } else if (key == "port") {
            const auto port = parse_int(value);
            if (!port || *port < 0 || *port > 65535) {
                throw MalformedConfig("port must be an integer in [0, 65535]", path.string(), line_no);
            }
            config.port = static_cast<int>(*port);
        } else if (key == "data_dir") {
            config.data_dir = std::string(value);
        } else if (key == "cors_origin") {
            config.cors_origin = value;
        } else {
            throw MalformedConfig("unknown key '" + key + "'", path.string(), line_no);
        }
    }
    return config;
}

ApiConfig apply_env_overrides(ApiConfig config,
                              const std::function<const char*(const char*)>& getenv) {
    auto lookup = [&](const char* name) -> const char* {
        return getenv ? getenv(name) : std::getenv(name);
    };
    if (const char* v = lookup("TWEETSCOPE_HOST")) config.host = v;
    if (const char* v = lookup("TWEETSCOPE_PORT")) {
        const auto port = parse_int(v);
        if (!port || *port < 0 || *port > 65535) {
            throw InvalidArgument("TWEETSCOPE_PORT must be an integer in [0, 65535]");
        }
        config.port = static_cast<int>(*port);
    }
    if (const char* v = lookup("TWEETSCOPE_DATA_DIR")) config.data_dir = v;
    if (const char* v = lookup("TWEETSCOPE_CORS_ORIGIN")) config.cors_origin = v;
    return config;
}

std::shared_ptr<const Artifacts> load_artifacts(const fs::path& dir) {
    const fs::path snapshot = dir / layout::kSnapshot;
    if (!fs::exists(snapshot)) {
        throw DataError("no snapshot in " + dir.string() + " (run `analyze` first)");
    }
    auto artifacts = std::make_shared<Artifacts>();
    artifacts->snapshot = load_snapshot(snapshot);
    if (fs::exists(dir / layout::kTopics)) {
        artifacts->topics = read_topics(dir / layout::kTopics);
    }
    if (fs::exists(dir / layout::kControversy)) {
        artifacts->controversy = read_controversy(dir / layout::kControversy);
    }
    return artifacts;
}

ApiResponse handle_request(const Artifacts* artifacts, std::string_view path,
                           const QueryParams& params) {
    constexpr std::string_view prefix = "/api/v1/";
    if (path.substr(0, prefix.size()) != prefix) {
        return respond(404, error_json("bad_parameter", "no such endpoint"));
    }
    const std::string_view endpoint = path.substr(prefix.size());
    static const std::array<std::string_view, 7> known = {
        "volume", "sentiment", "emotions", "topics", "controversy/terms",
        "controversy/cooccurrence", "meta"};
    if (std::find(known.begin(), known.end(), endpoint) == known.end()) {
        return respond(404, error_json("bad_parameter", "no such endpoint"));
    }
    if (artifacts == nullptr) {
        return respond(503, error_json("not_ready", "no snapshot loaded"));
    }
    try {
        if (endpoint == "volume") {
            return respond(200, series_endpoint(*artifacts, Metric::Volume, params));
        }
        if (endpoint == "sentiment") {
            return respond(200, series_endpoint(*artifacts, Metric::Sentiment, params));
        }
        if (endpoint == "emotions") {
            return respond(200, series_endpoint(*artifacts, Metric::Emotions, params));
        }
        if (endpoint == "topics") {
            return respond(200, topics_endpoint(*artifacts, params));
        }
        if (endpoint == "controversy/terms") {
            if (!artifacts->controversy) {
                throw ApiFailure{503, "not_ready", "no controversy results loaded"};
            }
            return respond(200, terms_json(artifacts->controversy->phrases, artifacts->controversy->hits));
        }
        if (endpoint == "controversy/cooccurrence") {
            return respond(200, cooccurrence_endpoint(*artifacts, params));
        }
        const WeeklyTopics* topics = artifacts->topics ? &*artifacts->topics : nullptr;
        return respond(200, meta_json(artifacts->snapshot, topics));
    } catch (const ApiFailure& f) {
        return respond(f.status, error_json(f.code, f.message));
    }
}

struct ApiServer::Impl {
    httplib::Server server;
    int port = -1;
};

ApiServer::ApiServer(ApiConfig config) : config_(std::move(config)), impl_(std::make_unique<Impl>()) {
    auto handler = [this](const httplib::Request& req, httplib::Response& res) {
        QueryParams params;
        for (const auto& [k, v] : req.params) {
            params.emplace(k, v);  // first occurrence wins
        }
        const auto current = artifacts();
        const ApiResponse response = handle_request(current.get(), req.path, params);
        res.status = response.status;
        res.set_content(response.body, "application/json");
        if (!config_.cors_origin.empty()) {
            res.set_header("Access-Control-Allow-Origin", config_.cors_origin);
            res.set_header("Vary", "Origin");
        }
    };
    impl_->server.Get(R"(/api/v1/.*)", handler);
    impl_->server.Options(R"(/api/v1/.*)", [this](const httplib::Request&, httplib::Response& res) {
        res.status = 204;
        if (!config_.cors_origin.empty()) {
            res.set_header("Access-Control-Allow-Origin", config_.cors_origin);
            res.set_header("Access-Control-Allow-Methods", "GET, OPTIONS");
            res.set_header("Access-Control-Allow-Headers", "Content-Type");
        }
    });
}

ApiServer::~ApiServer() {
    stop();
}

std::optional<std::string> ApiServer::reload() {
    try {
        set_artifacts(load_artifacts(config_.data_dir));
        return std::nullopt;
    } catch (const std::exception& e) {
        return std::string(e.what());
    }
}

void ApiServer::set_artifacts(std::shared_ptr<const Artifacts> artifacts) {
    std::lock_guard lock(mutex_);
    artifacts_ = std::move(artifacts);
}

std::shared_ptr<const Artifacts> ApiServer::artifacts() const {
    std::lock_guard lock(mutex_);
    return artifacts_;
}

int ApiServer::bind() {
    if (config_.port == 0) {
        impl_->port = impl_->server.bind_to_any_port(config_.host);
    } else {
        impl_->port = impl_->server.bind_to_port(config_.host, config_.port) ? config_.port : -1;
    }
    return impl_->port;
}

bool ApiServer::listen() {
    return impl_->server.listen_after_bind();
}

void ApiServer::stop() {
    if (impl_ && impl_->server.is_running()) {
        impl_->server.stop();
    }
}

}  // namespace tweetscope

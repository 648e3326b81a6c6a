#pragma once

#include "tweetscope/aggregate.hpp"
#include "tweetscope/artifacts.hpp"
#include "tweetscope/topics.hpp"

#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>

namespace tweetscope {

struct ApiConfig {
    std::string host = "127.0.0.1";
    int port = 8080;
    std::filesystem::path data_dir = ".";
    std::string cors_origin;  ///< empty disables the CORS header
};

/// key = value lines, '#' comments, optional double quotes around values.
/// Recognised keys: host, port, data_dir, cors_origin. Throws MalformedConfig.
ApiConfig load_api_config(const std::filesystem::path& path, ApiConfig base = {});

/// Apply TWEETSCOPE_HOST, TWEETSCOPE_PORT, TWEETSCOPE_DATA_DIR and
/// TWEETSCOPE_CORS_ORIGIN. `getenv` is injectable for tests.
ApiConfig apply_env_overrides(ApiConfig config,
                              const std::function<const char*(const char*)>& getenv = nullptr);

/// Published artifacts served read-only. Topics and controversy are optional
/// stages; their endpoints answer not_ready when absent.
struct Artifacts {
    AggregateSnapshot snapshot;
    std::optional<WeeklyTopics> topics;
    std::optional<ControversyResults> controversy;
};

/// Throws DataError when the directory has no snapshot.
std::shared_ptr<const Artifacts> load_artifacts(const std::filesystem::path& dir);

struct ApiResponse {
    int status = 200;
    std::string body;
};

using QueryParams = std::map<std::string, std::string, std::less<>>;

/// Route a GET request. `artifacts` may be null (nothing loaded yet), which
/// yields 503 not_ready for every endpoint.
ApiResponse handle_request(const Artifacts* artifacts, std::string_view path,
                           const QueryParams& params);

/// HTTP front end over handle_request. Artifacts are swapped atomically
/// between requests on reload().
class ApiServer {
public:
    explicit ApiServer(ApiConfig config);
    ~ApiServer();

    ApiServer(const ApiServer&) = delete;
    ApiServer& operator=(const ApiServer&) = delete;

    /// Reload artifacts from the data directory. On failure the served set is
    /// kept and the error message returned.
    std::optional<std::string> reload();
    void set_artifacts(std::shared_ptr<const Artifacts> artifacts);
    std::shared_ptr<const Artifacts> artifacts() const;

    /// Bind the listening socket; port 0 picks a free port. Returns the bound
    /// port or -1.
    int bind();
    /// Serve until stop(). Requires bind().
    bool listen();
    void stop();

private:
    struct Impl;
    ApiConfig config_;
    mutable std::mutex mutex_;
    std::shared_ptr<const Artifacts> artifacts_;
    std::unique_ptr<Impl> impl_;
};

}  // namespace tweetscope

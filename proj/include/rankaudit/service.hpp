#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <string>
#include <string_view>

#include "rankaudit/audit_store.hpp"
#include "rankaudit/constraints.hpp"
#include "rankaudit/graph.hpp"

namespace httplib {
class Server;
}

namespace rankaudit {

struct ServiceOptions {
    std::chrono::seconds sessionIdleTimeout{3600};
    std::string corsOrigin = "*";
    // Built UI assets mounted at "/"; empty disables the mount.
    std::string staticDir;
    std::size_t defaultTopK = 100;
};

struct HttpResponse {
    int status = 200;
    std::string contentType = "application/json";
    std::string body;
};

using QueryParams = std::map<std::string, std::string>;

/**
 * Request handling over an immutable audit cache plus per-session rule sets.
 *
 * Every response body is a function of the cache, the session's rules and the
 * request, so identical requests give identical bytes. Errors carry
 * {"error": {"code", "parameter", "message"}}.
 */
class AuditService {
public:
    using Clock = std::function<std::chrono::steady_clock::time_point()>;

    // Throws Error(fingerprint_mismatch) when the cache was not built from `graph`.
    AuditService(AuditCache cache, DirectedGraph graph, ServiceOptions options = {},
                 Clock clock = [] { return std::chrono::steady_clock::now(); });

    HttpResponse handle(std::string_view method, std::string_view path, const QueryParams& query,
                        std::string_view body = {});

    const AuditCache& cache() const noexcept { return cache_; }
    const DirectedGraph& graph() const noexcept { return graph_; }
    const ServiceOptions& options() const noexcept { return options_; }

    // Live session count after dropping idle ones.
    std::size_t session_count();

private:
    struct Session {
        std::mutex mutex;
        RuleSet rules;
        std::chrono::steady_clock::time_point lastAccess;
    };

    HttpResponse summary() const;
    HttpResponse sensitivity(const QueryParams& query);
    HttpResponse perturbation(const NodeId& node, const QueryParams& query) const;
    HttpResponse influence(const NodeId& node, const QueryParams& query) const;
    HttpResponse create_session();
    HttpResponse replace_rules(const std::string& id, std::string_view body);
    HttpResponse delete_session(const std::string& id);

    std::shared_ptr<Session> find_session(const std::string& id);
    void purge_expired_locked(std::chrono::steady_clock::time_point now);
    const DeltaVector& deltas_for(const NodeId& node) const;
    SensitivityTable filtered_table(const RuleSet& rules) const;

    AuditCache cache_;
    DirectedGraph graph_;
    ServiceOptions options_;
    Clock clock_;

    std::mutex sessionsMutex_;
    std::map<std::string, std::shared_ptr<Session>> sessions_;
    std::mt19937_64 idGenerator_;
};

/// Binds an AuditService to cpp-httplib.
class HttpServer {
public:
    explicit HttpServer(AuditService& service);
    ~HttpServer();

    HttpServer(const HttpServer&) = delete;
    HttpServer& operator=(const HttpServer&) = delete;

    // Returns the bound port (an ephemeral one when port == 0). Throws Error(io_error).
    int bind(const std::string& host, int port);
    // Blocks until stop().
    void listen();
    void stop();
    bool running() const;

private:
    AuditService& service_;
    std::unique_ptr<httplib::Server> server_;
};

} // namespace rankaudit

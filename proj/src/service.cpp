#include "rankaudit/service.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <numeric>
#include <optional>

#include <httplib.h>

#include "rankaudit/error.hpp"
#include "rankaudit/json_io.hpp"

namespace rankaudit {

namespace {

constexpr std::string_view kPerturbationPrefix = "/api/perturbation/";
constexpr std::string_view kInfluenceSuffix = "/influence";
constexpr std::string_view kSessionPrefix = "/api/session/";
constexpr std::string_view kRulesSuffix = "/rules";

HttpResponse json_response(int status, const Json& body) {
    return {status, "application/json", body.dump()};
}

HttpResponse error_response(int status, std::string_view code, const std::string& parameter,
                            const std::string& message) {
    Json error;
    error["code"] = code;
    error["parameter"] = parameter;
    error["message"] = message;
    Json body;
    body["error"] = std::move(error);
    return json_response(status, body);
}

int status_for(ErrorCode code) {
    switch (code) {
    case ErrorCode::not_found: return 404;
    case ErrorCode::invalid_argument:
    case ErrorCode::out_of_bounds:
    case ErrorCode::parse_error: return 400;
    default: return 500;
    }
}

// Query parameter as an integer; std::nullopt when absent.
std::optional<long long> int_param(const QueryParams& query, const std::string& name) {
    const auto it = query.find(name);
    if (it == query.end()) {
        return std::nullopt;
    }
    long long value = 0;
    const auto& text = it->second;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || end != text.data() + text.size()) {
        throw Error(ErrorCode::invalid_argument, name + " must be an integer", name);
    }
    return value;
}

std::string param_or(const QueryParams& query, const std::string& name, std::string fallback) {
    const auto it = query.find(name);
    return it == query.end() ? fallback : it->second;
}

bool starts_with(std::string_view s, std::string_view prefix) {
    return s.substr(0, prefix.size()) == prefix;
}

bool ends_with(std::string_view s, std::string_view suffix) {
    return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

using SortKey = std::function<std::int64_t(const SensitivityRecord&)>;

SortKey sort_key_for(const std::string& sort, const DirectedGraph& g) {
    if (sort == "rank") return [](const SensitivityRecord& r) { return std::int64_t{r.originalRank}; };
    if (sort == "si") return [](const SensitivityRecord& r) { return r.si; };
    if (sort == "siPos") return [](const SensitivityRecord& r) { return r.siPos; };
    if (sort == "siNeg") return [](const SensitivityRecord& r) { return r.siNeg; };
    const auto colon = sort.find(':');
    if (colon != std::string::npos) {
        const auto kind = sort.substr(0, colon);
        const auto label = sort.substr(colon + 1);
        const auto labels = g.label_universe();
        if (std::find(labels.begin(), labels.end(), label) == labels.end()) {
            throw Error(ErrorCode::invalid_argument, "unknown label '" + label + "'", "sort");
        }
        if (kind == "perLabel") {
            return [label](const SensitivityRecord& r) {
                return r.perLabelPos.at(label) + r.perLabelNeg.at(label);
            };
        }
        if (kind == "perLabelPos") {
            return [label](const SensitivityRecord& r) { return r.perLabelPos.at(label); };
        }
        if (kind == "perLabelNeg") {
            return [label](const SensitivityRecord& r) { return r.perLabelNeg.at(label); };
        }
    }
    throw Error(ErrorCode::invalid_argument, "unknown sort key '" + sort + "'", "sort");
}

} // namespace

AuditService::AuditService(AuditCache cache, DirectedGraph graph, ServiceOptions options,
                           Clock clock)
    : cache_(std::move(cache)), graph_(std::move(graph)), options_(std::move(options)),
      clock_(std::move(clock)), idGenerator_(std::random_device{}()) {
    verify_cache_matches(cache_, graph_);
}

HttpResponse AuditService::handle(std::string_view method, std::string_view path,
                                  const QueryParams& query, std::string_view body) {
    try {
        if (method == "GET") {
            if (path == "/api/health") {
                return {200, "text/plain", "ok"};
            }
            if (path == "/api/summary") {
                return summary();
            }
            if (path == "/api/sensitivity") {
                return sensitivity(query);
            }
            if (starts_with(path, kPerturbationPrefix)) {
                auto rest = path.substr(kPerturbationPrefix.size());
                if (ends_with(rest, kInfluenceSuffix)) {
                    rest.remove_suffix(kInfluenceSuffix.size());
                    return influence(NodeId(rest), query);
                }
                return perturbation(NodeId(rest), query);
            }
        } else if (method == "POST") {
            if (path == "/api/session") {
                return create_session();
            }
            if (starts_with(path, kSessionPrefix) && ends_with(path, kRulesSuffix)) {
                auto id = path.substr(kSessionPrefix.size());
                id.remove_suffix(kRulesSuffix.size());
                return replace_rules(std::string(id), body);
            }
        } else if (method == "DELETE") {
            if (starts_with(path, kSessionPrefix)) {
                return delete_session(std::string(path.substr(kSessionPrefix.size())));
            }
        } else if (method == "OPTIONS") {
            return {204, "text/plain", ""};
        }
        return error_response(404, "not_found", "path", "no endpoint " + std::string(method) + " " +
                                                            std::string(path));
    } catch (const Error& e) {
        return error_response(status_for(e.code()), to_string(e.code()), e.subject(), e.what());
    }
}

std::size_t AuditService::session_count() {
    std::lock_guard lock(sessionsMutex_);
    purge_expired_locked(clock_());
    return sessions_.size();
}

HttpResponse AuditService::summary() const {
    return json_response(200, to_json(summarize(graph_)));
}

SensitivityTable AuditService::filtered_table(const RuleSet& rules) const {
    return filter_table(cache_.table, rules,
                        [this](const NodeId& node) { return cache_.find_deltas(node); });
}

HttpResponse AuditService::sensitivity(const QueryParams& query) {
    const auto sort = param_or(query, "sort", "rank");
    const auto key = sort_key_for(sort, graph_);
    const auto order = param_or(query, "order", sort == "rank" ? "asc" : "desc");
    if (order != "asc" && order != "desc") {
        throw Error(ErrorCode::invalid_argument, "order must be asc or desc", "order");
    }
    const auto offset = int_param(query, "offset").value_or(0);
    const auto limit = int_param(query, "limit");
    if (offset < 0) {
        throw Error(ErrorCode::out_of_bounds, "offset must be >= 0", "offset");
    }
    if (limit && *limit < 0) {
        throw Error(ErrorCode::out_of_bounds, "limit must be >= 0", "limit");
    }

    SensitivityTable table;
    if (const auto it = query.find("sessionId"); it != query.end()) {
        const auto session = find_session(it->second);
        if (!session) {
            throw Error(ErrorCode::not_found, "unknown session '" + it->second + "'", "sessionId");
        }
        std::lock_guard lock(session->mutex);
        table = filtered_table(session->rules);
    } else {
        table = cache_.table;
    }

    auto& records = table.records;
    const bool descending = order == "desc";
    std::stable_sort(records.begin(), records.end(), [&](const auto& a, const auto& b) {
        const auto ka = key(a);
        const auto kb = key(b);
        if (ka != kb) {
            return descending ? ka > kb : ka < kb;
        }
        return a.node < b.node;
    });

    const auto total = records.size();
    const auto first = std::min<std::size_t>(static_cast<std::size_t>(offset), total);
    const auto last = limit ? std::min<std::size_t>(first + static_cast<std::size_t>(*limit), total)
                            : total;
    Json page = Json::array();
    for (auto i = first; i < last; ++i) {
        page.push_back(to_json(records[i]));
    }
    Json body;
    body["fingerprint"] = cache_.table.fingerprint;
    body["sort"] = sort;
    body["order"] = order;
    body["total"] = total;
    body["offset"] = first;
    body["limit"] = limit ? Json(*limit) : Json(nullptr);
    body["records"] = std::move(page);
    return json_response(200, body);
}

const DeltaVector& AuditService::deltas_for(const NodeId& node) const {
    const auto* d = cache_.find_deltas(node);
    if (d == nullptr) {
        throw Error(ErrorCode::not_found, "unknown node '" + node + "'", "node");
    }
    return *d;
}

HttpResponse AuditService::perturbation(const NodeId& node, const QueryParams& query) const {
    const auto& d = deltas_for(node);
    const auto survivors = static_cast<long long>(graph_.node_count() - 1);
    const auto k = int_param(query, "k").value_or(
        std::min<long long>(static_cast<long long>(options_.defaultTopK), survivors));
    if (k < 1 || k > survivors) {
        throw Error(ErrorCode::out_of_bounds, "k must lie in [1, " + std::to_string(survivors) + "]",
                    "k");
    }
    const auto report = diagnose(graph_, cache_.originalPositions, cache_.mode, d,
                                 static_cast<std::size_t>(k), cache_.table.fingerprint);
    return json_response(200, to_json(report));
}

HttpResponse AuditService::influence(const NodeId& node, const QueryParams& query) const {
    const auto& d = deltas_for(node);
    const auto hopMin = int_param(query, "hopMin").value_or(1);
    int hopMax = kHopInf;
    if (const auto it = query.find("hopMax"); it != query.end() && it->second != "inf") {
        hopMax = static_cast<int>(std::clamp<long long>(*int_param(query, "hopMax"), -1, kHopInf));
    }
    const auto direction = parse_influence_direction(param_or(query, "direction", "all"));
    const auto ig = build_influence_graph(graph_, d);
    return json_response(200, to_json(filter_influence(
                                  ig, static_cast<int>(std::clamp<long long>(hopMin, -1, kHopInf)),
                                  hopMax, direction)));
}

HttpResponse AuditService::create_session() {
    std::lock_guard lock(sessionsMutex_);
    const auto now = clock_();
    purge_expired_locked(now);
    std::string id;
    do {
        char buffer[33];
        const auto hi = idGenerator_();
        const auto lo = idGenerator_();
        std::snprintf(buffer, sizeof buffer, "%016llx%016llx", static_cast<unsigned long long>(hi),
                      static_cast<unsigned long long>(lo));
        id = buffer;
    } while (sessions_.contains(id));
    auto session = std::make_shared<Session>();
    session->lastAccess = now;
    sessions_.emplace(id, std::move(session));
    Json body;
    body["session_id"] = id;
    return json_response(201, body);
}

std::shared_ptr<AuditService::Session> AuditService::find_session(const std::string& id) {
    std::lock_guard lock(sessionsMutex_);
    const auto now = clock_();
    purge_expired_locked(now);
    const auto it = sessions_.find(id);
    if (it == sessions_.end()) {
        return nullptr;
    }
    it->second->lastAccess = now;
    return it->second;
}

void AuditService::purge_expired_locked(std::chrono::steady_clock::time_point now) {
    std::erase_if(sessions_, [&](const auto& entry) {
        return now - entry.second->lastAccess > options_.sessionIdleTimeout;
    });
}

HttpResponse AuditService::replace_rules(const std::string& id, std::string_view body) {
    const auto session = find_session(id);
    if (!session) {
        throw Error(ErrorCode::not_found, "unknown session '" + id + "'", "sessionId");
    }
    Json parsed;
    try {
        parsed = Json::parse(body.begin(), body.end());
    } catch (const Json::parse_error& e) {
        throw Error(ErrorCode::invalid_argument, std::string("request body is not JSON: ") + e.what(),
                    "body");
    }
    auto rules = rules_from_json(parsed);
    for (const auto& rule : rules.rules()) {
        for (const auto& node : rule.protectedNodes) {
            if (!graph_.contains(node)) {
                throw Error(ErrorCode::invalid_argument,
                            "rule '" + rule.id + "' protects unknown node '" + node + "'", "protected");
            }
        }
    }
    Json response;
    response["session_id"] = id;
    response["rules"] = to_json(rules);
    response["retained"] = filtered_table(rules).records.size();
    {
        std::lock_guard lock(session->mutex);
        session->rules = std::move(rules);
    }
    return json_response(200, response);
}

HttpResponse AuditService::delete_session(const std::string& id) {
    std::lock_guard lock(sessionsMutex_);
    purge_expired_locked(clock_());
    if (sessions_.erase(id) == 0) {
        throw Error(ErrorCode::not_found, "unknown session '" + id + "'", "sessionId");
    }
    Json body;
    body["deleted"] = id;
    return json_response(200, body);
}

HttpServer::HttpServer(AuditService& service)
    : service_(service), server_(std::make_unique<httplib::Server>()) {
    const auto& options = service_.options();
    if (!options.staticDir.empty() && !server_->set_mount_point("/", options.staticDir)) {
        throw Error(ErrorCode::io_error, "static directory not found: " + options.staticDir,
                    options.staticDir);
    }
    server_->set_default_headers({{"Access-Control-Allow-Origin", options.corsOrigin},
                                  {"Access-Control-Allow-Methods", "GET, POST, DELETE, OPTIONS"},
                                  {"Access-Control-Allow-Headers", "Content-Type"}});
    const auto dispatch = [this](const httplib::Request& req, httplib::Response& res) {
        QueryParams query;
        for (const auto& [name, value] : req.params) {
            query.emplace(name, value);
        }
        const auto response = service_.handle(req.method, req.path, query, req.body);
        res.status = response.status;
        res.set_content(response.body, response.contentType);
    };
    server_->Get(".*", dispatch);
    server_->Post(".*", dispatch);
    server_->Delete(".*", dispatch);
    server_->Options(".*", dispatch);
}

HttpServer::~HttpServer() {
    stop();
}

int HttpServer::bind(const std::string& host, int port) {
    if (port == 0) {
        const int bound = server_->bind_to_any_port(host);
        if (bound < 0) {
            throw Error(ErrorCode::io_error, "cannot bind " + host, host);
        }
        return bound;
    }
    if (!server_->bind_to_port(host, port)) {
        throw Error(ErrorCode::io_error, "cannot bind " + host + ":" + std::to_string(port),
                    std::to_string(port));
    }
    return port;
}

void HttpServer::listen() {
    server_->listen_after_bind();
}

void HttpServer::stop() {
    if (server_) {
        server_->stop();
    }
}

bool HttpServer::running() const {
    return server_ && server_->is_running();
}

} // namespace rankaudit

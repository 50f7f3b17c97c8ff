#pragma once

// HTTP/JSON service hosting box instances.
//
//   POST   /boxes                      {seed?}  -> 201 {box_id, seed, created_at}
//   GET    /boxes/{id}                          -> 200 {box_id, panel, message}
//   POST   /boxes/{id}/events          {event}  -> 200 {panel, new_log_entries}
//   GET    /boxes/{id}/transcript               -> 200 JSON lines
//   DELETE /boxes/{id}                          -> 204
//   POST   /experiments/{trials,distinguish,bell}
//
// Errors are {"code", "message"} with NOT_FOUND/404, BAD_REQUEST/400 and
// CONFLICT/409. Events on one box are single-writer: a request arriving while
// another event on the same box is in flight loses with 409.

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "catbox/box.hpp"
#include "catbox/json.hpp"
#include "catbox/messages.hpp"

namespace httplib {
class Server;
}

namespace catbox::service {

enum class ErrorCode { NotFound, BadRequest, Conflict };

struct ApiError {
    ErrorCode code;
    std::string message;

    int http_status() const;
    std::string_view code_name() const;
    Json to_json() const;
};

struct BoxHandle {
    std::string box_id;
    std::chrono::system_clock::time_point created_at;
    std::uint64_t seed = 0;
};

struct EventOutcome {
    PanelView panel;
    std::vector<LogEntry> new_entries;
};

// Live boxes keyed by id. Thread-safe.
class BoxRegistry {
public:
    // Without a fixed seed each box draws its own from std::random_device.
    explicit BoxRegistry(std::optional<std::uint64_t> fixed_seed = std::nullopt,
                         std::optional<std::filesystem::path> transcript_dir = std::nullopt);

    BoxHandle create(std::optional<std::uint64_t> seed = std::nullopt);
    bool remove(const std::string& id);
    std::size_t size() const;

    // Snapshot reads; ApiError NotFound for unknown ids.
    BoxHandle handle(const std::string& id) const;
    PanelView panel(const std::string& id, const MessageCatalog& catalog) const;
    std::string transcript(const std::string& id) const;

    // Applies `e` as the box's single writer. Throws ApiError Conflict when
    // another event on the same box is in flight. `hold` runs while the
    // writer slot is held, before the transition.
    EventOutcome apply(const std::string& id, Event e, const MessageCatalog& catalog,
                       const std::function<void()>& hold = {});

private:
    struct Slot {
        BoxHandle handle;
        std::mutex writer;
        mutable std::shared_mutex state_mutex;
        BoxState box;

        Slot(BoxHandle h, BoxState b) : handle(std::move(h)), box(std::move(b)) {}
    };

    std::shared_ptr<Slot> find(const std::string& id) const;
    void persist(const Slot& slot, std::size_t from) const;

    mutable std::mutex mutex_;
    std::unordered_map<std::string, std::shared_ptr<Slot>> slots_;
    std::uint64_t counter_ = 0;
    std::uint64_t id_salt_;
    std::optional<std::uint64_t> fixed_seed_;
    std::optional<std::filesystem::path> transcript_dir_;
};

struct ServiceConfig {
    std::optional<std::uint64_t> fixed_seed;
    MessageCatalog catalog;
    std::optional<std::filesystem::path> transcript_dir;
    // Time an event holds its box's writer slot before stepping; lets tests
    // provoke the 409 path deterministically.
    std::chrono::milliseconds event_hold{0};
};

class CatboxService {
public:
    explicit CatboxService(ServiceConfig config);
    ~CatboxService();
    CatboxService(const CatboxService&) = delete;
    CatboxService& operator=(const CatboxService&) = delete;

    // Returns the bound port or -1.
    int bind(const std::string& host, int port);
    // Blocks until stop().
    bool listen_after_bind();
    void stop();
    void wait_until_ready() const;

    BoxRegistry& registry() { return registry_; }

private:
    void install_routes();

    ServiceConfig config_;
    BoxRegistry registry_;
    std::unique_ptr<httplib::Server> server_;
};

// Request handlers for the stateless experiment endpoints; throw ApiError.
Json trials_endpoint(const Json& body);
Json distinguish_endpoint(const Json& body);
Json bell_endpoint(const Json& body);

}  // namespace catbox::service

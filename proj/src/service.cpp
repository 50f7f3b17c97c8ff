#include "catbox/service.hpp"

#include <fstream>
#include <random>
#include <thread>

#include <httplib.h>

#include "catbox/angles.hpp"

namespace catbox::service {

int ApiError::http_status() const {
    switch (code) {
        case ErrorCode::NotFound: return 404;
        case ErrorCode::Conflict: return 409;
        case ErrorCode::BadRequest: break;
    }
    return 400;
}

std::string_view ApiError::code_name() const {
    switch (code) {
        case ErrorCode::NotFound: return "NOT_FOUND";
        case ErrorCode::Conflict: return "CONFLICT";
        case ErrorCode::BadRequest: break;
    }
    return "BAD_REQUEST";
}

Json ApiError::to_json() const { return Json{{"code", code_name()}, {"message", message}}; }

namespace {

ApiError not_found(const std::string& id) { return {ErrorCode::NotFound, "unknown box_id '" + id + "'"}; }
ApiError bad_request(std::string msg) { return {ErrorCode::BadRequest, std::move(msg)}; }

std::uint64_t random_u64() {
    std::random_device rd;
    return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

std::string format_time(std::chrono::system_clock::time_point t) {
    const std::time_t secs = std::chrono::system_clock::to_time_t(t);
    std::tm tm{};
    gmtime_r(&secs, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

Json parse_body(const std::string& body) {
    if (body.empty()) return Json::object();
    Json j = Json::parse(body, nullptr, false);
    if (j.is_discarded() || !j.is_object()) throw bad_request("request body must be a JSON object");
    return j;
}

std::uint64_t get_u64(const Json& body, const char* key, std::optional<std::uint64_t> fallback) {
    if (!body.contains(key)) {
        if (fallback) return *fallback;
        throw bad_request(std::string("missing field '") + key + "'");
    }
    const Json& v = body[key];
    if (!v.is_number_unsigned()) throw bad_request(std::string("'") + key + "' must be a non-negative integer");
    return v.get<std::uint64_t>();
}

std::string get_string(const Json& body, const char* key) {
    if (!body.contains(key) || !body[key].is_string()) {
        throw bad_request(std::string("'") + key + "' must be a string");
    }
    return body[key].get<std::string>();
}

// Wraps DomainError from the experiment layer as 400.
template <class F>
Json as_bad_request(F&& f) {
    try {
        return f();
    } catch (const DomainError& e) {
        throw bad_request(e.what());
    }
}

}  // namespace

BoxRegistry::BoxRegistry(std::optional<std::uint64_t> fixed_seed,
                         std::optional<std::filesystem::path> transcript_dir)
    : id_salt_(random_u64()), fixed_seed_(fixed_seed), transcript_dir_(std::move(transcript_dir)) {
    if (transcript_dir_) std::filesystem::create_directories(*transcript_dir_);
}

BoxHandle BoxRegistry::create(std::optional<std::uint64_t> seed) {
    const std::uint64_t chosen = seed ? *seed : fixed_seed_ ? *fixed_seed_ : random_u64();
    std::lock_guard lock(mutex_);
    // splitmix_mix is a bijection, so distinct counters give distinct ids.
    char id[24];
    std::snprintf(id, sizeof id, "box-%016llx",
                  static_cast<unsigned long long>(splitmix_mix(++counter_ ^ id_salt_)));
    BoxHandle handle{id, std::chrono::system_clock::now(), chosen};
    slots_.emplace(handle.box_id, std::make_shared<Slot>(handle, new_box(chosen)));
    return handle;
}

bool BoxRegistry::remove(const std::string& id) {
    std::lock_guard lock(mutex_);
    return slots_.erase(id) > 0;
}

std::size_t BoxRegistry::size() const {
    std::lock_guard lock(mutex_);
    return slots_.size();
}

std::shared_ptr<BoxRegistry::Slot> BoxRegistry::find(const std::string& id) const {
    std::lock_guard lock(mutex_);
    auto it = slots_.find(id);
    if (it == slots_.end()) throw not_found(id);
    return it->second;
}

BoxHandle BoxRegistry::handle(const std::string& id) const { return find(id)->handle; }

PanelView BoxRegistry::panel(const std::string& id, const MessageCatalog& catalog) const {
    auto slot = find(id);
    std::shared_lock lock(slot->state_mutex);
    return render(slot->box, catalog);
}

std::string BoxRegistry::transcript(const std::string& id) const {
    auto slot = find(id);
    std::shared_lock lock(slot->state_mutex);
    return to_jsonl(slot->box.log());
}

EventOutcome BoxRegistry::apply(const std::string& id, Event e, const MessageCatalog& catalog,
                                const std::function<void()>& hold) {
    auto slot = find(id);
    std::unique_lock writer(slot->writer, std::try_to_lock);
    if (!writer.owns_lock()) {
        throw ApiError{ErrorCode::Conflict, "another event on box " + id + " is in progress"};
    }
    if (hold) hold();

    EventOutcome out;
    std::size_t before = 0;
    {
        std::unique_lock state(slot->state_mutex);
        before = slot->box.log().size();
        slot->box = step(std::move(slot->box), e);
        const auto& log = slot->box.log();
        out.new_entries.assign(log.begin() + static_cast<std::ptrdiff_t>(before), log.end());
        out.panel = render(slot->box, catalog);
    }
    persist(*slot, before);
    return out;
}

void BoxRegistry::persist(const Slot& slot, std::size_t from) const {
    if (!transcript_dir_) return;
    std::ofstream out(*transcript_dir_ / (slot.handle.box_id + ".jsonl"), std::ios::app);
    out << to_jsonl(slot.box.log(), from);
}

Json trials_endpoint(const Json& body) {
    return as_bad_request([&] {
        const auto prep = parse_state_spec(get_string(body, "prep"));
        const auto obs = parse_observable_spec(get_string(body, "obs"));
        const auto n = get_u64(body, "n", std::nullopt);
        const auto seed = get_u64(body, "seed", 0);
        return to_json(run_trials(prep, obs, n, seed), prep);
    });
}

Json distinguish_endpoint(const Json& body) {
    return as_bad_request([&] {
        const auto prep = parse_state_spec(get_string(body, "prep"));
        const auto n = get_u64(body, "n", std::nullopt);
        const auto seed = get_u64(body, "seed", 0);
        return to_json(distinguish(prep, n, seed), prep);
    });
}

Json bell_endpoint(const Json& body) {
    return as_bad_request([&] {
        ChshSettings settings = tsirelson_settings();
        if (body.contains("angles")) {
            const Json& a = body["angles"];
            if (!a.is_array() || a.size() != 4) throw bad_request("'angles' must be an array of 4");
            std::array<double, 4> v{};
            for (std::size_t i = 0; i < 4; ++i) {
                if (a[i].is_number()) {
                    v[i] = a[i].get<double>();
                } else if (a[i].is_string()) {
                    v[i] = parse_angle(a[i].get<std::string>());
                } else {
                    throw bad_request("angles must be numbers or strings such as \"3pi/4\"");
                }
            }
            settings = {v[0], v[1], v[2], v[3]};
        }
        std::optional<std::uint64_t> n;
        if (body.contains("n")) n = get_u64(body, "n", std::nullopt);
        const auto seed = get_u64(body, "seed", 0);
        return to_json(bell_report(settings, n, seed));
    });
}

CatboxService::CatboxService(ServiceConfig config)
    : config_(std::move(config)),
      registry_(config_.fixed_seed, config_.transcript_dir),
      server_(std::make_unique<httplib::Server>()) {
    install_routes();
}

CatboxService::~CatboxService() { stop(); }

int CatboxService::bind(const std::string& host, int port) {
    if (port == 0) return server_->bind_to_any_port(host);
    return server_->bind_to_port(host, port) ? port : -1;
}

bool CatboxService::listen_after_bind() { return server_->listen_after_bind(); }

void CatboxService::stop() {
    if (server_) server_->stop();
}

void CatboxService::wait_until_ready() const { server_->wait_until_ready(); }

void CatboxService::install_routes() {
    using httplib::Request;
    using httplib::Response;

    auto send_json = [](Response& res, int status, const Json& body) {
        res.status = status;
        res.set_content(body.dump(), "application/json");
    };

    // Runs `f`, turning ApiError and parse failures into JSON error responses.
    auto guarded = [send_json](auto f) {
        return [f, send_json](const Request& req, Response& res) {
            try {
                f(req, res);
            } catch (const ApiError& e) {
                send_json(res, e.http_status(), e.to_json());
            } catch (const Json::exception& e) {
                const ApiError err = bad_request(e.what());
                send_json(res, err.http_status(), err.to_json());
            }
        };
    };

    server_->Post("/boxes", guarded([this, send_json](const Request& req, Response& res) {
        const Json body = parse_body(req.body);
        std::optional<std::uint64_t> seed;
        if (body.contains("seed")) seed = get_u64(body, "seed", std::nullopt);
        const BoxHandle h = registry_.create(seed);
        send_json(res, 201,
                  Json{{"box_id", h.box_id}, {"seed", h.seed}, {"created_at", format_time(h.created_at)}});
    }));

    server_->Get(R"(/boxes/([^/]+))", guarded([this, send_json](const Request& req, Response& res) {
        const std::string id = req.matches[1];
        const PanelView view = registry_.panel(id, config_.catalog);
        send_json(res, 200,
                  Json{{"box_id", id},
                       {"panel", to_json(view)},
                       {"message", message_key(view.display.back())}});
    }));

    server_->Post(R"(/boxes/([^/]+)/events)", guarded([this, send_json](const Request& req, Response& res) {
        const std::string id = req.matches[1];
        const Json body = parse_body(req.body);
        const auto event = parse_event_name(get_string(body, "event"));
        if (!event) throw bad_request("unknown event '" + body["event"].get<std::string>() + "'");
        const auto hold = config_.event_hold;
        const EventOutcome out = registry_.apply(id, *event, config_.catalog, [hold] {
            if (hold.count() > 0) std::this_thread::sleep_for(hold);
        });
        Json entries = Json::array();
        for (const auto& entry : out.new_entries) entries.push_back(to_json(entry));
        send_json(res, 200, Json{{"panel", to_json(out.panel)}, {"new_log_entries", std::move(entries)}});
    }));

    server_->Get(R"(/boxes/([^/]+)/transcript)", guarded([this](const Request& req, Response& res) {
        res.status = 200;
        res.set_content(registry_.transcript(req.matches[1]), "application/x-ndjson");
    }));

    server_->Delete(R"(/boxes/([^/]+))", guarded([this](const Request& req, Response& res) {
        const std::string id = req.matches[1];
        if (!registry_.remove(id)) throw not_found(id);
        res.status = 204;
    }));

    server_->Post("/experiments/trials", guarded([send_json](const Request& req, Response& res) {
        send_json(res, 200, trials_endpoint(parse_body(req.body)));
    }));
    server_->Post("/experiments/distinguish", guarded([send_json](const Request& req, Response& res) {
        send_json(res, 200, distinguish_endpoint(parse_body(req.body)));
    }));
    server_->Post("/experiments/bell", guarded([send_json](const Request& req, Response& res) {
        send_json(res, 200, bell_endpoint(parse_body(req.body)));
    }));
}

}  // namespace catbox::service

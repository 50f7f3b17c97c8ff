#include "catbox/service.hpp"

#include <barrier>
#include <fstream>
#include <future>
#include <latch>

#include <gtest/gtest.h>

#include "service_fixture.hpp"

using namespace catbox;
using namespace catbox::service;
using catbox::testing::RunningService;

namespace {

std::string create_box(httplib::Client& c, std::optional<std::uint64_t> seed = std::nullopt) {
    Json body = Json::object();
    if (seed) body["seed"] = *seed;
    auto res = c.Post("/boxes", body.dump(), "application/json");
    EXPECT_TRUE(res);
    EXPECT_EQ(res->status, 201);
    return Json::parse(res->body)["box_id"];
}

httplib::Result post_event(httplib::Client& c, const std::string& id, const std::string& event) {
    return c.Post("/boxes/" + id + "/events", Json{{"event", event}}.dump(), "application/json");
}

}  // namespace

TEST(service, box_lifecycle_plus_outcome) {
    RunningService svc;
    auto c = svc.client();
    auto res = c.Post("/boxes", "{\"seed\": 12}", "application/json");
    ASSERT_EQ(res->status, 201);
    const Json created = Json::parse(res->body);
    EXPECT_EQ(created["seed"], 12);
    const std::string id = created["box_id"];

    res = c.Get("/boxes/" + id);
    ASSERT_EQ(res->status, 200);
    EXPECT_EQ(Json::parse(res->body)["message"], "MSG_IDLE");
    EXPECT_EQ(Json::parse(res->body)["panel"]["buttons"]["measure"], false);

    for (const char* e : {"prepare", "select_s"}) ASSERT_EQ(post_event(c, id, e)->status, 200);
    res = post_event(c, id, "measure");
    ASSERT_EQ(res->status, 200);
    const Json out = Json::parse(res->body);
    EXPECT_EQ(out["new_log_entries"][0]["result"]["record"]["outcome"], "+1");
    EXPECT_EQ(out["panel"]["led"], "green");

    res = c.Get("/boxes/" + id + "/transcript");
    ASSERT_EQ(res->status, 200);
    EXPECT_EQ(std::count(res->body.begin(), res->body.end(), '\n'), 3);

    ASSERT_EQ(c.Delete("/boxes/" + id)->status, 204);
    EXPECT_EQ(c.Get("/boxes/" + id)->status, 404);
    EXPECT_EQ(c.Delete("/boxes/" + id)->status, 404);
}

TEST(service, errors) {
    RunningService svc;
    auto c = svc.client();
    auto res = c.Get("/boxes/nope");
    EXPECT_EQ(res->status, 404);
    EXPECT_EQ(Json::parse(res->body)["code"], "NOT_FOUND");
    EXPECT_EQ(post_event(c, "nope", "prepare")->status, 404);
    EXPECT_EQ(c.Get("/boxes/nope/transcript")->status, 404);

    const std::string id = create_box(c);
    res = post_event(c, id, "jump");
    EXPECT_EQ(res->status, 400);
    EXPECT_EQ(Json::parse(res->body)["code"], "BAD_REQUEST");
    EXPECT_EQ(c.Post("/boxes/" + id + "/events", "{not json", "application/json")->status, 400);
    EXPECT_EQ(c.Post("/boxes/" + id + "/events", "{}", "application/json")->status, 400);
    EXPECT_EQ(c.Post("/boxes", "{\"seed\": -1}", "application/json")->status, 400);
    EXPECT_EQ(c.Post("/experiments/trials", R"({"prep":"pure","obs":"q","n":5})", "application/json")->status, 400);
    EXPECT_EQ(c.Post("/experiments/trials", R"({"prep":"pure","obs":"h","n":0})", "application/json")->status, 400);
    EXPECT_EQ(c.Post("/experiments/bell", R"({"angles":[0,1]})", "application/json")->status, 400);
}

TEST(service, fixed_and_random_seeds) {
    service::ServiceConfig fixed;
    fixed.fixed_seed = 77;
    RunningService a(std::move(fixed));
    auto ca = a.client();
    EXPECT_EQ(Json::parse(ca.Post("/boxes", "", "application/json")->body)["seed"], 77);
    EXPECT_EQ(Json::parse(ca.Post("/boxes", "{\"seed\":5}", "application/json")->body)["seed"], 5);

    RunningService b;
    auto cb = b.client();
    const Json one = Json::parse(cb.Post("/boxes", "", "application/json")->body);
    const Json two = Json::parse(cb.Post("/boxes", "", "application/json")->body);
    EXPECT_NE(one["box_id"], two["box_id"]);
    EXPECT_NE(one["seed"], two["seed"]);
}

TEST(service, concurrent_events_one_wins_one_conflicts) {
    service::ServiceConfig config;
    config.event_hold = std::chrono::milliseconds(300);
    RunningService svc(std::move(config));
    auto setup = svc.client();
    const std::string id = create_box(setup, 1);

    auto fire = [&] {
        auto c = svc.client();
        return post_event(c, id, "prepare")->status;
    };
    auto first = std::async(std::launch::async, fire);
    std::this_thread::sleep_for(std::chrono::milliseconds(100));
    auto second = std::async(std::launch::async, fire);
    std::vector<int> statuses{first.get(), second.get()};
    std::sort(statuses.begin(), statuses.end());
    EXPECT_EQ(statuses, (std::vector<int>{200, 409}));

    const auto transcript = setup.Get("/boxes/" + id + "/transcript")->body;
    EXPECT_EQ(std::count(transcript.begin(), transcript.end(), '\n'), 1);
}

TEST(registry, conflict_while_writer_held) {
    BoxRegistry reg(3);
    const auto h = reg.create();
    std::latch inside(1), release(1);
    auto writer = std::async(std::launch::async, [&] {
        return reg.apply(h.box_id, Event::Prepare, {}, [&] {
            inside.count_down();
            release.wait();
        });
    });
    inside.wait();
    try {
        reg.apply(h.box_id, Event::SelectS, {});
        ADD_FAILURE() << "expected conflict";
    } catch (const ApiError& e) {
        EXPECT_EQ(e.code, ErrorCode::Conflict);
        EXPECT_EQ(e.http_status(), 409);
    }
    // Readers are not blocked by the writer slot.
    EXPECT_EQ(reg.panel(h.box_id, {}).led, Led::Off);
    release.count_down();
    EXPECT_EQ(writer.get().new_entries.size(), 1u);
}

TEST(service, transcript_append_consistent) {
    RunningService svc;
    auto c = svc.client();
    const std::string id = create_box(c, 9);
    std::string previous;
    for (const char* e : {"prepare", "select_h", "measure", "lid_open", "lid_close", "select_s", "measure"}) {
        ASSERT_EQ(post_event(c, id, e)->status, 200);
        const std::string now = c.Get("/boxes/" + id + "/transcript")->body;
        ASSERT_EQ(now.substr(0, previous.size()), previous);
        ASSERT_GT(now.size(), previous.size());
        previous = now;
    }
}

TEST(service, transcript_persistence) {
    const auto dir = std::filesystem::temp_directory_path() / "catbox_transcripts_test";
    std::filesystem::remove_all(dir);
    service::ServiceConfig config;
    config.transcript_dir = dir;
    RunningService svc(std::move(config));
    auto c = svc.client();
    const std::string id = create_box(c, 4);
    for (const char* e : {"prepare", "lid_open"}) post_event(c, id, e);
    std::ifstream in(dir / (id + ".jsonl"));
    std::stringstream ss;
    ss << in.rdbuf();
    EXPECT_EQ(ss.str(), c.Get("/boxes/" + id + "/transcript")->body);
}

TEST(service, experiment_endpoints) {
    RunningService svc;
    auto c = svc.client();
    auto res = c.Post("/experiments/trials", R"({"prep":"pure:0","obs":"s","n":100,"seed":1})", "application/json");
    ASSERT_EQ(res->status, 200);
    EXPECT_EQ(Json::parse(res->body)["outcomes"][0]["count"], 100);

    res = c.Post("/experiments/distinguish", R"({"prep":"mixed","n":50,"seed":7})", "application/json");
    ASSERT_EQ(res->status, 200);
    EXPECT_EQ(Json::parse(res->body)["minus_count"], 24);

    res = c.Post("/experiments/bell", R"({"angles":[0,"pi/2","pi/4","3pi/4"],"n":1000,"seed":11})", "application/json");
    ASSERT_EQ(res->status, 200);
    const Json bell = Json::parse(res->body);
    EXPECT_NEAR(bell["analytic"].get<double>(), -2 * std::sqrt(2.0), 1e-9);
    EXPECT_EQ(bell["sampled"]["estimate"], -2.862);
}

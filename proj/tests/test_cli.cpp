#include "catbox/cli.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "catbox/json.hpp"

using namespace catbox;

namespace {

struct CliRun {
    int code;
    std::string out;
    std::string err;
};

CliRun run_cli(std::vector<std::string> args, const std::string& input = "") {
    std::istringstream in(input);
    std::ostringstream out, err;
    const int code = cli::run(args, in, out, err);
    return {code, out.str(), err.str()};
}

std::string write_script(const std::string& name, const std::string& body) {
    const auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream(path) << body;
    return path.string();
}

std::vector<Json> parse_lines(const std::string& text) {
    std::vector<Json> out;
    std::istringstream is(text);
    for (std::string line; std::getline(is, line);) out.push_back(Json::parse(line));
    return out;
}

}  // namespace

TEST(parse_command, grammar) {
    EXPECT_EQ(std::get<Event>(*cli::parse_command("prepare")), Event::Prepare);
    EXPECT_EQ(std::get<Event>(*cli::parse_command("  Select S ")), Event::SelectS);
    EXPECT_EQ(std::get<Event>(*cli::parse_command("select h")), Event::SelectH);
    EXPECT_EQ(std::get<Event>(*cli::parse_command("lid open")), Event::LidOpen);
    EXPECT_EQ(std::get<Event>(*cli::parse_command("lid close")), Event::LidClose);
    EXPECT_TRUE(std::holds_alternative<cli::Quit>(*cli::parse_command("quit")));
    for (const char* bad : {"selct s", "select", "select x", "lid", "measure now", ""}) {
        EXPECT_FALSE(cli::parse_command(bad)) << bad;
    }
}

TEST(cli_box, script_plus_outcome) {
    const auto script = write_script("catbox_plus.txt", "prepare\nselect s\nmeasure\n");
    const auto r = run_cli({"box", "--seed", "1", "--script", script});
    ASSERT_EQ(r.code, 0);
    const auto lines = parse_lines(r.out);
    ASSERT_EQ(lines.size(), 3u);
    EXPECT_EQ(lines[2]["result"]["record"]["outcome"], "+1");
}

TEST(cli_box, script_rejection_is_in_band) {
    const auto script = write_script("catbox_reject.txt", "measure\n");
    const auto r = run_cli({"box", "--script", script});
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(parse_lines(r.out)[0]["result"]["reason"], "REJECT_NO_CAT");
}

TEST(cli_box, malformed_line_exits_2_with_line_number) {
    const auto script = write_script("catbox_bad.txt", "prepare\n# comment\nselct s\n");
    const auto r = run_cli({"box", "--script", script});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("line 3"), std::string::npos) << r.err;
    EXPECT_TRUE(r.out.empty());
}

TEST(cli_box, interactive_prints_panel) {
    const auto r = run_cli({"box", "--seed", "3"}, "prepare\nselect s\nbogus\nmeasure\nquit\nmeasure\n");
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("Cat prepared in the plus state"), std::string::npos);
    EXPECT_NE(r.out.find("LED green"), std::string::npos);
    EXPECT_NE(r.out.find("measured S -> +1"), std::string::npos);
    EXPECT_NE(r.err.find("unknown command 'bogus'"), std::string::npos);
}

TEST(cli_box, interactive_uses_catalog) {
    const auto cat = write_script("catbox_it.cat", "MSG_PLUS=Gatto nello stato +\n");
    const auto r = run_cli({"box", "--catalog", cat}, "prepare\n");
    EXPECT_NE(r.out.find("Gatto nello stato +"), std::string::npos);
}

TEST(cli_trials, examples) {
    auto j = Json::parse(run_cli({"trials", "--prep", "pure:0", "--obs", "s", "--n", "100", "--seed", "1"}).out);
    EXPECT_EQ(j["outcomes"][0]["label"], "+1");
    EXPECT_EQ(j["outcomes"][0]["count"], 100);
    EXPECT_EQ(j["outcomes"][1]["count"], 0);

    j = Json::parse(run_cli({"trials", "--prep", "mixed", "--obs", "h", "--n", "100", "--seed", "1"}).out);
    EXPECT_EQ(j["outcomes"][0]["count"].get<int>() + j["outcomes"][1]["count"].get<int>(), 100);

    // Seed 1 lands 3.3 sigma out (oracle count 5164); seed 2024 is typical.
    j = Json::parse(run_cli({"trials", "--obs", "h", "--n", "10000", "--seed", "1"}).out);
    EXPECT_EQ(j["outcomes"][0]["count"], 5164);
    j = Json::parse(run_cli({"trials", "--obs", "h", "--n", "10000", "--seed", "2024"}).out);
    EXPECT_GE(j["outcomes"][0]["count"].get<int>(), 4850);
    EXPECT_LE(j["outcomes"][0]["count"].get<int>(), 5150);
}

TEST(cli_trials, invalid_spec_exit_2) {
    EXPECT_EQ(run_cli({"trials", "--prep", "bogus", "--obs", "h", "--n", "10"}).code, 2);
    EXPECT_EQ(run_cli({"trials", "--obs", "q", "--n", "10"}).code, 2);
    EXPECT_EQ(run_cli({"trials", "--obs", "h", "--n", "0"}).code, 2);
    EXPECT_EQ(run_cli({"trials", "--obs", "h"}).code, 2);
}

TEST(cli_distinguish, examples) {
    auto j = Json::parse(run_cli({"distinguish", "--prep", "pure:0", "--n", "50", "--seed", "3"}).out);
    EXPECT_EQ(j["decision"], "pure");
    j = Json::parse(run_cli({"distinguish", "--prep", "mixed", "--n", "50", "--seed", "3"}).out);
    EXPECT_EQ(j["decision"], "mixed");
    EXPECT_EQ(j["minus_count"], 27);
    j = Json::parse(run_cli({"distinguish", "--prep", "pure:0", "--n", "1", "--seed", "3"}).out);
    EXPECT_EQ(j["error_bound"], 0.5);
    EXPECT_EQ(run_cli({"distinguish", "--prep", "dephased:0.5", "--n", "5"}).code, 2);
}

TEST(cli_bell, examples) {
    auto j = Json::parse(run_cli({"bell", "--angles", "0,pi/2,pi/4,3pi/4"}).out);
    EXPECT_NEAR(std::abs(j["analytic"].get<double>()), 2 * std::sqrt(2.0), 1e-9);
    EXPECT_EQ(j["lhv_bound"], 2.0);
    EXPECT_FALSE(j.contains("sampled"));

    j = Json::parse(run_cli({"bell", "--n", "100000", "--seed", "5"}).out);
    const double est = j["sampled"]["estimate"];
    const double se = j["sampled"]["std_error"];
    EXPECT_LE(std::abs(est - j["analytic"].get<double>()), 5 * se);

    EXPECT_EQ(run_cli({"bell", "--angles", "0,1,2"}).code, 2);
    EXPECT_EQ(run_cli({"bell", "--angles", "0,1,2,x"}).code, 2);
}

TEST(cli, deterministic_output) {
    const std::vector<std::string> args{"bell", "--n", "5000", "--seed", "8"};
    EXPECT_EQ(run_cli(args).out, run_cli(args).out);
    const std::vector<std::string> t{"trials", "--prep", "dephased:0.3", "--obs", "rotated:0.4", "--n", "777", "--seed", "8"};
    EXPECT_EQ(run_cli(t).out, run_cli(t).out);
}

TEST(cli, binary_matches_library) {
    const std::string cmd = std::string(CATBOX_BIN) + " trials --obs h --n 1000 --seed 9";
    FILE* pipe = popen(cmd.c_str(), "r");
    ASSERT_NE(pipe, nullptr);
    std::string out;
    char buf[512];
    while (std::fgets(buf, sizeof buf, pipe)) out += buf;
    EXPECT_EQ(pclose(pipe), 0);
    EXPECT_EQ(out, run_cli({"trials", "--obs", "h", "--n", "1000", "--seed", "9"}).out);
}

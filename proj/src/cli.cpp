#include "catbox/cli.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "catbox/angles.hpp"
#include "catbox/experiments.hpp"
#include "catbox/json.hpp"
#include "catbox/service.hpp"

namespace catbox::cli {

namespace {

std::vector<std::string> words(std::string_view line) {
    std::vector<std::string> out;
    std::istringstream is{std::string(line)};
    for (std::string w; is >> w;) {
        std::transform(w.begin(), w.end(), w.begin(), [](unsigned char c) { return std::tolower(c); });
        out.push_back(std::move(w));
    }
    return out;
}

bool skippable(std::string_view line) {
    const auto first = line.find_first_not_of(" \t\r");
    return first == std::string_view::npos || line[first] == '#';
}

}  // namespace

std::optional<Command> parse_command(std::string_view line) {
    const auto w = words(line);
    if (w.size() == 1) {
        if (w[0] == "prepare") return Event::Prepare;
        if (w[0] == "measure") return Event::Measure;
        if (w[0] == "quit") return Quit{};
    } else if (w.size() == 2) {
        if (w[0] == "select" && w[1] == "h") return Event::SelectH;
        if (w[0] == "select" && w[1] == "s") return Event::SelectS;
        if (w[0] == "lid" && w[1] == "open") return Event::LidOpen;
        if (w[0] == "lid" && w[1] == "close") return Event::LidClose;
    }
    return std::nullopt;
}

int run_box_script(std::istream& script, std::uint64_t seed, std::ostream& out, std::ostream& err) {
    // Parse everything first so a bad line produces no partial transcript.
    std::vector<Event> events;
    std::size_t line_no = 0;
    for (std::string line; std::getline(script, line);) {
        ++line_no;
        if (skippable(line)) continue;
        const auto cmd = parse_command(line);
        if (!cmd) {
            err << "script line " << line_no << ": cannot parse '" << line << "'\n";
            return 2;
        }
        if (std::holds_alternative<Quit>(*cmd)) break;
        events.push_back(std::get<Event>(*cmd));
    }

    BoxState box = new_box(seed);
    for (Event e : events) box = step(std::move(box), e);
    out << to_jsonl(transcript(box));
    return 0;
}

std::string format_panel(const PanelView& v) {
    std::ostringstream os;
    os << "+------------------------------------------+\n";
    std::istringstream lines(v.display_text);
    for (std::string l; std::getline(lines, l);) os << "| " << l << '\n';
    os << "+------------------------------------------+\n";
    os << "LED " << led_name(v.led) << "  lid " << lid_name(v.lid) << "  cat "
       << (v.cat_present ? "inside" : "none") << '\n';
    os << "[prepare " << (v.prepare_enabled ? "on" : "off") << "] [select "
       << (v.select_enabled ? "on" : "off") << "] [measure " << (v.measure_enabled ? "on" : "off")
       << "]\n";
    return os.str();
}

int run_box_interactive(std::istream& in, std::uint64_t seed, const MessageCatalog& catalog,
                        std::ostream& out, std::ostream& err) {
    BoxState box = new_box(seed);
    out << format_panel(render(box, catalog));
    for (std::string line; std::getline(in, line);) {
        if (skippable(line)) continue;
        const auto cmd = parse_command(line);
        if (!cmd) {
            err << "unknown command '" << line
                << "' (prepare | select h|s | measure | lid open|close | quit)\n";
            continue;
        }
        if (std::holds_alternative<Quit>(*cmd)) break;
        const std::size_t before = box.log().size();
        box = step(std::move(box), std::get<Event>(*cmd));
        for (std::size_t i = before; i < box.log().size(); ++i) {
            if (const auto* rec = std::get_if<MeasurementRecord>(&box.log()[i].result)) {
                out << "measured " << rec->observable_name << " -> " << rec->outcome_label
                    << " (p=" << rec->probability_of_outcome << ")\n";
            }
        }
        out << format_panel(render(box, catalog));
    }
    return 0;
}

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    CLI::App app{"Simulated Schrodinger-cat box: complementarity experiments", "catbox"};
    app.require_subcommand(1);

    std::uint64_t seed = 0;
    std::uint64_t n = 0;
    std::string prep_text = "pure:0";
    std::string obs_text;
    std::string angles_text;
    std::string script_path;
    std::string catalog_path;
    std::string host = "127.0.0.1";
    std::string transcript_dir;
    int port = 8080;

    auto* box_cmd = app.add_subcommand("box", "Drive one box interactively or replay a script");
    box_cmd->add_option("--seed", seed, "RNG seed")->capture_default_str();
    box_cmd->add_option("--script", script_path, "Event script; prints the transcript as JSON lines");
    box_cmd->add_option("--catalog", catalog_path, "Message catalog (key=value); default $CATBOX_CATALOG");

    auto* trials_cmd = app.add_subcommand("trials", "Repeated prepare-and-measure ensemble");
    trials_cmd->add_option("--prep", prep_text, "pure[:phase] | mixed | dephased:strength")->capture_default_str();
    trials_cmd->add_option("--obs", obs_text, "h | s | rotated:theta")->required();
    trials_cmd->add_option("--n", n, "Number of trials")->required();
    trials_cmd->add_option("--seed", seed, "RNG seed")->capture_default_str();

    auto* dist_cmd = app.add_subcommand("distinguish", "Decide pure vs mixed from S outcomes");
    dist_cmd->add_option("--prep", prep_text, "pure:0 | mixed")->capture_default_str();
    dist_cmd->add_option("--n", n, "Number of S measurements")->required();
    dist_cmd->add_option("--seed", seed, "RNG seed")->capture_default_str();

    auto* bell_cmd = app.add_subcommand("bell", "CHSH value on the singlet");
    bell_cmd->add_option("--angles", angles_text, "a,a',b,b' (e.g. 0,pi/2,pi/4,3pi/4)");
    auto* bell_n = bell_cmd->add_option("--n", n, "Samples per setting pair");
    bell_cmd->add_option("--seed", seed, "RNG seed")->capture_default_str();

    auto* serve_cmd = app.add_subcommand("serve", "HTTP/JSON service for the panel");
    serve_cmd->add_option("--port", port, "TCP port (0 picks one)")->capture_default_str();
    serve_cmd->add_option("--host", host, "Bind address")->capture_default_str();
    auto* serve_seed = serve_cmd->add_option("--seed", seed, "Fixed seed for every box (default: random per box)");
    serve_cmd->add_option("--catalog", catalog_path, "Message catalog (key=value)");
    serve_cmd->add_option("--transcript-dir", transcript_dir, "Append box transcripts here as JSON lines");

    std::vector<const char*> argv{"catbox"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return 2;
    }

    auto catalog_flag = [&]() -> std::optional<std::filesystem::path> {
        if (catalog_path.empty()) return std::nullopt;
        return std::filesystem::path(catalog_path);
    };

    try {
        if (box_cmd->parsed()) {
            if (!script_path.empty()) {
                std::ifstream script(script_path);
                if (!script) {
                    err << "cannot open script " << script_path << '\n';
                    return 2;
                }
                return run_box_script(script, seed, out, err);
            }
            return run_box_interactive(in, seed, resolve_catalog(catalog_flag()), out, err);
        }
        if (trials_cmd->parsed()) {
            const auto prep = parse_state_spec(prep_text);
            out << to_json(run_trials(prep, parse_observable_spec(obs_text), n, seed), prep).dump()
                << '\n';
            return 0;
        }
        if (dist_cmd->parsed()) {
            const auto prep = parse_state_spec(prep_text);
            out << to_json(distinguish(prep, n, seed), prep).dump() << '\n';
            return 0;
        }
        if (bell_cmd->parsed()) {
            ChshSettings s = tsirelson_settings();
            if (!angles_text.empty()) {
                const auto a = parse_angle_list(angles_text);
                s = {a[0], a[1], a[2], a[3]};
            }
            std::optional<std::uint64_t> samples;
            if (bell_n->count() > 0) samples = n;
            out << to_json(bell_report(s, samples, seed)).dump() << '\n';
            return 0;
        }
        if (serve_cmd->parsed()) {
            service::ServiceConfig config;
            if (serve_seed->count() > 0) config.fixed_seed = seed;
            config.catalog = resolve_catalog(catalog_flag());
            if (!transcript_dir.empty()) config.transcript_dir = transcript_dir;
            service::CatboxService svc(std::move(config));
            const int bound = svc.bind(host, port);
            if (bound < 0) {
                err << "cannot bind " << host << ':' << port << '\n';
                return 1;
            }
            out << "catbox listening on http://" << host << ':' << bound << '\n' << std::flush;
            return svc.listen_after_bind() ? 0 : 1;
        }
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::runtime_error& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}

}  // namespace catbox::cli

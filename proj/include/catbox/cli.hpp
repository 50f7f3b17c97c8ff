#pragma once

// Library side of the `catbox` command so that tests can drive it in-process.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "catbox/box.hpp"
#include "catbox/messages.hpp"

namespace catbox::cli {

struct Quit {};
using Command = std::variant<Event, Quit>;

// "prepare", "select h|s", "measure", "lid open|close", "quit". Case and
// surrounding whitespace are ignored. nullopt when the line does not parse.
std::optional<Command> parse_command(std::string_view line);

// Replays a script (one command per line, blank lines and '#' comments
// skipped) and writes the transcript as JSON lines. Returns 0, or 2 after
// reporting the first unparseable line on `err`.
int run_box_script(std::istream& script, std::uint64_t seed, std::ostream& out, std::ostream& err);

// Line-by-line interactive session printing the panel after every command.
int run_box_interactive(std::istream& in, std::uint64_t seed, const MessageCatalog& catalog,
                        std::ostream& out, std::ostream& err);

// Human-readable front panel.
std::string format_panel(const PanelView& view);

// Full command line: `catbox box|trials|distinguish|bell|serve ...`.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace catbox::cli
